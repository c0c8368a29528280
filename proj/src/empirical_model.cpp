#include "ctxbook/empirical_model.hpp"

#include <sstream>

namespace ctxbook {

std::string ModelVerdict::describe(const Scenario& scenario) const {
  std::ostringstream out;
  for (const auto& e : structural_errors) out << e << '\n';
  for (const auto& f : failures) {
    const auto& contexts = scenario.maximal_contexts();
    out << "no-signaling fails between {" << scenario.label(contexts.at(f.first_context)) << "} and {"
        << scenario.label(contexts.at(f.second_context)) << "} on {" << scenario.label(f.overlap)
        << "} at " << to_string(scenario, f.section) << ": " << to_string(f.first_value)
        << " vs " << to_string(f.second_value) << '\n';
  }
  return out.str();
}

ModelVerdict check_model(const Scenario& scenario, std::span<const Distribution> tables) {
  ModelVerdict verdict;
  const auto& contexts = scenario.maximal_contexts();
  if (tables.size() != contexts.size()) {
    verdict.structural_errors.push_back("expected " + std::to_string(contexts.size()) +
                                        " tables, got " + std::to_string(tables.size()));
    return verdict;
  }
  for (std::size_t i = 0; i < tables.size(); ++i) {
    if (tables[i].domain() != contexts[i]) {
      verdict.structural_errors.push_back("table #" + std::to_string(i) + " is over {" +
                                          scenario.label(tables[i].domain()) + "}, expected {" +
                                          scenario.label(contexts[i]) + "}");
    }
    if (tables[i].num_outcomes() != scenario.num_outcomes()) {
      verdict.structural_errors.push_back("table #" + std::to_string(i) + " has the wrong outcome count");
    }
  }
  if (!verdict.structural_errors.empty()) return verdict;

  for (std::size_t i = 0; i < contexts.size(); ++i) {
    for (std::size_t j = i + 1; j < contexts.size(); ++j) {
      const Context overlap = contexts[i].intersection(contexts[j]);
      const Distribution left = marginalize(scenario, tables[i], overlap);
      const Distribution right = marginalize(scenario, tables[j], overlap);
      for (std::size_t k = 0; k < left.weights().size(); ++k) {
        if (left.weight_at(k) != right.weight_at(k)) {
          verdict.failures.push_back({i, j, overlap, section_at(scenario, overlap, k),
                                      left.weight_at(k), right.weight_at(k)});
          break;
        }
      }
    }
  }
  return verdict;
}

ModelVerdict check_model(const EmpiricalModel& model) {
  return check_model(model.scenario(), model.tables());
}

EmpiricalModel::EmpiricalModel(Scenario scenario, std::vector<Distribution> tables)
    : scenario_(std::move(scenario)), tables_(std::move(tables)) {
  auto verdict = check_model(scenario_, tables_);
  if (!verdict.ok()) {
    std::string message = "empirical model is not compatible:\n" + verdict.describe(scenario_);
    message.pop_back();
    throw NoSignalingViolation(message, std::move(verdict));
  }
}

Distribution EmpiricalModel::marginal(const Context& u) const {
  const auto& contexts = scenario_.maximal_contexts();
  for (std::size_t i = 0; i < contexts.size(); ++i) {
    if (u.is_subset_of(contexts[i])) return marginalize(scenario_, tables_[i], u);
  }
  throw DomainError("{" + scenario_.label(u) + "} is not a context");
}

bool EmpiricalModel::in_support(const Section& s) const {
  const std::size_t i = scenario_.maximal_index(s.domain());
  if (i == Context::npos) throw DomainError("section is not over a maximal context");
  return tables_[i].weight(scenario_, s) > 0;
}

EmpiricalModel deterministic_model(const Scenario& scenario, const Section& global) {
  if (global.domain() != scenario.all_measurements()) {
    throw DomainError("deterministic_model needs a global section");
  }
  std::vector<Distribution> tables;
  for (const auto& c : scenario.maximal_contexts()) {
    tables.push_back(point_mass(scenario, restrict(global, c)));
  }
  return EmpiricalModel(scenario, std::move(tables));
}

EmpiricalModel mixture(std::span<const EmpiricalModel> models, std::span<const Rational> weights) {
  if (models.empty()) throw WeightError("mixture of no models");
  if (models.size() != weights.size()) throw WeightError("mixture needs one weight per model");
  Rational total = 0;
  for (const auto& w : weights) {
    if (w < 0) throw WeightError("negative mixture weight " + to_string(w));
    total += w;
  }
  if (total != 1) throw WeightError("mixture weights sum to " + to_string(total) + ", not 1");
  const Scenario& scenario = models.front().scenario();
  for (const auto& m : models) {
    if (!(m.scenario() == scenario)) throw ScenarioMismatch("mixture components have different scenarios");
  }
  std::vector<Distribution> tables;
  for (std::size_t c = 0; c < scenario.maximal_contexts().size(); ++c) {
    std::vector<Rational> w(models.front().table(c).weights().size());
    for (std::size_t m = 0; m < models.size(); ++m) {
      const auto& src = models[m].table(c).weights();
      for (std::size_t k = 0; k < w.size(); ++k) w[k] += weights[m] * src[k];
    }
    tables.emplace_back(scenario, scenario.maximal_contexts()[c], std::move(w));
  }
  return EmpiricalModel(scenario, std::move(tables));
}

}  // namespace ctxbook
