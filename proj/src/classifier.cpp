#include "ctxbook/classifier.hpp"

#include "ctxbook/errors.hpp"

#include <algorithm>
#include <cctype>

namespace ctxbook {

std::string to_string(Tier tier) {
  switch (tier) {
    case Tier::Strong: return "Strong";
    case Tier::Logical: return "Logical";
    case Tier::Probabilistic: return "Probabilistic";
    case Tier::Noncontextual: return "Noncontextual";
  }
  return "?";
}

std::optional<Tier> parse_tier(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  for (Tier t : {Tier::Strong, Tier::Logical, Tier::Probabilistic, Tier::Noncontextual}) {
    std::string name = to_string(t);
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
    if (name == lower) return t;
  }
  return std::nullopt;
}

namespace {

bool consistent(const EmpiricalModel& model, const Section& global) {
  const auto& scenario = model.scenario();
  const auto& contexts = scenario.maximal_contexts();
  for (std::size_t c = 0; c < contexts.size(); ++c) {
    if (is_zero(model.table(c).weight(scenario, restrict(global, contexts[c])))) return false;
  }
  return true;
}

}  // namespace

std::vector<Section> consistent_global_sections(const EmpiricalModel& model, const Limits& limits) {
  const auto& scenario = model.scenario();
  std::vector<Section> out;
  for (auto& g : sections_over(scenario, scenario.all_measurements(), limits)) {
    if (consistent(model, g)) out.push_back(std::move(g));
  }
  return out;
}

bool is_strongly_contextual(const EmpiricalModel& model, const Limits& limits) {
  return consistent_global_sections(model, limits).empty();
}

LogicalVerdict is_logically_contextual(const EmpiricalModel& model, const Limits& limits) {
  const auto& scenario = model.scenario();
  const auto globals = consistent_global_sections(model, limits);
  const auto& contexts = scenario.maximal_contexts();
  // Canonical order: maximal contexts in scenario order, sections within each.
  for (std::size_t c = 0; c < contexts.size(); ++c) {
    const auto& table = model.table(c);
    for (std::size_t t : table.support()) {
      const Section s = section_at(scenario, contexts[c], t);
      const bool extends =
          std::any_of(globals.begin(), globals.end(), [&](const Section& g) { return restrict(g, contexts[c]) == s; });
      if (!extends) return {true, s};
    }
  }
  return {};
}

GlobalSystem global_distribution_system(const EmpiricalModel& model, const Limits& limits) {
  const auto& scenario = model.scenario();
  GlobalSystem out;
  out.globals = sections_over(scenario, scenario.all_measurements(), limits);
  const std::size_t n = out.globals.size();
  out.system = LinearSystem(n);
  const auto& contexts = scenario.maximal_contexts();
  for (std::size_t c = 0; c < contexts.size(); ++c) {
    const auto idx = restriction_indices(scenario, scenario.all_measurements(), contexts[c]);
    const auto& table = model.table(c);
    for (std::size_t t = 0; t < table.weights().size(); ++t) {
      std::vector<Rational> row(n);
      for (std::size_t g = 0; g < n; ++g) {
        if (idx[g] == t) row[g] = 1;
      }
      out.system.add_row(std::move(row), table.weight_at(t));
      out.row_context.push_back(c);
      out.row_section.push_back(section_at(scenario, contexts[c], t));
    }
  }
  out.system.add_row(std::vector<Rational>(n, Rational(1)), Rational(1));
  return out;
}

GlobalDistributionResult global_distribution(const EmpiricalModel& model, const Limits& limits) {
  const auto& scenario = model.scenario();
  const auto gs = global_distribution_system(model, limits);
  auto result = solve_feasibility(gs.system);
  GlobalDistributionResult out;
  if (result.solution) {
    out.distribution = Distribution(scenario, scenario.all_measurements(), std::move(*result.solution));
  } else {
    out.certificate = std::move(result.certificate);
  }
  return out;
}

TierVerdict classify(const EmpiricalModel& model, const Limits& limits) {
  TierVerdict verdict;
  if (is_strongly_contextual(model, limits)) {
    verdict.tier = Tier::Strong;
    return verdict;
  }
  if (auto logical = is_logically_contextual(model, limits); logical.contextual) {
    verdict.tier = Tier::Logical;
    verdict.logical_witness = logical.witness;
    return verdict;
  }
  auto global = global_distribution(model, limits);
  if (global.certificate) {
    verdict.tier = Tier::Probabilistic;
    verdict.certificate = std::move(global.certificate);
  } else {
    verdict.tier = Tier::Noncontextual;
    verdict.global = std::move(global.distribution);
  }
  return verdict;
}

std::vector<std::string> check_tier_witness(const EmpiricalModel& model, const TierVerdict& verdict,
                                            const Limits& limits) {
  const auto& scenario = model.scenario();
  std::vector<std::string> problems;
  const auto everything = sections_over(scenario, scenario.all_measurements(), limits);
  switch (verdict.tier) {
    case Tier::Strong:
      for (const auto& g : everything) {
        if (consistent(model, g)) problems.push_back("global section " + to_string(scenario, g) + " is consistent");
      }
      break;
    case Tier::Logical: {
      if (!verdict.logical_witness) {
        problems.push_back("logical verdict without a witness section");
        break;
      }
      const Section& s = *verdict.logical_witness;
      const std::size_t c = scenario.maximal_index(s.domain());
      if (c == Context::npos || is_zero(model.table(c).weight(scenario, s))) {
        problems.push_back("witness " + to_string(scenario, s) + " is not a support section");
        break;
      }
      for (const auto& g : everything) {
        if (restrict(g, s.domain()) == s && consistent(model, g)) {
          problems.push_back("witness extends to consistent " + to_string(scenario, g));
        }
      }
      break;
    }
    case Tier::Probabilistic: {
      if (!verdict.certificate) {
        problems.push_back("probabilistic verdict without a certificate");
        break;
      }
      const auto gs = global_distribution_system(model, limits);
      if (!certifies_infeasibility(gs.system, *verdict.certificate)) {
        problems.push_back("certificate does not separate the marginal system");
      }
      break;
    }
    case Tier::Noncontextual: {
      if (!verdict.global) {
        problems.push_back("noncontextual verdict without a global distribution");
        break;
      }
      const auto& contexts = scenario.maximal_contexts();
      for (std::size_t c = 0; c < contexts.size(); ++c) {
        if (marginalize(scenario, *verdict.global, contexts[c]) != model.table(c)) {
          problems.push_back("global distribution misses the table on {" + scenario.label(contexts[c]) + "}");
        }
      }
      break;
    }
  }
  return problems;
}

}  // namespace ctxbook
