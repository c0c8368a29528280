#pragma once

#include "ctxbook/distribution.hpp"
#include "ctxbook/errors.hpp"
#include "ctxbook/rational.hpp"
#include "ctxbook/scenario.hpp"
#include "ctxbook/section.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ctxbook {

/// A disagreement between two tables on their overlap.
struct CompatibilityFailure {
  std::size_t first_context = 0;   // index into maximal_contexts()
  std::size_t second_context = 0;
  Context overlap;
  Section section;                 // over `overlap`
  Rational first_value;
  Rational second_value;
};

struct ModelVerdict {
  std::vector<std::string> structural_errors;  // missing or misplaced tables
  std::vector<CompatibilityFailure> failures;

  [[nodiscard]] bool ok() const noexcept { return structural_errors.empty() && failures.empty(); }
  /// Human-readable summary, one line per problem.
  [[nodiscard]] std::string describe(const Scenario& scenario) const;
};

/// Checks that there is one table per maximal context (in order) and that
/// e_C|_{C cap C'} = e_C'|_{C cap C'} for every pair.
ModelVerdict check_model(const Scenario& scenario, std::span<const Distribution> tables);

class NoSignalingViolation : public ValidationError {
 public:
  NoSignalingViolation(const std::string& what, ModelVerdict verdict)
      : ValidationError(what), verdict_(std::move(verdict)) {}
  [[nodiscard]] const ModelVerdict& verdict() const noexcept { return verdict_; }

 private:
  ModelVerdict verdict_;
};

/// A family of context tables that agree on overlaps.
class EmpiricalModel {
 public:
  /// tables[i] belongs to scenario.maximal_contexts()[i]. Throws
  /// NoSignalingViolation if check_model fails.
  EmpiricalModel(Scenario scenario, std::vector<Distribution> tables);

  [[nodiscard]] const Scenario& scenario() const noexcept { return scenario_; }
  [[nodiscard]] const std::vector<Distribution>& tables() const noexcept { return tables_; }
  [[nodiscard]] const Distribution& table(std::size_t maximal_index) const { return tables_.at(maximal_index); }

  /// e_C|_U for the first maximal C containing U. Throws DomainError if U is
  /// not a context.
  [[nodiscard]] Distribution marginal(const Context& u) const;

  /// True when s lies in supp(e_C) where C = s.domain() is maximal.
  [[nodiscard]] bool in_support(const Section& s) const;

  friend bool operator==(const EmpiricalModel&, const EmpiricalModel&) = default;

 private:
  Scenario scenario_;
  std::vector<Distribution> tables_;
};

ModelVerdict check_model(const EmpiricalModel& model);

/// Point mass on s_X|_C in every maximal context. Throws DomainError unless
/// `global` is over X.
EmpiricalModel deterministic_model(const Scenario& scenario, const Section& global);

/// Pointwise convex combination. Throws WeightError unless the weights are
/// non-negative and sum to 1, ScenarioMismatch unless all scenarios agree.
EmpiricalModel mixture(std::span<const EmpiricalModel> models, std::span<const Rational> weights);

}  // namespace ctxbook
