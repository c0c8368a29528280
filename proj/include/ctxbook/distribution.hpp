#pragma once

#include "ctxbook/rational.hpp"
#include "ctxbook/scenario.hpp"
#include "ctxbook/section.hpp"

#include <cstddef>
#include <vector>

namespace ctxbook {

/// Exact probability distribution on the sections over one context U.
/// weights()[k] belongs to section_at(scenario, U, k).
class Distribution {
 public:
  /// Throws WeightError on negative weights, a sum other than 1, or a weight
  /// count different from |O|^|U|.
  Distribution(const Scenario& scenario, Context domain, std::vector<Rational> weights);

  [[nodiscard]] const Context& domain() const noexcept { return domain_; }
  [[nodiscard]] const std::vector<Rational>& weights() const noexcept { return weights_; }
  [[nodiscard]] std::size_t num_outcomes() const noexcept { return num_outcomes_; }

  [[nodiscard]] const Rational& weight_at(std::size_t index) const { return weights_.at(index); }
  /// Throws DomainError if s is not over domain().
  [[nodiscard]] const Rational& weight(const Scenario& scenario, const Section& s) const;

  /// Indices of sections with positive weight, ascending.
  [[nodiscard]] std::vector<std::size_t> support() const;

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  Context domain_;
  std::size_t num_outcomes_ = 0;
  std::vector<Rational> weights_;
};

/// Point mass on `s`.
Distribution point_mass(const Scenario& scenario, const Section& s);

/// Marginal on U: the weight of s is the sum over r with r|_U = s.
/// Throws DomainError unless U is a subset of d.domain().
Distribution marginalize(const Scenario& scenario, const Distribution& d, const Context& u);

/// Index map used by marginalization: result[k] is the index in eps(U) of
/// the restriction of the k-th section over `from`.
std::vector<std::size_t> restriction_indices(const Scenario& scenario, const Context& from,
                                             const Context& to);

}  // namespace ctxbook
