#pragma once

#include "ctxbook/rational.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace ctxbook {

/// Equality system A x = b over x >= 0, exact.
struct LinearSystem {
  explicit LinearSystem(std::size_t num_variables = 0) : num_variables(num_variables) {}

  std::size_t num_variables;
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;

  /// Appends a row; throws DomainError on a length mismatch.
  void add_row(std::vector<Rational> coefficients, Rational value);
  [[nodiscard]] std::size_t num_rows() const noexcept { return rows.size(); }
};

/// Multipliers y (one per row) with y^T A >= 0 componentwise and y^T b < 0,
/// which rules out every x >= 0 with A x = b.
struct FarkasCertificate {
  std::vector<Rational> multipliers;
};

struct FeasibilityResult {
  std::optional<std::vector<Rational>> solution;
  std::optional<FarkasCertificate> certificate;

  [[nodiscard]] bool feasible() const noexcept { return solution.has_value(); }
};

/// Decides A x = b, x >= 0 exactly. Redundant rows are detected by exact
/// elimination first; the remaining independent rows go through a phase-one
/// simplex with the least-index (Bland) rule, which cannot cycle. Every
/// answer is re-verified before it is returned.
FeasibilityResult solve_feasibility(const LinearSystem& system);

/// True when x >= 0 and A x = b hold exactly.
bool satisfies(const LinearSystem& system, std::span<const Rational> x);

/// True when the certificate proves infeasibility of `system`.
bool certifies_infeasibility(const LinearSystem& system, const FarkasCertificate& certificate);

/// y^T b, the value a certificate must drive below zero.
Rational certificate_value(const LinearSystem& system, const FarkasCertificate& certificate);

}  // namespace ctxbook
