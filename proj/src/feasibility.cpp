#include "ctxbook/feasibility.hpp"

#include "ctxbook/errors.hpp"

#include <utility>

namespace ctxbook {

void LinearSystem::add_row(std::vector<Rational> coefficients, Rational value) {
  if (coefficients.size() != num_variables) {
    throw DomainError("row has " + std::to_string(coefficients.size()) + " coefficients, expected " +
                      std::to_string(num_variables));
  }
  rows.push_back(std::move(coefficients));
  rhs.push_back(std::move(value));
}

bool satisfies(const LinearSystem& system, std::span<const Rational> x) {
  if (x.size() != system.num_variables) return false;
  for (const auto& v : x) {
    if (v < 0) return false;
  }
  for (std::size_t i = 0; i < system.rows.size(); ++i) {
    Rational lhs = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (!is_zero(system.rows[i][j]) && !is_zero(x[j])) lhs += system.rows[i][j] * x[j];
    }
    if (lhs != system.rhs[i]) return false;
  }
  return true;
}

Rational certificate_value(const LinearSystem& system, const FarkasCertificate& certificate) {
  Rational value = 0;
  for (std::size_t i = 0; i < system.rows.size(); ++i) {
    if (!is_zero(certificate.multipliers.at(i))) value += certificate.multipliers[i] * system.rhs[i];
  }
  return value;
}

bool certifies_infeasibility(const LinearSystem& system, const FarkasCertificate& certificate) {
  if (certificate.multipliers.size() != system.rows.size()) return false;
  for (std::size_t j = 0; j < system.num_variables; ++j) {
    Rational column = 0;
    for (std::size_t i = 0; i < system.rows.size(); ++i) {
      if (!is_zero(certificate.multipliers[i]) && !is_zero(system.rows[i][j])) {
        column += certificate.multipliers[i] * system.rows[i][j];
      }
    }
    if (column < 0) return false;
  }
  return certificate_value(system, certificate) < 0;
}

namespace {

// Reduced row echelon basis of the row space, built one row at a time.
// Each basis row remembers how it was formed from the kept original rows so
// that an inconsistent dependent row yields a certificate directly.
class RowBasis {
 public:
  explicit RowBasis(std::size_t n) : n_(n) {}

  struct Inconsistency {
    std::vector<std::pair<std::size_t, Rational>> combination;  // original row -> multiplier
    Rational residual;                                            // nonzero
  };

  // Returns an inconsistency if the row depends on the basis with a different rhs.
  std::optional<Inconsistency> add(std::size_t original, const std::vector<Rational>& coeffs,
                                   const Rational& value) {
    std::vector<Rational> row = coeffs;
    Rational b = value;
    std::vector<Rational> combo(kept_.size() + 1);
    combo.back() = 1;  // this row itself, slot kept_.size()

    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const std::size_t p = pivots_[r];
      if (is_zero(row[p])) continue;
      const Rational f = row[p];
      for (std::size_t j : nonzero_[r]) row[j] -= f * rows_[r][j];
      b -= f * rhs_[r];
      for (std::size_t q = 0; q < combos_[r].size(); ++q) {
        if (!is_zero(combos_[r][q])) combo[q] -= f * combos_[r][q];
      }
    }

    std::size_t pivot = n_;
    for (std::size_t j = 0; j < n_; ++j) {
      if (!is_zero(row[j])) {
        pivot = j;
        break;
      }
    }
    if (pivot == n_) {
      if (is_zero(b)) return std::nullopt;
      Inconsistency bad;
      for (std::size_t q = 0; q < kept_.size(); ++q) {
        if (!is_zero(combo[q])) bad.combination.emplace_back(kept_[q], combo[q]);
      }
      bad.combination.emplace_back(original, combo.back());
      bad.residual = b;
      return bad;
    }

    const Rational scale = row[pivot];
    for (std::size_t j = pivot; j < n_; ++j) {
      if (!is_zero(row[j])) row[j] /= scale;
    }
    b /= scale;
    for (auto& c : combo) {
      if (!is_zero(c)) c /= scale;
    }
    const auto nz = nonzero_columns(row);

    // Clear the new pivot column from existing rows.
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (is_zero(rows_[r][pivot])) continue;
      const Rational f = rows_[r][pivot];
      for (std::size_t j : nz) rows_[r][j] -= f * row[j];
      rhs_[r] -= f * b;
      combos_[r].resize(kept_.size() + 1);
      for (std::size_t q = 0; q < combo.size(); ++q) {
        if (!is_zero(combo[q])) combos_[r][q] -= f * combo[q];
      }
      nonzero_[r] = nonzero_columns(rows_[r]);
    }

    kept_.push_back(original);
    rows_.push_back(std::move(row));
    rhs_.push_back(std::move(b));
    combos_.push_back(std::move(combo));
    nonzero_.push_back(nz);
    pivots_.push_back(pivot);
    return std::nullopt;
  }

  [[nodiscard]] const std::vector<std::size_t>& kept() const noexcept { return kept_; }

 private:
  std::vector<std::size_t> nonzero_columns(const std::vector<Rational>& row) const {
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < n_; ++j) {
      if (!is_zero(row[j])) nz.push_back(j);
    }
    return nz;
  }

  std::size_t n_;
  std::vector<std::size_t> kept_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<Rational> rhs_;
  std::vector<std::vector<Rational>> combos_;
  std::vector<std::vector<std::size_t>> nonzero_;
  std::vector<std::size_t> pivots_;
};

struct PhaseOneOutcome {
  std::optional<std::vector<Rational>> solution;
  std::vector<Rational> multipliers;  // per kept row, valid when infeasible
};

// Phase-one simplex on the kept rows with artificial variables n..n+m-1.
PhaseOneOutcome phase_one(const LinearSystem& system, const std::vector<std::size_t>& kept) {
  const std::size_t n = system.num_variables;
  const std::size_t m = kept.size();
  const std::size_t width = n + m;

  std::vector<int> flip(m, 1);
  std::vector<std::vector<Rational>> tab(m, std::vector<Rational>(width));
  std::vector<Rational> rhs(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& src = system.rows[kept[i]];
    if (system.rhs[kept[i]] < 0) flip[i] = -1;
    for (std::size_t j = 0; j < n; ++j) {
      if (!is_zero(src[j])) tab[i][j] = flip[i] < 0 ? Rational(-src[j]) : src[j];
    }
    tab[i][n + i] = 1;
    rhs[i] = flip[i] < 0 ? Rational(-system.rhs[kept[i]]) : system.rhs[kept[i]];
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  // Reduced costs for minimizing the sum of artificials.
  std::vector<Rational> cost(width);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      if (!is_zero(tab[i][j])) cost[j] -= tab[i][j];
    }
  }
  Rational objective = 0;
  for (const auto& r : rhs) objective += r;

  for (;;) {
    std::size_t entering = width;
    for (std::size_t j = 0; j < width; ++j) {
      if (cost[j] < 0) {
        entering = j;
        break;
      }
    }
    if (entering == width) break;

    std::size_t leaving = m;
    Rational best_ratio;
    for (std::size_t i = 0; i < m; ++i) {
      if (tab[i][entering] <= 0) continue;
      Rational ratio = rhs[i] / tab[i][entering];
      if (leaving == m || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leaving])) {
        leaving = i;
        best_ratio = std::move(ratio);
      }
    }
    if (leaving == m) throw InternalError("phase-one simplex is unbounded");

    const Rational pivot = tab[leaving][entering];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < width; ++j) {
      if (!is_zero(tab[leaving][j])) {
        tab[leaving][j] /= pivot;
        nz.push_back(j);
      }
    }
    rhs[leaving] /= pivot;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leaving || is_zero(tab[i][entering])) continue;
      const Rational f = tab[i][entering];
      for (std::size_t j : nz) tab[i][j] -= f * tab[leaving][j];
      rhs[i] -= f * rhs[leaving];
    }
    const Rational f = cost[entering];
    for (std::size_t j : nz) cost[j] -= f * tab[leaving][j];
    objective += f * rhs[leaving];
    basis[leaving] = entering;
  }

  PhaseOneOutcome out;
  if (is_zero(objective)) {
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < m; ++i) {
      if (basis[i] < n) x[basis[i]] = rhs[i];
    }
    out.solution = std::move(x);
    return out;
  }
  // Artificial column i has cost 1 - pi_i; y = -pi on the flipped system.
  out.multipliers.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    Rational pi = 1 - cost[n + i];
    out.multipliers[i] = flip[i] < 0 ? pi : Rational(-pi);
  }
  return out;
}

}  // namespace

FeasibilityResult solve_feasibility(const LinearSystem& system) {
  FeasibilityResult result;
  RowBasis basis(system.num_variables);
  for (std::size_t i = 0; i < system.rows.size(); ++i) {
    if (auto bad = basis.add(i, system.rows[i], system.rhs[i])) {
      FarkasCertificate cert;
      cert.multipliers.assign(system.rows.size(), Rational(0));
      const bool negate = bad->residual > 0;
      for (auto& [row, mult] : bad->combination) {
        cert.multipliers[row] = negate ? Rational(-mult) : mult;
      }
      if (!certifies_infeasibility(system, cert)) {
        throw InternalError("elimination produced an invalid infeasibility certificate");
      }
      result.certificate = std::move(cert);
      return result;
    }
  }

  auto outcome = phase_one(system, basis.kept());
  if (outcome.solution) {
    if (!satisfies(system, *outcome.solution)) throw InternalError("simplex produced an invalid solution");
    result.solution = std::move(outcome.solution);
    return result;
  }
  FarkasCertificate cert;
  cert.multipliers.assign(system.rows.size(), Rational(0));
  for (std::size_t i = 0; i < basis.kept().size(); ++i) {
    cert.multipliers[basis.kept()[i]] = outcome.multipliers[i];
  }
  if (!certifies_infeasibility(system, cert)) {
    throw InternalError("simplex produced an invalid infeasibility certificate");
  }
  result.certificate = std::move(cert);
  return result;
}

}  // namespace ctxbook
