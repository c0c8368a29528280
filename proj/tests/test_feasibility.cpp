#include <catch2/catch_amalgamated.hpp>

#include "ctxbook/errors.hpp"
#include "ctxbook/feasibility.hpp"

#include <random>

using namespace ctxbook;

namespace {

LinearSystem system_of(std::size_t n, const std::vector<std::vector<int>>& rows, const std::vector<Rational>& rhs) {
  LinearSystem s(n);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<Rational> r;
    for (int v : rows[i]) r.emplace_back(v);
    s.add_row(std::move(r), rhs[i]);
  }
  return s;
}

}  // namespace

TEST_CASE("feasible_simplex", "[feasibility]") {
  // x + y + z = 1, x - y = 1/4
  auto s = system_of(3, {{1, 1, 1}, {1, -1, 0}}, {Rational(1), Rational(1, 4)});
  auto r = solve_feasibility(s);
  REQUIRE(r.feasible());
  CHECK(satisfies(s, *r.solution));
}

TEST_CASE("infeasible_by_sign", "[feasibility]") {
  // x + y = -1 has no nonnegative solution
  auto s = system_of(2, {{1, 1}}, {Rational(-1)});
  auto r = solve_feasibility(s);
  REQUIRE_FALSE(r.feasible());
  REQUIRE(r.certificate);
  CHECK(certifies_infeasibility(s, *r.certificate));
}

TEST_CASE("inconsistent_dependent_rows", "[feasibility]") {
  // the third row is the sum of the first two but with a different rhs
  auto s = system_of(3, {{1, 0, 1}, {0, 1, 0}, {1, 1, 1}}, {Rational(1, 2), Rational(1, 3), Rational(1)});
  auto r = solve_feasibility(s);
  REQUIRE_FALSE(r.feasible());
  CHECK(certifies_infeasibility(s, *r.certificate));
  CHECK(certificate_value(s, *r.certificate) < 0);
}

TEST_CASE("redundant_rows_are_fine", "[feasibility]") {
  auto s = system_of(2, {{1, 1}, {2, 2}, {1, 0}}, {Rational(1), Rational(2), Rational(1, 3)});
  auto r = solve_feasibility(s);
  REQUIRE(r.feasible());
  CHECK((*r.solution)[0] == Rational(1, 3));
  CHECK((*r.solution)[1] == Rational(2, 3));
}

TEST_CASE("empty_and_zero_systems", "[feasibility]") {
  LinearSystem none(3);
  CHECK(solve_feasibility(none).feasible());
  auto zero_row = system_of(2, {{0, 0}}, {Rational(1)});
  auto r = solve_feasibility(zero_row);
  REQUIRE_FALSE(r.feasible());
  CHECK(certifies_infeasibility(zero_row, *r.certificate));
  LinearSystem bad(2);
  CHECK_THROWS_AS(bad.add_row({Rational(1)}, Rational(0)), DomainError);
}

TEST_CASE("certificate_checker_rejects_bogus", "[feasibility]") {
  auto s = system_of(2, {{1, 1}}, {Rational(1)});
  CHECK_FALSE(certifies_infeasibility(s, {{Rational(-1)}}));  // y^T A < 0
  CHECK_FALSE(certifies_infeasibility(s, {{Rational(1)}}));   // y^T b > 0
  CHECK_FALSE(certifies_infeasibility(s, {{}}));
}

TEST_CASE("degenerate_cycling_prone_instance", "[feasibility]") {
  // Beale-style degenerate rows; Bland's rule must terminate
  LinearSystem s(7);
  s.add_row({Rational(1, 4), Rational(-8), Rational(-1), Rational(9), Rational(1), 0, 0}, 0);
  s.add_row({Rational(1, 2), Rational(-12), Rational(-1, 2), Rational(3), 0, Rational(1), 0}, 0);
  s.add_row({0, 0, Rational(1), 0, 0, 0, Rational(1)}, 1);
  auto r = solve_feasibility(s);
  REQUIRE(r.feasible());
  CHECK(satisfies(s, *r.solution));
}

// Random instances: the answer must always be backed by a checkable object,
// and planted solutions must be found.
TEST_CASE("random_systems_always_certified", "[feasibility][property]") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    const std::size_t m = 1 + rng() % 6;
    const bool planted = trial % 2 == 0;
    std::vector<Rational> x(n);
    for (auto& v : x) v = Rational(static_cast<long>(rng() % 4), 1 + static_cast<long>(rng() % 3));
    LinearSystem s(n);
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<Rational> row(n);
      Rational b = 0;
      for (std::size_t j = 0; j < n; ++j) {
        row[j] = static_cast<long>(rng() % 5) - 2;
        b += row[j] * x[j];
      }
      if (!planted) b = static_cast<long>(rng() % 7) - 3;
      s.add_row(std::move(row), b);
    }
    auto r = solve_feasibility(s);
    if (planted) REQUIRE(r.feasible());
    if (r.feasible()) {
      CHECK(satisfies(s, *r.solution));
    } else {
      CHECK(certifies_infeasibility(s, *r.certificate));
    }
  }
}
