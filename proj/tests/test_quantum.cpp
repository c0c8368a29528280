#include <catch2/catch_amalgamated.hpp>

#include "ctxbook/catalog.hpp"
#include "ctxbook/classifier.hpp"
#include "ctxbook/errors.hpp"
#include "ctxbook/quantum.hpp"

#include <cmath>

using namespace ctxbook;

TEST_CASE("snap_continued_fractions", "[quantum]") {
  CHECK(snap(0.375) == Rational(3, 8));
  CHECK(snap(1.0 / 3.0) == Rational(1, 3));
  CHECK(snap(3.0 / 8.0 - 1e-12) == Rational(3, 8));
  CHECK(snap(-1e-17) == Rational(0));
  CHECK(snap(1.0 - 1e-15) == Rational(1));
  // pi has no denominator <= 4096 within 1e-9
  CHECK_FALSE(snap(3.14159265358979).has_value());
  CHECK(snap(3.14159265358979, {2e-3, 10}) == Rational(22, 7));
  CHECK_FALSE(snap(std::nan("")).has_value());
}

TEST_CASE("singlet_reproduces_bell_table", "[quantum]") {
  const auto q = singlet_experiment();
  const auto sc = quantum_scenario(q);
  REQUIRE(sc.maximal_contexts().size() == 4);
  const auto e = quantum_to_empirical(q);
  CHECK(e == bell_model());
  CHECK(classify(e).tier == Tier::Probabilistic);
}

TEST_CASE("ghz_experiment_is_strong", "[quantum]") {
  const auto e = quantum_to_empirical(ghz_experiment());
  CHECK(e.scenario().num_measurements() == 6);
  CHECK(e.scenario().maximal_contexts().size() == 8);
  CHECK(e == ghz_model());
  CHECK(classify(e).tier == Tier::Strong);
}

TEST_CASE("quantum_input_validation", "[quantum]") {
  auto q = singlet_experiment();
  q.state *= 2.0;
  CHECK_THROWS_AS(quantum_to_empirical(q), ValidationError);

  q = singlet_experiment();
  q.projectors[0].matrix(0, 1) = 0.3;  // no longer Hermitian
  CHECK_THROWS_AS(quantum_to_empirical(q), ValidationError);

  q = singlet_experiment();
  q.projectors[1].label = "a";
  CHECK_THROWS_AS(quantum_to_empirical(q), ValidationError);

  // cos^2(pi/5)/2 etc. have no small denominator
  q = singlet_experiment();
  q.projectors[2].matrix = ghz_experiment().projectors[0].matrix.topLeftCorner(4, 4);
  CHECK_THROWS_AS(quantum_to_empirical(q), ValidationError);

  CHECK_THROWS_AS(quantum_entry("nope"), DomainError);
}

TEST_CASE("weak_hv_on_induced_reps", "[quantum]") {
  for (const auto& q : quantum_catalog()) {
    const auto rep = build_combinatorial_rep(quantum_to_empirical(q));
    const auto report = is_weak_hv_representation(rep, q);
    INFO(q.name);
    CHECK(report.ok());
  }
  // a representation of some other model on the same scenario fails EC
  const auto q = singlet_experiment();
  const auto sc = bell_scenario();
  const auto det = deterministic_model(sc, sections_over(sc, sc.all_measurements()).front());
  CHECK_FALSE(is_weak_hv_representation(build_combinatorial_rep(det), q).ok());
  // scenario mismatch
  CHECK_FALSE(is_weak_hv_representation(build_combinatorial_rep(pr_box_model()), ghz_experiment()).ok());
}
