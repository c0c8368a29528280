#include <catch2/catch_amalgamated.hpp>

#include "ctxbook/catalog.hpp"
#include "ctxbook/errors.hpp"
#include "ctxbook/wps.hpp"

using namespace ctxbook;

namespace {

Section sec(const Scenario& sc, const char* text) { return parse_section(sc, text); }

// Rebuilds a representation with one Σ member's μ replaced.
WpsRepresentation with_mu(const WpsRepresentation& rep, const PointSet& target, Rational value) {
  auto sigma = rep.sigma();
  auto mu = rep.mu();
  mu[*rep.find(target)] = std::move(value);
  return WpsRepresentation(rep.model(), rep.points(), rep.transfer_map(), sigma, mu, rep.combinatorial());
}

}  // namespace

TEST_CASE("combinatorial_sizes", "[wps]") {
  const auto specker = build_combinatorial_rep(specker_model());
  CHECK(specker.num_points() == 8);
  const auto& sc = specker.scenario();
  CHECK(specker.transfer(sec(sc, "c=0")).count() == 4);
  CHECK(build_combinatorial_rep(bell_model()).num_points() == 16);
}

TEST_CASE("combinatorial_reps_verify", "[wps]") {
  for (const auto& e : catalog()) {
    INFO(e.name);
    const auto rep = build_combinatorial_rep(e.model);
    const auto verdict = verify_rep(rep);
    CHECK(verdict.ok());
    CHECK(verdict.warnings.empty());
    CHECK(rep.combinatorial());
  }
}

TEST_CASE("combinatorial_rep_is_deterministic", "[wps]") {
  CHECK(build_combinatorial_rep(hardy_model()) == build_combinatorial_rep(hardy_model()));
  CombinatorialLayout shuffled{11, 1};
  CHECK(build_combinatorial_rep(hardy_model(), {}, shuffled) == build_combinatorial_rep(hardy_model(), {}, shuffled));
}

TEST_CASE("point_set_order_and_ops", "[wps][point_set]") {
  const auto a = PointSet::of(5, {0, 2});
  const auto b = PointSet::of(5, {0, 2, 3});
  const auto c = PointSet::of(5, {1});
  CHECK(a < b);  // prefix
  CHECK(b < c);
  CHECK(PointSet(5) < a);
  CHECK((a | c).members() == std::vector<std::size_t>{0, 1, 2});
  CHECK((b - a).members() == std::vector<std::size_t>{3});
  CHECK((~a).members() == std::vector<std::size_t>{1, 3, 4});
  CHECK(a.is_subset_of(b));
  CHECK_FALSE(a.intersects(c));
  // crossing a word boundary
  const auto far = PointSet::of(130, {3, 128});
  const auto near = PointSet::of(130, {3, 64});
  CHECK(near < far);
  CHECK(PointSet::of(130, {3}) < near);
  CHECK(PointSet::full(130).count() == 130);
  CHECK_THROWS_AS(a.is_subset_of(far), DomainError);
}

TEST_CASE("verify_rep_detects_perturbed_mu", "[wps]") {
  const auto rep = build_combinatorial_rep(bell_model());
  const auto& sc = rep.scenario();
  const auto target = rep.transfer(sec(sc, "a=0,b'=1"));
  const auto bad = with_mu(rep, target, Rational(1, 4));
  const auto verdict = verify_rep(bad);
  REQUIRE(verdict.has(Condition::EmpiricalConsistency));
  bool named = false;
  for (const auto& f : verdict.failures) {
    if (f.condition == Condition::EmpiricalConsistency && f.detail.find("a=0,b'=1") != std::string::npos) named = true;
  }
  CHECK(named);
}

TEST_CASE("verify_rep_detects_missing_intersection", "[wps]") {
  const auto rep = build_combinatorial_rep(bell_model());
  const auto& sc = rep.scenario();
  // Ē(a=0) ∩ Ē(b=1) is required by Σ_{a,b}
  const auto meet = rep.transfer(sec(sc, "a=0")) & rep.transfer(sec(sc, "b=1"));
  auto sigma = rep.sigma();
  auto mu = rep.mu();
  const auto i = *rep.find(meet);
  sigma.erase(sigma.begin() + static_cast<long>(i));
  mu.erase(mu.begin() + static_cast<long>(i));
  WpsRepresentation bad(rep.model(), rep.points(), rep.transfer_map(), sigma, mu, true);
  const auto verdict = verify_rep(bad);
  CHECK(verdict.has(Condition::WeakClassicality));
}

TEST_CASE("verify_rep_flags_out_of_range_mu", "[wps]") {
  const auto rep = build_combinatorial_rep(specker_model());
  const auto target = rep.transfer(sec(rep.scenario(), "a=0,b=0"));
  const auto odd = with_mu(rep, target, Rational(-1, 2));
  const auto verdict = verify_rep(odd);
  CHECK_FALSE(verdict.ok());
  CHECK_FALSE(verdict.warnings.empty());
}

TEST_CASE("verify_rep_detects_broken_transfer", "[wps]") {
  const auto rep = build_combinatorial_rep(specker_model());
  const auto& sc = rep.scenario();
  auto transfer = rep.transfer_map();
  transfer[sec(sc, "a=0,b=1")] = transfer[sec(sc, "a=0,b=0")];
  WpsRepresentation bad(rep.model(), rep.points(), transfer, rep.sigma(), rep.mu(), true);
  const auto verdict = verify_rep(bad);
  CHECK(verdict.has(Condition::Injectivity));
  CHECK(verdict.has(Condition::Intersection));
}

TEST_CASE("padded_reps", "[wps]") {
  const auto bell = bell_model();
  const auto& sc = bell.scenario();
  const auto base = sec(sc, "a=0,b=0,a'=0,b'=0");
  const std::size_t a = sc.measurement_index("a");
  const std::size_t b = sc.measurement_index("b");

  SECTION("overlap point populates D1") {
    const auto rep = build_padded_rep(bell, {contradictory_point(sc, a, 0, 1, base, "pad.a")});
    CHECK(verify_rep(rep).ok());
    CHECK_FALSE(rep.combinatorial());
    const auto cut = excise(rep);
    CHECK(cut.d1.size() == 1);
    CHECK(cut.d2.empty());
    CHECK_FALSE(cut.z.contains(rep.point_index("pad.a")));
    CHECK(cut.lemma_holds());
    CHECK(cut.z.count() == 16);
  }
  SECTION("missing point populates D2") {
    const auto rep = build_padded_rep(bell, {missing_point(sc, b, base, "pad.b")});
    const auto cut = excise(rep);
    CHECK(cut.d1.empty());
    REQUIRE(cut.d2.size() == 1);
    CHECK(cut.d2[0].contains(rep.point_index("pad.b")));
    CHECK_FALSE(cut.z.contains(rep.point_index("pad.b")));
    CHECK(cut.lemma_holds());
  }
  SECTION("empty padding is the combinatorial rep") {
    CHECK(build_padded_rep(bell, {}) == build_combinatorial_rep(bell));
  }
  SECTION("malformed padding is rejected") {
    PadPoint plain{"plain", {{0}, {0}, {0}, {0}}};
    CHECK_THROWS_AS(build_padded_rep(bell, {plain}), PaddingError);
    PadPoint short_point{"short", {{0, 1}}};
    CHECK_THROWS_AS(build_padded_rep(bell, {short_point}), PaddingError);
    auto dup = contradictory_point(sc, a, 0, 1, base, "a=0,b=0,a'=0,b'=0");
    CHECK_THROWS_AS(build_padded_rep(bell, {dup}), PaddingError);
  }
}

TEST_CASE("excise_combinatorial", "[wps]") {
  for (const auto& e : catalog()) {
    const auto rep = build_combinatorial_rep(e.model);
    const auto cut = excise(rep);
    CHECK(cut.d1.empty());
    CHECK(cut.d2.empty());
    CHECK(cut.z == rep.all_points());
    CHECK(cut.lemma_holds());
    CHECK(cut.z_sections.size() == rep.num_points());
  }
}

TEST_CASE("extend_event_examples", "[wps]") {
  const auto rep = build_combinatorial_rep(specker_model());
  const auto& sc = rep.scenario();
  const auto s = rep.transfer(sec(sc, "a=0,b=0"));
  CHECK(extend_event(rep, s, sc.context({"a", "b"})) == s);
  const auto up = extend_event(rep, s, sc.context({"a"}));
  CHECK(up == rep.transfer(sec(sc, "a=0")));
  CHECK(s.is_subset_of(up));
  CHECK(up != s);
  CHECK(extend_event(rep, s, Context{}) == rep.all_points());
  CHECK_THROWS_AS(extend_event(rep, s, sc.context({"c"})), DomainError);
  CHECK_THROWS_AS(extend_event(rep, PointSet(rep.num_points()), Context{}), NotAnEvent);
}

TEST_CASE("layouts_with_copies_verify", "[wps]") {
  CombinatorialLayout layout{5, 2};
  const auto rep = build_combinatorial_rep(hardy_model(), {}, layout);
  CHECK(rep.num_points() == 32);
  CHECK(verify_rep(rep).ok());
}
