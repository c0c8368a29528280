#include <catch2/catch_amalgamated.hpp>

#include "ctxbook/catalog.hpp"
#include "ctxbook/errors.hpp"
#include "ctxbook/violation.hpp"

using namespace ctxbook;

namespace {

Section sec(const Scenario& sc, const char* text) { return parse_section(sc, text); }

// One point in Ē(x0=0) ∩ Ē(x0=1) and one with no outcome for x1.
std::vector<PadPoint> both_paddings(const Scenario& sc) {
  const auto base = sections_over(sc, sc.all_measurements()).back();
  return {contradictory_point(sc, 0, 0, 1, base, "pad.overlap"), missing_point(sc, 1, base, "pad.missing")};
}

}  // namespace

TEST_CASE("defect_examples", "[violation]") {
  const auto pr = build_combinatorial_rep(pr_box_model());
  CHECK(defect(pr, std::vector<PointSet>{}) == 0);

  std::vector<PointSet> nulls;
  for (const auto& e : vm_events(pr)) {
    if (is_zero(pr.measure(e))) nulls.push_back(e);
  }
  REQUIRE(nulls.size() == 8);
  CHECK(defect(pr, nulls) == 1);

  // ε†(C) is an additive cover
  const auto& sc = pr.scenario();
  std::vector<PointSet> cover;
  for (const auto& s : sections_over(sc, sc.maximal_contexts()[1])) cover.push_back(pr.transfer(s));
  CHECK(defect(pr, cover) == 0);

  // a single point is not μ-evaluable
  std::vector<PointSet> odd{PointSet::of(pr.num_points(), {0})};
  CHECK_THROWS_AS(defect(pr, odd), NotAnEvent);
}

TEST_CASE("strong_witness_defect_one", "[violation][witness]") {
  for (const auto* name : {"pr-box", "specker", "ghz"}) {
    INFO(name);
    const auto& model = catalog_entry(name).model;
    const auto rep = build_combinatorial_rep(model);
    const auto w = theorem1_witness(rep, Tier::Strong);
    CHECK(w.kind == WitnessKind::MaximalSubadditivity);
    CHECK(w.defect == Rational(1));
    CHECK(check_witness(rep, w).empty());
  }
  const auto pr = pr_box_model();
  const auto padded = build_padded_rep(pr, both_paddings(pr.scenario()));
  const auto w = theorem1_witness(padded, Tier::Strong);
  PointSet u(padded.num_points());
  for (const auto& s : w.collection) u |= s;
  CHECK(u == padded.all_points());
  CHECK(w.defect == Rational(1));
  CHECK(check_witness(padded, w).empty());
}

TEST_CASE("logical_witness_positive_defect", "[violation][witness]") {
  const auto hardy = hardy_model();
  const auto rep = build_combinatorial_rep(hardy);
  const auto w = theorem1_witness(rep, Tier::Logical);
  CHECK(w.kind == WitnessKind::Subadditivity);
  REQUIRE(w.defect);
  CHECK(*w.defect > 0);
  // the defect is μ(S*) for s* = a=0,b=0
  CHECK(*w.defect == Rational(1, 4));
  CHECK(to_string(hardy.scenario(), *w.target) == "a=0,b=0");
  CHECK(check_witness(rep, w).empty());

  const auto padded = build_padded_rep(hardy, both_paddings(hardy.scenario()));
  const auto wp = theorem1_witness(padded, Tier::Logical);
  CHECK(*wp.defect == Rational(1, 4));
  CHECK(check_witness(padded, wp).empty());
  // strong models have logical witnesses too
  CHECK(*theorem1_witness(build_combinatorial_rep(pr_box_model()), Tier::Logical).defect > 0);
}

TEST_CASE("witness_tier_mismatch", "[violation][witness]") {
  const auto bell = build_combinatorial_rep(bell_model());
  CHECK_THROWS_AS(theorem1_witness(bell, Tier::Strong), TierMismatch);
  CHECK_THROWS_AS(theorem1_witness(bell, Tier::Logical), TierMismatch);
  const auto sc = bell_scenario();
  const auto det = build_combinatorial_rep(deterministic_model(sc, sec(sc, "a=0,b=0,a'=0,b'=0")));
  CHECK_THROWS_AS(theorem1_witness(det, Tier::Probabilistic), TierMismatch);
}

TEST_CASE("bell_additivity_witness", "[violation][witness]") {
  const auto rep = build_combinatorial_rep(bell_model());
  const auto w = theorem1_witness(rep, Tier::Probabilistic);
  CHECK(w.kind == WitnessKind::MonotonicAdditivity);
  CHECK(check_witness(rep, w).empty());
  CHECK_FALSE(w.defect);  // single points are not Σ-events

  const auto extensions = sample_monotonic_extensions(rep, 20, 99);
  REQUIRE(extensions.size() == 20);
  for (const auto& ext : extensions) {
    const auto verdict = verify_extension(rep, ext, ExtensionKind::Monotonic);
    INFO(verdict.failure);
    REQUIRE(verdict.ok);
    const auto found = additivity_violation_in(rep, ext);
    REQUIRE(found);
    CHECK_FALSE(is_zero(*found->defect));
    CHECK(extension_defect(ext, found->collection) == *found->defect);
  }
}

TEST_CASE("bell_reps_are_not_subadditive_anywhere", "[violation]") {
  // [a≠b], [a≠b'], [a'≠b], [a'=b'] cover Y but their μ sum to 3/4 < 1, and
  // all of them are Σ-events, so no extension can be subadditive.
  const auto rep = build_combinatorial_rep(bell_model());
  const auto& sc = rep.scenario();
  auto ev = [&](std::initializer_list<const char*> parts) {
    PointSet u(rep.num_points());
    for (const char* p : parts) u |= rep.transfer(sec(sc, p));
    return u;
  };
  std::vector<PointSet> cover{ev({"a=0,b=1", "a=1,b=0"}), ev({"a=0,b'=1", "a=1,b'=0"}),
                              ev({"b=0,a'=1", "b=1,a'=0"}), ev({"a'=0,b'=0", "a'=1,b'=1"})};
  CHECK(defect(rep, cover) == Rational(1, 4));
}

TEST_CASE("vm_violation_examples", "[violation][vm]") {
  const auto pr = build_combinatorial_rep(pr_box_model());
  const auto strong = strong_vm_violation(pr);
  CHECK(strong.violated);
  CHECK(strong.defect == Rational(1));
  PointSet u(pr.num_points());
  for (const auto& s : strong.witness) u |= s;
  CHECK(u.count() == 16);

  const auto hardy = build_combinatorial_rep(hardy_model());
  CHECK_FALSE(strong_vm_violation(hardy).violated);
  const auto logical = logical_vm_violation(hardy);
  CHECK(logical.violated);
  CHECK(*logical.defect > 0);

  const auto bell = build_combinatorial_rep(bell_model());
  CHECK_FALSE(strong_vm_violation(bell).violated);
  CHECK_FALSE(logical_vm_violation(bell).violated);
  const auto add = vm_additivity_violation(bell);
  CHECK(add.violated);
  REQUIRE(add.certificate);
  CHECK(certifies_infeasibility(vm_system(bell).system, *add.certificate));

  const auto padded = build_padded_rep(pr_box_model(), both_paddings(pr_box_model().scenario()));
  CHECK_THROWS_AS(strong_vm_violation(padded), NotCombinatorial);
  CHECK_THROWS_AS(logical_vm_violation(padded), NotCombinatorial);
  CHECK_THROWS_AS(vm_additivity_violation(padded), NotCombinatorial);
}

TEST_CASE("classical_extension_examples", "[violation]") {
  const auto sc = bell_scenario();
  const auto g = sec(sc, "a=1,b=0,a'=0,b'=1");
  const auto det = build_combinatorial_rep(deterministic_model(sc, g));
  const auto p = has_classical_extension(det);
  REQUIRE(p);
  const auto y = det.point_index(to_string(sc, g));
  for (std::size_t i = 0; i < p->size(); ++i) CHECK((*p)[i] == (i == y ? 1 : 0));

  CHECK_FALSE(has_classical_extension(build_combinatorial_rep(bell_model())));

  const auto g2 = sec(sc, "a=0,b=0,a'=1,b'=1");
  std::vector<EmpiricalModel> parts{deterministic_model(sc, g), deterministic_model(sc, g2)};
  std::vector<Rational> w{Rational(1, 4), Rational(3, 4)};
  const auto mix = build_combinatorial_rep(mixture(parts, w));
  std::vector<Rational> planted(mix.num_points());
  planted[mix.point_index(to_string(sc, g))] = Rational(1, 4);
  planted[mix.point_index(to_string(sc, g2))] = Rational(3, 4);
  const auto planted_ext = classical_extension(mix, planted);
  CHECK(verify_extension(mix, planted_ext, ExtensionKind::Classical).ok);
  const auto found = has_classical_extension(mix);
  REQUIRE(found);
  CHECK(verify_extension(mix, classical_extension(mix, *found), ExtensionKind::Classical).ok);
}

TEST_CASE("verify_extension_examples", "[violation]") {
  const auto sc = specker_scenario();
  std::vector<EmpiricalModel> parts{deterministic_model(sc, sec(sc, "a=0,b=1,c=1")),
                                    deterministic_model(sc, sec(sc, "a=1,b=0,c=0"))};
  std::vector<Rational> w{Rational(1, 2), Rational(1, 2)};
  const auto rep = build_combinatorial_rep(mixture(parts, w));
  const auto p = has_classical_extension(rep);
  REQUIRE(p);
  const auto ext = classical_extension(rep, *p);
  CHECK(verify_extension(rep, ext, ExtensionKind::Classical).ok);
  CHECK(verify_extension(rep, ext, ExtensionKind::Monotonic).ok);

  // drop μ′ of some non-Σ set below one of its subsets
  auto broken = ext;
  bool tampered = false;
  for (std::uint64_t m = 1; m < broken.values.size() && !tampered; ++m) {
    PointSet u(rep.num_points());
    for (std::size_t a = 0; a < broken.atoms.size(); ++a) {
      if (m >> a & 1U) u |= broken.atoms[a];
    }
    if (rep.is_event(u) || is_zero(broken.values[m])) continue;
    broken.values[m] = -1;
    tampered = true;
  }
  REQUIRE(tampered);
  const auto verdict = verify_extension(rep, broken, ExtensionKind::Monotonic);
  CHECK(verdict.is_extension);
  CHECK_FALSE(verdict.ok);

  auto not_ext = ext;
  not_ext.values.back() = Rational(1, 2);  // μ(Y) = 1 is fixed by Σ
  CHECK_FALSE(verify_extension(rep, not_ext, ExtensionKind::Monotonic).is_extension);
}
