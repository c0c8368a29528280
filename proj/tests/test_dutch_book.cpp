#include <catch2/catch_amalgamated.hpp>

#include "ctxbook/catalog.hpp"
#include "ctxbook/dutch_book.hpp"
#include "ctxbook/errors.hpp"
#include "ctxbook/violation.hpp"

using namespace ctxbook;

namespace {

Section sec(const Scenario& sc, const char* text) { return parse_section(sc, text); }

WpsRepresentation control_rep() {
  const auto sc = bell_scenario();
  std::vector<EmpiricalModel> parts{deterministic_model(sc, sec(sc, "a=0,b=0,a'=1,b'=0")),
                                    deterministic_model(sc, sec(sc, "a=1,b=1,a'=1,b'=0")),
                                    deterministic_model(sc, sec(sc, "a=0,b=0,a'=0,b'=1"))};
  std::vector<Rational> w{Rational(1, 2), Rational(1, 3), Rational(1, 6)};
  return build_combinatorial_rep(mixture(parts, w));
}

}  // namespace

TEST_CASE("convexity_membership_examples", "[dutch_book]") {
  const auto control = control_rep();
  const auto weights = convexity_membership(control, control.sigma());
  REQUIRE(weights);
  // the same system as a classical extension: the weights define one
  CHECK(verify_extension(control, classical_extension(control, *weights), ExtensionKind::Classical).ok);

  const auto bell = build_combinatorial_rep(bell_model());
  const auto vm = vm_events(bell);
  CHECK_FALSE(convexity_membership(bell, vm));

  Scenario one({"a"}, {"0"}, {{"a"}});
  const auto trivial = build_combinatorial_rep(EmpiricalModel(one, {Distribution(one, one.all_measurements(), {1})}));
  REQUIRE(trivial.num_points() == 1);
  const auto w1 = convexity_membership(trivial, trivial.sigma());
  REQUIRE(w1);
  CHECK((*w1)[0] == 1);
}

TEST_CASE("pr_box_dutch_book", "[dutch_book]") {
  const auto pr = build_combinatorial_rep(pr_box_model());
  const auto cert = find_dutch_book(pr);
  REQUIRE(cert);
  CHECK(cert->loss_bound >= 1);
  REQUIRE(cert->stakes.size() == 8);
  for (const auto& s : cert->stakes) {
    CHECK(s.amount == -1);
    CHECK(is_zero(pr.measure(s.event)));
  }
  CHECK(verify_certificate(pr, *cert));
  // every one of the 16 points lies in at least one staked event
  for (const auto& p : payoffs(pr, *cert)) CHECK(p <= -1);

  auto flipped = *cert;
  flipped.stakes[0].amount = 1;
  flipped.loss_bound = 1;
  CHECK_FALSE(verify_certificate(pr, flipped));

  DutchBookCertificate empty{{}, Rational(1, 2)};
  CHECK_FALSE(verify_certificate(pr, empty));

  DutchBookCertificate outside{{{PointSet::of(pr.num_points(), {3}), Rational(1)}}, Rational(1)};
  CHECK_THROWS_AS(verify_certificate(pr, outside), NotAnEvent);
}

TEST_CASE("dutch_book_control_and_bell", "[dutch_book]") {
  CHECK_FALSE(find_dutch_book(control_rep()));

  const auto bell = build_combinatorial_rep(bell_model());
  const auto cert = find_dutch_book(bell);
  REQUIRE(cert);
  CHECK(cert->loss_bound > 0);
  CHECK(verify_certificate(bell, *cert));
}

TEST_CASE("dutch_book_on_padded_reps", "[dutch_book]") {
  const auto hardy = hardy_model();
  const auto& sc = hardy.scenario();
  const auto base = sec(sc, "a=1,b=1,a'=1,b'=0");
  const auto rep = build_padded_rep(hardy, {contradictory_point(sc, 2, 0, 1, base, "pad")});
  const auto cert = find_dutch_book(rep);
  REQUIRE(cert);
  CHECK(verify_certificate(rep, *cert));
}

TEST_CASE("bijections_v_and_d", "[dutch_book]") {
  const auto bell = build_combinatorial_rep(bell_model());
  const auto& sc = bell.scenario();
  const auto events = vm_events(bell);
  const auto globals = sections_over(sc, sc.all_measurements());

  std::vector<AtomicFunctional> seen;
  for (const auto& g : globals) {
    const auto v = section_to_functional(bell, g);
    std::size_t i = 0;
    for (const auto& c : sc.maximal_contexts()) {
      for (const auto& s : sections_over(sc, c)) {
        CHECK(v.values[i] == (restrict(g, c) == s ? 1 : 0));
        CHECK(events[i] == bell.transfer(s));
        ++i;
      }
    }
    for (const auto& other : seen) CHECK(other.values != v.values);  // injective
    seen.push_back(v);

    const auto d = distribution_to_convex_point(bell, point_mass(sc, g));
    for (std::size_t j = 0; j < d.size(); ++j) CHECK(d[j] == v.values[j]);
  }

  // d has the coefficient matrix of the marginal problem
  const auto gs = global_distribution_system(bell.model());
  for (std::size_t k = 0; k < globals.size(); ++k) {
    std::vector<Rational> w(globals.size());
    w[k] = 1;
    const auto d = distribution_to_convex_point(bell, Distribution(sc, sc.all_measurements(), w));
    for (std::size_t r = 0; r < gs.table_rows(); ++r) CHECK(d[r] == gs.system.rows[r][k]);
  }

  const auto padded = build_padded_rep(bell.model(), {missing_point(sc, 0, globals[0], "pad")});
  CHECK_THROWS_AS(section_to_functional(padded, globals[0]), NotCombinatorial);
  CHECK_THROWS_AS(section_to_functional(bell, sec(sc, "a=0")), DomainError);
}

TEST_CASE("convexity_hierarchy_examples", "[dutch_book][convexity]") {
  const auto pr = convexity_hierarchy(build_combinatorial_rep(pr_box_model()));
  CHECK(pr.strong_violation);
  CHECK(pr.logical_violation);
  CHECK(pr.probabilistic_violation);

  const auto hardy = convexity_hierarchy(build_combinatorial_rep(hardy_model()));
  CHECK_FALSE(hardy.strong_violation);
  CHECK(hardy.logical_violation);

  const auto bell = convexity_hierarchy(build_combinatorial_rep(bell_model()));
  CHECK_FALSE(bell.strong_violation);
  CHECK_FALSE(bell.logical_violation);
  CHECK(bell.probabilistic_violation);

  const auto control = convexity_hierarchy(control_rep());
  CHECK_FALSE(control.probabilistic_violation);
  CHECK(control.convex_weights);
}
