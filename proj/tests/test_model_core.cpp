#include <catch2/catch_amalgamated.hpp>

#include "ctxbook/catalog.hpp"
#include "ctxbook/empirical_model.hpp"
#include "ctxbook/errors.hpp"

using namespace ctxbook;

namespace {

Section sec(const Scenario& sc, const char* text) { return parse_section(sc, text); }

}  // namespace

TEST_CASE("rational_parsing", "[rational]") {
  CHECK(parse_rational("3/8") == Rational(3, 8));
  CHECK(parse_rational("-2/4") == Rational(-1, 2));
  CHECK(parse_rational("0.375") == Rational(3, 8));
  CHECK(parse_rational("7") == 7);
  CHECK(to_string(Rational(6, 4)) == "3/2");
  CHECK(to_string(Rational(2)) == "2");
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("x"), ParseError);
  CHECK_THROWS_AS(parse_rational(""), ParseError);
}

TEST_CASE("scenario_invariants", "[scenario]") {
  CHECK_THROWS_AS(Scenario({}, {"0"}, {}), ValidationError);
  CHECK_THROWS_AS(Scenario({"a"}, {}, {{"a"}}), ValidationError);
  // b not covered
  CHECK_THROWS_AS(Scenario({"a", "b"}, {"0", "1"}, {{"a"}}), ValidationError);
  // nested maximal contexts
  CHECK_THROWS_AS(Scenario({"a", "b"}, {"0", "1"}, {{"a", "b"}, {"a"}}), ValidationError);
  CHECK_THROWS_AS(Scenario({"a,b"}, {"0"}, {{"a,b"}}), ValidationError);

  const auto sc = bell_scenario();
  CHECK(sc.num_measurements() == 4);
  CHECK(sc.maximal_contexts().size() == 4);
  CHECK(sc.label(sc.maximal_contexts()[2]) == "b,a'");
  CHECK(sc.is_context(sc.context({"a"})));
  CHECK_FALSE(sc.is_context(sc.context({"a", "a'"})));
  CHECK_THROWS_AS(sc.measurement_index("z"), DomainError);
}

TEST_CASE("single_context_and_degenerate_scenarios", "[scenario]") {
  // M = {X} is allowed
  Scenario whole({"a", "b"}, {"0", "1"}, {{"a", "b"}});
  CHECK(whole.maximal_contexts().size() == 1);
  Scenario one({"a"}, {"0"}, {{"a"}});
  CHECK(sections_over(one, one.all_measurements()).size() == 1);
}

TEST_CASE("sections_over_counts_and_order", "[section]") {
  const auto sc = bell_scenario();
  CHECK(sections_over(sc, sc.context({"a", "b"})).size() == 4);
  CHECK(sections_over(sc, sc.all_measurements()).size() == 16);
  const auto empty = sections_over(sc, Context{});
  REQUIRE(empty.size() == 1);
  CHECK(empty[0].domain().empty());

  const auto ab = sections_over(sc, sc.context({"a", "b"}));
  CHECK(to_string(sc, ab[0]) == "a=0,b=0");
  CHECK(to_string(sc, ab[1]) == "a=0,b=1");
  CHECK(to_string(sc, ab[2]) == "a=1,b=0");
  for (std::size_t i = 0; i < ab.size(); ++i) CHECK(section_index(sc, ab[i]) == i);

  Limits tight{8};
  CHECK_THROWS_AS(sections_over(sc, sc.all_measurements(), tight), CapExceeded);
}

TEST_CASE("restrict_examples", "[section]") {
  const auto sc = bell_scenario();
  CHECK(restrict(sec(sc, "a=1,b=0"), sc.context({"a"})) == sec(sc, "a=1"));
  const auto s = sec(sc, "a=1,b=0");
  CHECK(restrict(s, s.domain()) == s);
  CHECK(restrict(sec(sc, "a=1,b=0,a'=1"), sc.context({"b", "a'"})) == sec(sc, "b=0,a'=1"));
  CHECK_THROWS_AS(restrict(s, sc.context({"a'"})), DomainError);
}

TEST_CASE("glue_examples", "[section]") {
  const auto sc = bell_scenario();
  std::vector<Section> ok{sec(sc, "a=1,b=1"), sec(sc, "b=1,a'=0")};
  CHECK(glue(ok) == sec(sc, "a=1,b=1,a'=0"));

  std::vector<Section> clash{sec(sc, "a=1,b=1"), sec(sc, "b=0,a'=0")};
  try {
    glue(clash);
    FAIL("expected a clash");
  } catch (const IncompatibleFamily& e) {
    CHECK(std::string(e.what()).find("#0 and #1") != std::string::npos);
    CHECK(std::string(e.what()).find("measurement #1") != std::string::npos);  // b
  }
  std::vector<Section> single{sec(sc, "a'=1")};
  CHECK(glue(single) == single[0]);
  CHECK_THROWS_AS(glue(std::vector<Section>{}), DomainError);
}

TEST_CASE("section_text_round_trip", "[section]") {
  const auto sc = bell_scenario();
  for (const auto& s : sections_over(sc, sc.context({"b", "a'"}))) CHECK(parse_section(sc, to_string(sc, s)) == s);
  CHECK(to_string(sc, Section{}) == "{}");
  CHECK(parse_section(sc, "{}") == Section{});
  CHECK_THROWS_AS(parse_section(sc, "a=2"), ParseError);
}

TEST_CASE("marginalize_examples", "[distribution]") {
  const auto sc = bell_scenario();
  const auto ab = sc.context({"a", "b"});
  Distribution uniform(sc, ab, {Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)});
  const auto a = marginalize(sc, uniform, sc.context({"a"}));
  CHECK(a.weights() == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
  CHECK(marginalize(sc, uniform, ab) == uniform);

  const auto r = sec(sc, "a=1,b=0");
  CHECK(marginalize(sc, point_mass(sc, r), sc.context({"b"})) == point_mass(sc, sec(sc, "b=0")));
  CHECK_THROWS_AS(marginalize(sc, uniform, sc.context({"a'"})), DomainError);
}

TEST_CASE("distribution_validation", "[distribution]") {
  const auto sc = bell_scenario();
  const auto a = sc.context({"a"});
  CHECK_THROWS_AS(Distribution(sc, a, {Rational(1, 2), Rational(1, 3)}), WeightError);
  CHECK_THROWS_AS(Distribution(sc, a, {Rational(3, 2), Rational(-1, 2)}), WeightError);
  CHECK_THROWS_AS(Distribution(sc, a, {Rational(1)}), WeightError);
}

TEST_CASE("check_model_catalog_passes", "[model]") {
  for (const auto& e : catalog()) {
    INFO(e.name);
    CHECK(check_model(e.model).ok());
  }
}

TEST_CASE("check_model_reports_perturbation", "[model]") {
  const auto base = bell_model();
  const auto& sc = base.scenario();
  auto tables = base.tables();
  // shift 1/100 within {a,b'} from a=0,b'=0 to a=1,b'=0: the a-marginal moves
  auto w = tables[1].weights();
  w[0] -= Rational(1, 100);
  w[2] += Rational(1, 100);
  tables[1] = Distribution(sc, tables[1].domain(), w);
  const auto verdict = check_model(sc, tables);
  REQUIRE_FALSE(verdict.ok());
  const auto& f = verdict.failures.front();
  CHECK(f.first_context == 0);
  CHECK(f.second_context == 1);
  CHECK(sc.label(f.overlap) == "a");
  CHECK(f.section == sec(sc, "a=0"));
  CHECK(f.first_value == Rational(1, 2));
  CHECK(f.second_value == Rational(49, 100));
  CHECK_THROWS_AS(EmpiricalModel(sc, tables), NoSignalingViolation);
}

TEST_CASE("check_model_single_context_vacuous", "[model]") {
  Scenario whole({"a", "b"}, {"0", "1"}, {{"a", "b"}});
  Distribution d(whole, whole.all_measurements(), {Rational(1, 8), Rational(3, 8), Rational(1, 4), Rational(1, 4)});
  EmpiricalModel m(whole, {d});
  CHECK(check_model(m).ok());
}

TEST_CASE("deterministic_and_mixture", "[model]") {
  const auto sc = bell_scenario();
  const auto g1 = sec(sc, "a=0,b=0,a'=1,b'=1");
  const auto g2 = sec(sc, "a=1,b=0,a'=0,b'=1");
  const auto d1 = deterministic_model(sc, g1);
  const auto d2 = deterministic_model(sc, g2);
  CHECK(check_model(d1).ok());
  std::vector<EmpiricalModel> ms{d1, d2};
  std::vector<Rational> half{Rational(1, 2), Rational(1, 2)};
  const auto mix = mixture(ms, half);
  CHECK(check_model(mix).ok());
  for (const auto& t : mix.tables()) {
    for (const auto& w : t.weights()) CHECK((w == 0 || w == Rational(1, 2) || w == 1));
  }
  std::vector<Rational> first{Rational(1), Rational(0)};
  CHECK(mixture(ms, first) == d1);
  std::vector<Rational> bad{Rational(1, 2), Rational(1, 3)};
  CHECK_THROWS_AS(mixture(ms, bad), WeightError);
  std::vector<EmpiricalModel> mismatched{d1, specker_model()};
  CHECK_THROWS_AS(mixture(mismatched, half), ScenarioMismatch);
  CHECK_THROWS_AS(deterministic_model(sc, sec(sc, "a=0")), DomainError);
}
