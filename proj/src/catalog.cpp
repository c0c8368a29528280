#include "ctxbook/catalog.hpp"

#include "ctxbook/errors.hpp"

#include <bit>

namespace ctxbook {

Scenario bell_scenario() {
  return Scenario({"a", "b", "a'", "b'"}, {"0", "1"}, {{"a", "b"}, {"a", "b'"}, {"b", "a'"}, {"a'", "b'"}});
}

Scenario specker_scenario() { return Scenario({"a", "b", "c"}, {"0", "1"}, {{"a", "b"}, {"a", "c"}, {"b", "c"}}); }

Scenario ghz_scenario() {
  std::vector<std::vector<std::string>> contexts;
  for (const char* p : {"A.X", "A.Y"}) {
    for (const char* q : {"B.X", "B.Y"}) {
      for (const char* r : {"C.X", "C.Y"}) contexts.push_back({p, q, r});
    }
  }
  return Scenario({"A.X", "A.Y", "B.X", "B.Y", "C.X", "C.Y"}, {"0", "1"}, contexts);
}

EmpiricalModel model_from_strings(const Scenario& scenario, const std::vector<std::vector<std::string>>& tables) {
  std::vector<Distribution> dists;
  if (tables.size() != scenario.maximal_contexts().size()) throw ValidationError("one table per maximal context");
  for (std::size_t c = 0; c < tables.size(); ++c) {
    std::vector<Rational> w;
    for (const auto& text : tables[c]) w.push_back(parse_rational(text));
    dists.emplace_back(scenario, scenario.maximal_contexts()[c], std::move(w));
  }
  return EmpiricalModel(scenario, std::move(dists));
}

// Bell tables: maximal contexts in order {a,b}, {a,b'}, {b,a'}, {a',b'};
// sections 00, 01, 10, 11 with the earlier measurement first.

EmpiricalModel bell_model() {
  return model_from_strings(bell_scenario(), {{"1/2", "0", "0", "1/2"},
                                              {"3/8", "1/8", "1/8", "3/8"},
                                              {"3/8", "1/8", "1/8", "3/8"},
                                              {"1/8", "3/8", "3/8", "1/8"}});
}

EmpiricalModel hardy_model() {
  return model_from_strings(bell_scenario(), {{"1/4", "1/10", "1/10", "11/20"},
                                              {"0", "7/20", "11/20", "1/10"},
                                              {"0", "7/20", "11/20", "1/10"},
                                              {"1/10", "9/20", "9/20", "0"}});
}

EmpiricalModel pr_box_model() {
  return model_from_strings(bell_scenario(), {{"1/2", "0", "0", "1/2"},
                                              {"1/2", "0", "0", "1/2"},
                                              {"1/2", "0", "0", "1/2"},
                                              {"0", "1/2", "1/2", "0"}});
}

EmpiricalModel specker_model() {
  const std::vector<std::string> anti{"0", "1/2", "1/2", "0"};
  return model_from_strings(specker_scenario(), {anti, anti, anti});
}

EmpiricalModel ghz_model() {
  const Scenario scenario = ghz_scenario();
  std::vector<Distribution> tables;
  for (const auto& c : scenario.maximal_contexts()) {
    std::size_t ys = 0;
    for (std::size_t m : c) ys += scenario.measurement(m).back() == 'Y' ? 1 : 0;
    std::vector<Rational> w(8);
    for (std::size_t t = 0; t < 8; ++t) {
      const std::size_t zeros = 3 - static_cast<std::size_t>(std::popcount(t));
      if (ys % 2 == 1) {
        w[t] = Rational(1, 8);
      } else if (ys == 0) {
        w[t] = zeros % 2 == 0 ? Rational(1, 4) : Rational(0);  // XXX = +1
      } else {
        w[t] = zeros % 2 == 1 ? Rational(1, 4) : Rational(0);  // XYY = -1
      }
    }
    tables.emplace_back(scenario, c, std::move(w));
  }
  return EmpiricalModel(scenario, std::move(tables));
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> out;
    out.push_back({"bell", "Bell model: singlet state, a=0, a'=pi/3, b=pi, b'=2pi/3 in the x-z plane", bell_model(),
                   Tier::Probabilistic,
                   "Born-rule tables of the singlet experiment (bell-quantum), exact after snapping"});
    out.push_back({"hardy", "Hardy model: half PR box (a'b' anticorrelated), half uniform over five local sections",
                   hardy_model(), Tier::Logical,
                   "rational construction; its support matches the Hardy bundle, a=0,b=0 has no consistent extension"});
    out.push_back({"pr-box", "Popescu-Rohrlich box", pr_box_model(), Tier::Strong,
                   "uniform on the two support sections of each context"});
    out.push_back({"specker", "Specker triangle: three pairwise anticorrelated bits", specker_model(), Tier::Strong,
                   "uniform on the two anticorrelated sections of each pair"});
    out.push_back({"ghz", "GHZ model: three qubits, X/Y settings", ghz_model(), Tier::Strong,
                   "Born-rule tables of the GHZ experiment (ghz-quantum)"});
    return out;
  }();
  return entries;
}

const CatalogEntry& catalog_entry(std::string_view name) {
  for (const auto& e : catalog()) {
    if (e.name == name) return e;
  }
  std::string known;
  for (const auto& e : catalog()) known += (known.empty() ? "" : ", ") + e.name;
  throw DomainError("no catalog model named '" + std::string(name) + "' (known: " + known + ")");
}

}  // namespace ctxbook
