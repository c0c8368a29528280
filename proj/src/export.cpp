#include "ctxbook/export.hpp"

#include "ctxbook/classifier.hpp"

#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace ctxbook {

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string node_id(const Scenario& sc, std::size_t x, std::size_t o) {
  return sc.measurement(x) + "=" + sc.outcome(o);
}

}  // namespace

GraphExport export_bundle_diagram(const EmpiricalModel& model, const Limits& limits) {
  const auto& sc = model.scenario();
  std::set<std::pair<std::size_t, std::size_t>> base;
  for (const auto& c : sc.maximal_contexts()) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      for (std::size_t j = i + 1; j < c.size(); ++j) base.emplace(c.indices()[i], c.indices()[j]);
    }
  }

  // (x, o, x', o') -> label; edges from 2-element contexts carry the weight.
  std::map<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>, std::string> fiber;
  Json contexts = Json::array();
  for (const auto& d : model.tables()) {
    const auto& c = d.domain();
    Json support = Json::array();
    for (std::size_t k : d.support()) {
      const Section s = section_at(sc, c, k);
      support.push_back(Json{{"section", to_string(sc, s)}, {"weight", to_string(d.weight_at(k))}});
      for (std::size_t i = 0; i < c.size(); ++i) {
        for (std::size_t j = i + 1; j < c.size(); ++j) {
          auto key = std::make_tuple(c.indices()[i], s.values()[i], c.indices()[j], s.values()[j]);
          fiber.emplace(key, c.size() == 2 ? to_string(d.weight_at(k)) : std::string());
        }
      }
    }
    Json labels = Json::array();
    for (std::size_t x : c) labels.push_back(sc.measurement(x));
    contexts.push_back(Json{{"context", labels}, {"support", support}});
  }
  Json globals = Json::array();
  for (const auto& g : consistent_global_sections(model, limits)) globals.push_back(to_string(sc, g));

  std::ostringstream dot;
  dot << "graph bundle {\n  node [shape=point];\n  subgraph cluster_base {\n    label=\"base\";\n";
  for (std::size_t x = 0; x < sc.num_measurements(); ++x) {
    dot << "    " << quoted("base:" + sc.measurement(x)) << " [shape=circle, label=" << quoted(sc.measurement(x))
        << "];\n";
  }
  for (const auto& [x, y] : base) {
    dot << "    " << quoted("base:" + sc.measurement(x)) << " -- " << quoted("base:" + sc.measurement(y)) << ";\n";
  }
  dot << "  }\n";
  for (std::size_t x = 0; x < sc.num_measurements(); ++x) {
    dot << "  subgraph " << quoted("cluster_" + sc.measurement(x)) << " {\n    label=" << quoted(sc.measurement(x))
        << ";\n";
    for (std::size_t o = 0; o < sc.num_outcomes(); ++o) {
      dot << "    " << quoted(node_id(sc, x, o)) << " [xlabel=" << quoted(sc.outcome(o)) << "];\n";
    }
    dot << "  }\n";
  }
  Json edges = Json::array();
  for (const auto& [key, label] : fiber) {
    const auto& [x, o, y, p] = key;
    dot << "  " << quoted(node_id(sc, x, o)) << " -- " << quoted(node_id(sc, y, p));
    if (!label.empty()) dot << " [label=" << quoted(label) << "]";
    dot << ";\n";
    edges.push_back(Json::array({node_id(sc, x, o), node_id(sc, y, p)}));
  }
  dot << "}\n";

  Json data;
  data["schema_version"] = kSchemaVersion;
  data["kind"] = "bundle_diagram";
  data["measurements"] = sc.measurements();
  data["outcomes"] = sc.outcomes();
  Json base_edges = Json::array();
  for (const auto& [x, y] : base) base_edges.push_back(Json::array({sc.measurement(x), sc.measurement(y)}));
  data["base_edges"] = base_edges;
  data["contexts"] = contexts;
  data["support_edges"] = edges;
  data["global_sections"] = globals;
  return {dot.str(), data};
}

GraphExport export_nerve(const WpsRepresentation& rep) {
  const auto& sc = rep.scenario();
  const auto positive = [&](const PointSet& e) {
    auto i = rep.find(e);
    return i && rep.mu()[*i] > 0;
  };
  std::vector<std::vector<bool>> vertex(sc.num_measurements(), std::vector<bool>(sc.num_outcomes(), false));
  for (std::size_t x = 0; x < sc.num_measurements(); ++x) {
    for (std::size_t o = 0; o < sc.num_outcomes(); ++o) vertex[x][o] = positive(rep.transfer(x, o));
  }

  struct Simplex {
    const Section* section;
    bool supported;
  };
  std::vector<Simplex> simplices;
  for (const auto& [s, image] : rep.transfer_map()) {
    if (s.domain().size() < 2 || image.empty()) continue;
    bool ok = true;
    for (std::size_t k = 0; k < s.domain().size(); ++k) ok = ok && vertex[s.domain().indices()[k]][s.values()[k]];
    if (!ok) continue;
    bool supported = true;
    for (const auto& u : subsets_of(s.domain())) {
      if (u.size() < 2 || !sc.is_context(u)) continue;
      supported = supported && positive(rep.transfer(restrict(s, u)));
    }
    simplices.push_back({&s, supported});
  }

  // Context edges lying in a supported simplex over X.
  const std::size_t n = sc.num_measurements();
  std::set<Section> solid;
  for (const auto& sx : simplices) {
    if (sx.section->domain().size() != n || !sx.supported) continue;
    for (const auto& u : subsets_of(sx.section->domain())) {
      if (u.size() == 2) solid.insert(restrict(*sx.section, u));
    }
  }

  std::ostringstream dot;
  dot << "graph nerve {\n";
  Json vertices = Json::array();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t o = 0; o < sc.num_outcomes(); ++o) {
      if (!vertex[x][o]) continue;
      const std::string mu = to_string(rep.measure(rep.transfer(x, o)));
      dot << "  " << quoted(node_id(sc, x, o)) << " [label=" << quoted(node_id(sc, x, o) + "\\nmu=" + mu) << "];\n";
      vertices.push_back(Json{{"id", node_id(sc, x, o)}, {"measure", mu}});
    }
  }
  Json out = Json::array();
  for (const auto& sx : simplices) {
    const Section& s = *sx.section;
    Json vs = Json::array();
    for (std::size_t k = 0; k < s.domain().size(); ++k) vs.push_back(node_id(sc, s.domain().indices()[k], s.values()[k]));
    Json entry{{"dimension", s.domain().size() - 1}, {"vertices", vs}, {"supported", sx.supported}};
    if (auto i = rep.find(rep.transfer(s))) entry["measure"] = to_string(rep.mu()[*i]);
    if (s.domain().size() == 2) {
      const char* style = "dotted";
      if (sc.is_context(s.domain())) style = !sx.supported ? "dotted" : solid.count(s) ? "solid" : "dashed";
      entry["style"] = style;
      dot << "  " << quoted(vs[0].get<std::string>()) << " -- " << quoted(vs[1].get<std::string>())
          << " [style=" << style << "];\n";
    } else {
      dot << "  // " << s.domain().size() - 1 << "-simplex " << to_string(sc, s)
          << (sx.supported ? " supported" : "") << "\n";
    }
    out.push_back(entry);
  }
  dot << "}\n";

  Json data;
  data["schema_version"] = kSchemaVersion;
  data["kind"] = "nerve";
  data["vertices"] = vertices;
  data["simplices"] = out;
  return {dot.str(), data};
}

}  // namespace ctxbook
