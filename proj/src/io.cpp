#include "ctxbook/io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace ctxbook {

namespace {

std::size_t line_at(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::string cur;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (path[i] == '/') {
      if (!cur.empty()) parts.push_back(cur);
      cur.clear();
    } else if (path[i] == '~' && i + 1 < path.size()) {
      cur += path[i + 1] == '1' ? '/' : '~';
      ++i;
    } else {
      cur += path[i];
    }
  }
  if (!cur.empty()) parts.push_back(cur);
  return parts;
}

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

std::string type_name(const Json& node) { return node.type_name(); }

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, end);
}

double parse_real(const JsonReader& in, const Json& node, const std::string& path) {
  const std::string s = in.string(node, path);
  double v = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec == std::errc() && end == s.data() + s.size()) return v;
  try {
    return to_double(parse_rational(s));
  } catch (const ParseError&) {
    in.fail(path, "expected a decimal or p/q number, got '" + s + "'");
  }
}

Json complex_to_json(std::complex<double> z) { return Json::array({format_double(z.real()), format_double(z.imag())}); }

std::complex<double> complex_from_json(const JsonReader& in, const Json& node, const std::string& path) {
  if (node.is_string()) return {parse_real(in, node, path), 0.0};
  const auto& a = in.array(node, path);
  if (a.size() != 2) in.fail(path, "expected [re, im]");
  return {parse_real(in, a[0], child_path(path, 0)), parse_real(in, a[1], child_path(path, 1))};
}

Json header(const char* kind) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = kind;
  return j;
}

std::string layout_path_hint(const std::string& path) { return path.empty() ? "/" : path; }

}  // namespace

std::string child_path(const std::string& path, std::string_view key) {
  std::string escaped;
  for (char c : key) {
    if (c == '~') {
      escaped += "~0";
    } else if (c == '/') {
      escaped += "~1";
    } else {
      escaped += c;
    }
  }
  return path + "/" + escaped;
}

std::string child_path(const std::string& path, std::size_t index) { return path + "/" + std::to_string(index); }

Document parse_document(std::string text, std::string source) {
  Document doc;
  doc.source = std::move(source);
  doc.text = std::move(text);
  try {
    doc.json = Json::parse(doc.text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t offset = e.byte == 0 ? 0 : e.byte - 1;
    const std::size_t line = line_at(doc.text, offset);
    const auto start = doc.text.rfind('\n', offset == 0 ? 0 : offset - 1);
    const std::size_t column = start == std::string::npos ? offset + 1 : offset - start;
    throw SchemaError(doc.source + ":" + std::to_string(line) + ":" + std::to_string(column) +
                          ": invalid JSON: " + e.what(),
                      line, "");
  }
  return doc;
}

Document load_document(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str(), path.string());
}

void save_json(const std::filesystem::path& path, const Json& json) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << json.dump(2) << '\n';
  if (!out) throw IoError("error writing '" + path.string() + "'");
}

// Best-effort: follow the object keys of the path through the raw text.
std::size_t JsonReader::line_of(const std::string& path) const {
  const std::string& text = doc_->text;
  std::size_t pos = 0;
  bool found = false;
  for (const auto& part : split_path(path)) {
    if (all_digits(part)) continue;
    const std::string needle = Json(part).dump();
    auto at = text.find(needle, pos);
    if (at == std::string::npos) break;
    pos = at;
    found = true;
  }
  return found ? line_at(text, pos) : 1;
}

void JsonReader::fail(const std::string& path, const std::string& message) const {
  const std::size_t line = line_of(path);
  throw SchemaError(doc_->source + ":" + std::to_string(line) + ": " + layout_path_hint(path) + ": " + message, line,
                    path);
}

const Json& JsonReader::object(const Json& node, const std::string& path) const {
  if (!node.is_object()) fail(path, "expected an object, got " + type_name(node));
  return node;
}

const Json& JsonReader::array(const Json& node, const std::string& path) const {
  if (!node.is_array()) fail(path, "expected an array, got " + type_name(node));
  return node;
}

const Json& JsonReader::field(const Json& obj, const std::string& path, const char* key) const {
  object(obj, path);
  auto it = obj.find(key);
  if (it == obj.end()) fail(path, std::string("missing field '") + key + "'");
  return *it;
}

const Json* JsonReader::optional_field(const Json& obj, const std::string& path, const char* key) const {
  object(obj, path);
  auto it = obj.find(key);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

std::string JsonReader::string(const Json& node, const std::string& path) const {
  if (!node.is_string()) fail(path, "expected a string, got " + type_name(node));
  return node.get<std::string>();
}

std::vector<std::string> JsonReader::strings(const Json& node, const std::string& path) const {
  std::vector<std::string> out;
  const auto& a = array(node, path);
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(string(a[i], child_path(path, i)));
  return out;
}

Rational JsonReader::rational(const Json& node, const std::string& path) const {
  if (node.is_number()) fail(path, "rationals are written as strings such as \"1/2\"");
  const std::string s = string(node, path);
  try {
    return parse_rational(s);
  } catch (const ParseError& e) {
    fail(path, e.what());
  }
}

std::uint64_t JsonReader::unsigned_integer(const Json& node, const std::string& path) const {
  if (!node.is_number_unsigned()) fail(path, "expected a non-negative integer, got " + node.dump());
  return node.get<std::uint64_t>();
}

bool JsonReader::boolean(const Json& node, const std::string& path) const {
  if (!node.is_boolean()) fail(path, "expected true or false, got " + type_name(node));
  return node.get<bool>();
}

std::string JsonReader::kind() const {
  const Json& root = doc_->json;
  const auto& v = field(root, "", "schema_version");
  if (!v.is_number_integer() || v.get<long long>() != kSchemaVersion) {
    fail("/schema_version", "unsupported schema_version " + v.dump() + " (expected " + std::to_string(kSchemaVersion) +
                                ")");
  }
  return string(field(root, "", "kind"), "/kind");
}

void JsonReader::expect_kind(std::string_view expected) const {
  const std::string k = kind();
  if (k != expected) fail("/kind", "expected kind '" + std::string(expected) + "', got '" + k + "'");
}

Json scenario_to_json(const Scenario& sc) {
  Json j;
  j["measurements"] = sc.measurements();
  j["outcomes"] = sc.outcomes();
  Json contexts = Json::array();
  for (const auto& c : sc.maximal_contexts()) {
    Json labels = Json::array();
    for (std::size_t x : c) labels.push_back(sc.measurement(x));
    contexts.push_back(labels);
  }
  j["maximal_contexts"] = contexts;
  return j;
}

Scenario scenario_from_json(const JsonReader& in, const Json& node, const std::string& path) {
  const auto x = in.strings(in.field(node, path, "measurements"), child_path(path, "measurements"));
  const auto o = in.strings(in.field(node, path, "outcomes"), child_path(path, "outcomes"));
  const std::string mpath = child_path(path, "maximal_contexts");
  const auto& m = in.array(in.field(node, path, "maximal_contexts"), mpath);
  std::vector<std::vector<std::string>> contexts;
  for (std::size_t i = 0; i < m.size(); ++i) contexts.push_back(in.strings(m[i], child_path(mpath, i)));
  try {
    return Scenario(x, o, contexts);
  } catch (const ValidationError& e) {
    in.fail(path, e.what());
  } catch (const DomainError& e) {
    in.fail(mpath, e.what());
  }
}

Json model_body_to_json(const EmpiricalModel& model) {
  const auto& sc = model.scenario();
  Json j;
  j["scenario"] = scenario_to_json(sc);
  Json tables = Json::object();
  for (const auto& d : model.tables()) {
    Json t = Json::object();
    const auto sections = sections_over(sc, d.domain());
    for (std::size_t k = 0; k < sections.size(); ++k) {
      if (!is_zero(d.weight_at(k))) t[to_string(sc, sections[k])] = to_string(d.weight_at(k));
    }
    tables[sc.label(d.domain())] = t;
  }
  j["tables"] = tables;
  return j;
}

EmpiricalModel model_body_from_json(const JsonReader& in, const Json& node, const std::string& path) {
  const Scenario sc = scenario_from_json(in, in.field(node, path, "scenario"), child_path(path, "scenario"));
  const std::string tpath = child_path(path, "tables");
  const auto& tables = in.object(in.field(node, path, "tables"), tpath);
  std::set<std::string> known;
  std::vector<Distribution> dists;
  for (const auto& c : sc.maximal_contexts()) {
    const std::string key = sc.label(c);
    known.insert(key);
    const std::string cpath = child_path(tpath, key);
    auto it = tables.find(key);
    if (it == tables.end()) in.fail(tpath, "missing table for context '" + key + "'");
    const auto& t = in.object(*it, cpath);
    std::vector<Rational> w(saturating_pow(sc.num_outcomes(), c.size()), Rational(0));
    for (auto e = t.begin(); e != t.end(); ++e) {
      const std::string spath = child_path(cpath, e.key());
      Section s;
      try {
        s = parse_section(sc, e.key());
      } catch (const Error& err) {
        in.fail(spath, err.what());
      }
      if (s.domain() != c) in.fail(spath, "section '" + e.key() + "' is not over {" + key + "}");
      w[section_index(sc, s)] = in.rational(e.value(), spath);
    }
    try {
      dists.emplace_back(sc, c, std::move(w));
    } catch (const WeightError& err) {
      in.fail(cpath, err.what());
    }
  }
  for (auto e = tables.begin(); e != tables.end(); ++e) {
    if (!known.count(e.key())) in.fail(child_path(tpath, e.key()), "'" + e.key() + "' is not a maximal context");
  }
  return EmpiricalModel(sc, std::move(dists));
}

Json model_to_json(const EmpiricalModel& model, std::string_view name) {
  Json j = header("empirical_model");
  if (!name.empty()) j["name"] = name;
  const Json body = model_body_to_json(model);
  for (const auto& [k, v] : body.items()) j[k] = v;
  return j;
}

EmpiricalModel model_from_json(const Document& doc) {
  JsonReader in(doc);
  in.expect_kind("empirical_model");
  return model_body_from_json(in, doc.json, "");
}

Json experiment_to_json(const QuantumExperiment& q) {
  Json j = header("quantum_experiment");
  j["name"] = q.name;
  j["dimension"] = q.dimension();
  Json state = Json::array();
  for (Eigen::Index i = 0; i < q.state.size(); ++i) state.push_back(complex_to_json(q.state(i)));
  j["state"] = state;
  Json projectors = Json::array();
  for (const auto& p : q.projectors) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < p.matrix.rows(); ++r) {
      Json row = Json::array();
      for (Eigen::Index c = 0; c < p.matrix.cols(); ++c) row.push_back(complex_to_json(p.matrix(r, c)));
      rows.push_back(row);
    }
    projectors.push_back(Json{{"label", p.label}, {"matrix", rows}});
  }
  j["projectors"] = projectors;
  return j;
}

QuantumExperiment experiment_from_json(const Document& doc) {
  JsonReader in(doc);
  in.expect_kind("quantum_experiment");
  const Json& root = doc.json;
  QuantumExperiment q;
  if (const Json* n = in.optional_field(root, "", "name")) q.name = in.string(*n, "/name");
  const auto dim = in.unsigned_integer(in.field(root, "", "dimension"), "/dimension");
  if (dim == 0 || dim > 4096) in.fail("/dimension", "dimension must be between 1 and 4096");
  const auto& state = in.array(in.field(root, "", "state"), "/state");
  if (state.size() != dim) in.fail("/state", "expected " + std::to_string(dim) + " components");
  q.state.resize(static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) q.state(static_cast<Eigen::Index>(i)) = complex_from_json(in, state[i], child_path("/state", i));
  const auto& ps = in.array(in.field(root, "", "projectors"), "/projectors");
  for (std::size_t k = 0; k < ps.size(); ++k) {
    const std::string ppath = child_path("/projectors", k);
    LabeledProjector p;
    p.label = in.string(in.field(ps[k], ppath, "label"), child_path(ppath, "label"));
    const std::string mpath = child_path(ppath, "matrix");
    const auto& rows = in.array(in.field(ps[k], ppath, "matrix"), mpath);
    if (rows.size() != dim) in.fail(mpath, "expected " + std::to_string(dim) + " rows");
    p.matrix.resize(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t r = 0; r < dim; ++r) {
      const std::string rpath = child_path(mpath, r);
      const auto& row = in.array(rows[r], rpath);
      if (row.size() != dim) in.fail(rpath, "expected " + std::to_string(dim) + " entries");
      for (std::size_t c = 0; c < dim; ++c) {
        p.matrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            complex_from_json(in, row[c], child_path(rpath, c));
      }
    }
    q.projectors.push_back(std::move(p));
  }
  try {
    validate_experiment(q);
  } catch (const ValidationError& e) {
    in.fail("", e.what());
  }
  return q;
}

Json representation_to_json(const WpsRepresentation& rep) {
  const auto& origin = rep.origin();
  if (origin.kind == RepOrigin::Kind::Raw) {
    throw DomainError("only combinatorial and padded representations can be saved");
  }
  Json j;
  j["type"] = origin.kind == RepOrigin::Kind::Combinatorial ? "combinatorial" : "padded";
  if (origin.layout.shuffle_seed) j["shuffle_seed"] = *origin.layout.shuffle_seed;
  j["copies"] = origin.layout.copies;
  if (origin.kind == RepOrigin::Kind::Padded) {
    const auto& sc = rep.scenario();
    Json padding = Json::array();
    for (const auto& p : origin.padding) {
      Json allowed = Json::object();
      for (std::size_t x = 0; x < sc.num_measurements(); ++x) {
        Json outs = Json::array();
        for (std::size_t o : p.allowed[x]) outs.push_back(sc.outcome(o));
        allowed[sc.measurement(x)] = outs;
      }
      padding.push_back(Json{{"label", p.label}, {"allowed", allowed}});
    }
    j["padding"] = padding;
  }
  return j;
}

WpsRepresentation representation_from_json(const JsonReader& in, const Json& node, const std::string& path,
                                           const EmpiricalModel& model, const Limits& limits) {
  const std::string type = in.string(in.field(node, path, "type"), child_path(path, "type"));
  CombinatorialLayout layout;
  if (const Json* s = in.optional_field(node, path, "shuffle_seed")) {
    layout.shuffle_seed = in.unsigned_integer(*s, child_path(path, "shuffle_seed"));
  }
  if (const Json* c = in.optional_field(node, path, "copies")) {
    layout.copies = in.unsigned_integer(*c, child_path(path, "copies"));
    if (layout.copies == 0) in.fail(child_path(path, "copies"), "copies must be positive");
  }
  if (type == "combinatorial") return build_combinatorial_rep(model, limits, layout);
  if (type != "padded") in.fail(child_path(path, "type"), "expected 'combinatorial' or 'padded', got '" + type + "'");

  const auto& sc = model.scenario();
  const std::string ppath = child_path(path, "padding");
  const auto& pads = in.array(in.field(node, path, "padding"), ppath);
  std::vector<PadPoint> padding;
  for (std::size_t k = 0; k < pads.size(); ++k) {
    const std::string kpath = child_path(ppath, k);
    PadPoint p;
    p.label = in.string(in.field(pads[k], kpath, "label"), child_path(kpath, "label"));
    const std::string apath = child_path(kpath, "allowed");
    const auto& allowed = in.object(in.field(pads[k], kpath, "allowed"), apath);
    p.allowed.resize(sc.num_measurements());
    for (std::size_t x = 0; x < sc.num_measurements(); ++x) {
      auto it = allowed.find(sc.measurement(x));
      if (it == allowed.end()) in.fail(apath, "missing outcomes for measurement '" + sc.measurement(x) + "'");
      const std::string xpath = child_path(apath, sc.measurement(x));
      for (const auto& label : in.strings(*it, xpath)) {
        try {
          p.allowed[x].push_back(sc.outcome_index(label));
        } catch (const DomainError& e) {
          in.fail(xpath, e.what());
        }
      }
      std::sort(p.allowed[x].begin(), p.allowed[x].end());
    }
    if (allowed.size() != sc.num_measurements()) in.fail(apath, "unknown measurement in allowed outcomes");
    padding.push_back(std::move(p));
  }
  try {
    return build_padded_rep(model, padding, limits, layout);
  } catch (const PaddingError& e) {
    in.fail(ppath, e.what());
  }
}

Json event_to_json(const WpsRepresentation& rep, const PointSet& event) {
  Json j = Json::array();
  for (std::size_t y : event.members()) j.push_back(rep.points()[y]);
  return j;
}

PointSet event_from_json(const JsonReader& in, const Json& node, const std::string& path,
                         const WpsRepresentation& rep) {
  PointSet out(rep.num_points());
  const auto labels = in.strings(node, path);
  for (const auto& label : labels) {
    try {
      out.insert(rep.point_index(label));
    } catch (const DomainError& e) {
      in.fail(path, e.what());
    }
  }
  return out;
}

namespace {

struct Embedded {
  EmpiricalModel model;
  WpsRepresentation rep;
};

Embedded embedded_rep(const JsonReader& in, const Limits& limits) {
  const Json& root = in.document().json;
  auto model = model_body_from_json(in, in.field(root, "", "model"), "/model");
  auto rep = representation_from_json(in, in.field(root, "", "representation"), "/representation", model, limits);
  return {std::move(model), std::move(rep)};
}

}  // namespace

Json certificate_to_json(const WpsRepresentation& rep, const DutchBookCertificate& certificate) {
  Json j = header("dutch_book_certificate");
  j["model"] = model_body_to_json(rep.model());
  j["representation"] = representation_to_json(rep);
  Json stakes = Json::array();
  for (const auto& s : certificate.stakes) {
    stakes.push_back(Json{{"event", event_to_json(rep, s.event)}, {"amount", to_string(s.amount)}});
  }
  j["stakes"] = stakes;
  j["loss_bound"] = to_string(certificate.loss_bound);
  return j;
}

CertificateFile certificate_from_json(const Document& doc, const Limits& limits) {
  JsonReader in(doc);
  in.expect_kind("dutch_book_certificate");
  auto [model, rep] = embedded_rep(in, limits);
  const Json& root = doc.json;
  DutchBookCertificate cert;
  const auto& stakes = in.array(in.field(root, "", "stakes"), "/stakes");
  for (std::size_t k = 0; k < stakes.size(); ++k) {
    const std::string spath = child_path("/stakes", k);
    Stake s{event_from_json(in, in.field(stakes[k], spath, "event"), child_path(spath, "event"), rep),
            in.rational(in.field(stakes[k], spath, "amount"), child_path(spath, "amount"))};
    cert.stakes.push_back(std::move(s));
  }
  cert.loss_bound = in.rational(in.field(root, "", "loss_bound"), "/loss_bound");
  return {std::move(rep), std::move(cert)};
}

Json extension_to_json(const WpsRepresentation& rep, const std::vector<Rational>& weights) {
  Json j = header("classical_extension");
  j["model"] = model_body_to_json(rep.model());
  j["representation"] = representation_to_json(rep);
  Json p = Json::object();
  for (std::size_t y = 0; y < weights.size(); ++y) {
    if (!is_zero(weights[y])) p[rep.points()[y]] = to_string(weights[y]);
  }
  j["point_weights"] = p;
  return j;
}

ExtensionFile extension_from_json(const Document& doc, const Limits& limits) {
  JsonReader in(doc);
  in.expect_kind("classical_extension");
  auto [model, rep] = embedded_rep(in, limits);
  const auto& p = in.object(in.field(doc.json, "", "point_weights"), "/point_weights");
  std::vector<Rational> w(rep.num_points(), Rational(0));
  for (auto e = p.begin(); e != p.end(); ++e) {
    const std::string path = child_path("/point_weights", e.key());
    std::size_t y = 0;
    try {
      y = rep.point_index(e.key());
    } catch (const DomainError& err) {
      in.fail(path, err.what());
    }
    w[y] = in.rational(e.value(), path);
  }
  return {std::move(rep), std::move(w)};
}

Json witness_to_json(const WpsRepresentation& rep, const ViolationWitness& witness) {
  const auto& sc = rep.scenario();
  Json j = header("violation_witness");
  j["model"] = model_body_to_json(rep.model());
  j["representation"] = representation_to_json(rep);
  j["witness_kind"] = to_string(witness.kind);
  Json collection = Json::array();
  for (const auto& e : witness.collection) collection.push_back(event_to_json(rep, e));
  j["collection"] = collection;
  if (witness.defect) j["defect"] = to_string(*witness.defect);
  if (witness.context) j["context"] = sc.label(sc.maximal_contexts()[*witness.context]);
  if (witness.target) j["target"] = to_string(sc, *witness.target);
  if (witness.certificate) {
    Json m = Json::array();
    for (const auto& r : witness.certificate->multipliers) m.push_back(to_string(r));
    j["certificate"] = m;
  }
  return j;
}

WitnessFile witness_from_json(const Document& doc, const Limits& limits) {
  JsonReader in(doc);
  in.expect_kind("violation_witness");
  auto [model, rep] = embedded_rep(in, limits);
  const auto& sc = rep.scenario();
  const Json& root = doc.json;
  ViolationWitness w;
  const std::string kind = in.string(in.field(root, "", "witness_kind"), "/witness_kind");
  bool known = false;
  for (auto k : {WitnessKind::MaximalSubadditivity, WitnessKind::Subadditivity, WitnessKind::MonotonicAdditivity}) {
    if (to_string(k) == kind) {
      w.kind = k;
      known = true;
    }
  }
  if (!known) in.fail("/witness_kind", "unknown witness kind '" + kind + "'");
  const auto& collection = in.array(in.field(root, "", "collection"), "/collection");
  for (std::size_t k = 0; k < collection.size(); ++k) {
    w.collection.push_back(event_from_json(in, collection[k], child_path("/collection", k), rep));
  }
  if (const Json* d = in.optional_field(root, "", "defect")) w.defect = in.rational(*d, "/defect");
  if (const Json* c = in.optional_field(root, "", "context")) {
    const std::string label = in.string(*c, "/context");
    std::optional<std::size_t> found;
    for (std::size_t i = 0; i < sc.maximal_contexts().size(); ++i) {
      if (sc.label(sc.maximal_contexts()[i]) == label) found = i;
    }
    if (!found) in.fail("/context", "'" + label + "' is not a maximal context");
    w.context = found;
  }
  if (const Json* t = in.optional_field(root, "", "target")) {
    try {
      w.target = parse_section(sc, in.string(*t, "/target"));
    } catch (const Error& e) {
      in.fail("/target", e.what());
    }
  }
  if (const Json* c = in.optional_field(root, "", "certificate")) {
    FarkasCertificate f;
    const auto& a = in.array(*c, "/certificate");
    for (std::size_t k = 0; k < a.size(); ++k) f.multipliers.push_back(in.rational(a[k], child_path("/certificate", k)));
    w.certificate = std::move(f);
  }
  return {std::move(rep), std::move(w)};
}

}  // namespace ctxbook
