#include "ctxbook/report.hpp"

#include <algorithm>
#include <iomanip>
#include <numeric>
#include <sstream>

namespace ctxbook {

namespace {

const char* yes_no(bool b) { return b ? "yes" : "no"; }

constexpr Tier kTiers[] = {Tier::Strong, Tier::Logical, Tier::Probabilistic};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace

ClassificationReport classification_report(const EmpiricalModel& model, std::string name, const Limits& limits) {
  ClassificationReport r{std::move(name), model, classify(model, limits), false, false, false, {}, false};
  const auto rep = build_combinatorial_rep(model, limits);
  r.strong_vm = strong_vm_violation(rep).violated;
  r.logical_vm = logical_vm_violation(rep).violated;
  r.additivity_vm = vm_additivity_violation(rep, limits).violated;
  r.convexity = convexity_hierarchy(rep);
  r.dutch_bookable = find_dutch_book(rep).has_value();
  return r;
}

std::string render_text(const ClassificationReport& r) {
  std::ostringstream os;
  if (!r.name.empty()) os << "model: " << r.name << '\n';
  os << "tier=" << to_string(r.verdict.tier) << '\n';
  os << "dutch-bookable=" << yes_no(r.dutch_bookable) << "\n\n";
  if (r.verdict.logical_witness) {
    os << "uncovered support section: " << to_string(r.model.scenario(), *r.verdict.logical_witness) << "\n\n";
  }
  const bool vm[] = {r.strong_vm, r.logical_vm, r.additivity_vm};
  const bool cv[] = {r.convexity.strong_violation, r.convexity.logical_violation,
                     r.convexity.probabilistic_violation};
  auto row = [&os](const std::string& title, auto cell) {
    os << std::left << std::setw(31) << title;
    for (int i = 0; i < 3; ++i) os << std::setw(15) << cell(i);
    os << '\n';
  };
  row("", [](int i) { return lower(to_string(kTiers[i])); });
  row("contextual", [&](int i) { return yes_no(contextual_at(r.verdict.tier, kTiers[i])); });
  row("V_M violates (sub)additivity", [&](int i) { return yes_no(vm[i]); });
  row("mu not V_M-convex", [&](int i) { return yes_no(cv[i]); });
  return os.str();
}

Json report_to_json(const ClassificationReport& r) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "classification_report";
  if (!r.name.empty()) j["name"] = r.name;
  j["model"] = model_body_to_json(r.model);
  j["tier"] = to_string(r.verdict.tier);
  if (r.verdict.logical_witness) j["logical_witness"] = to_string(r.model.scenario(), *r.verdict.logical_witness);
  j["vm_violation"] = Json{{"strong", r.strong_vm}, {"logical", r.logical_vm}, {"probabilistic", r.additivity_vm}};
  j["convexity_violation"] = Json{{"strong", r.convexity.strong_violation},
                                  {"logical", r.convexity.logical_violation},
                                  {"probabilistic", r.convexity.probabilistic_violation}};
  j["dutch_bookable"] = r.dutch_bookable;
  return j;
}

std::vector<std::string> verify_report(const Document& doc, const Limits& limits) {
  JsonReader in(doc);
  in.expect_kind("classification_report");
  const Json& root = doc.json;
  const auto model = model_body_from_json(in, in.field(root, "", "model"), "/model");
  const std::string claimed = in.string(in.field(root, "", "tier"), "/tier");
  if (!parse_tier(claimed)) in.fail("/tier", "unknown tier '" + claimed + "'");
  auto read_flags = [&](const char* key) {
    const std::string path = child_path("", key);
    const Json& node = in.field(root, "", key);
    std::vector<bool> out;
    for (const char* tier : {"strong", "logical", "probabilistic"}) {
      out.push_back(in.boolean(in.field(node, path, tier), child_path(path, tier)));
    }
    return out;
  };
  const auto vm = read_flags("vm_violation");
  const auto cv = read_flags("convexity_violation");
  const bool bookable = in.boolean(in.field(root, "", "dutch_bookable"), "/dutch_bookable");

  const auto actual = classification_report(model, "", limits);
  std::vector<std::string> problems = check_tier_witness(model, actual.verdict, limits);
  if (*parse_tier(claimed) != actual.verdict.tier) {
    problems.push_back("tier is " + to_string(actual.verdict.tier) + ", report claims " + claimed);
  }
  const bool avm[] = {actual.strong_vm, actual.logical_vm, actual.additivity_vm};
  const bool acv[] = {actual.convexity.strong_violation, actual.convexity.logical_violation,
                      actual.convexity.probabilistic_violation};
  for (int i = 0; i < 3; ++i) {
    const std::string t = lower(to_string(kTiers[i]));
    if (vm[i] != avm[i]) problems.push_back("vm_violation." + t + " should be " + (avm[i] ? "true" : "false"));
    if (cv[i] != acv[i]) problems.push_back("convexity_violation." + t + " should be " + (acv[i] ? "true" : "false"));
  }
  if (bookable != actual.dutch_bookable) {
    problems.push_back(std::string("dutch_bookable should be ") + (actual.dutch_bookable ? "true" : "false"));
  }
  if (const Json* w = in.optional_field(root, "", "logical_witness")) {
    const std::string text = in.string(*w, "/logical_witness");
    if (!actual.verdict.logical_witness || to_string(model.scenario(), *actual.verdict.logical_witness) != text) {
      problems.push_back("logical_witness '" + text + "' does not match the recomputed witness");
    }
  }
  return problems;
}

std::vector<std::string> check_extension_weights(const WpsRepresentation& rep, const std::vector<Rational>& p) {
  std::vector<std::string> problems;
  if (p.size() != rep.num_points()) return {"expected one weight per point"};
  Rational total = 0;
  for (std::size_t y = 0; y < p.size(); ++y) {
    if (p[y] < 0) problems.push_back("negative weight on " + rep.points()[y]);
    total += p[y];
  }
  if (total != 1) problems.push_back("weights sum to " + to_string(total));
  for (std::size_t i = 0; i < rep.sigma().size(); ++i) {
    Rational mass = 0;
    for (std::size_t y : rep.sigma()[i].members()) mass += p[y];
    if (mass != rep.mu()[i]) {
      problems.push_back("p" + event_name(rep, rep.sigma()[i]) + " = " + to_string(mass) + " but mu = " +
                         to_string(rep.mu()[i]));
      if (problems.size() > 8) break;
    }
  }
  return problems;
}

std::string event_name(const WpsRepresentation& rep, const PointSet& event) {
  const auto& sc = rep.scenario();
  if (event.empty()) return "{}";
  if (auto s = rep.preimage(event)) return "Ē(" + to_string(sc, *s) + ")";
  // a union of section images over one maximal context
  for (const auto& c : sc.maximal_contexts()) {
    PointSet covered(rep.num_points());
    std::string name;
    for (const auto& s : sections_over(sc, c)) {
      const PointSet& image = rep.transfer(s);
      if (image.empty() || !image.is_subset_of(event)) continue;
      covered |= image;
      name += (name.empty() ? "" : " ∪ ") + std::string("Ē(") + to_string(sc, s) + ")";
    }
    if (covered == event) return name;
  }
  return describe_points(rep, event);
}

std::string render_witness(const WpsRepresentation& rep, Tier tier, const ViolationWitness& w) {
  std::ostringstream os;
  os << "tier " << to_string(tier) << ": " << to_string(w.kind) << '\n';
  os << "collection (" << w.collection.size() << " events):\n";
  for (const auto& e : w.collection) {
    os << "  " << event_name(rep, e);
    if (auto i = rep.find(e)) os << "  mu=" << to_string(rep.mu()[*i]);
    os << '\n';
  }
  if (w.context && w.target) {
    os << "target: " << to_string(rep.scenario(), *w.target) << " in context {"
       << rep.scenario().label(rep.scenario().maximal_contexts()[*w.context]) << "}\n";
  }
  if (w.defect) {
    os << "defect=" << to_string(*w.defect) << '\n';
  } else {
    os << "defect: depends on the extension; no monotonic extension is additive here\n";
  }
  return os.str();
}

std::string render_dutch_book(const WpsRepresentation& rep, const DutchBookCertificate& c) {
  std::ostringstream os;
  os << "stakes (" << c.stakes.size() << "):\n";
  for (const auto& s : c.stakes) {
    os << "  " << std::left << std::setw(10) << to_string(s.amount) << " on " << event_name(rep, s.event)
       << "  mu=" << to_string(rep.measure(s.event)) << '\n';
  }
  os << "loss_bound=" << to_string(c.loss_bound) << '\n';
  const auto pay = payoffs(rep, c);
  std::vector<std::size_t> order(pay.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pay[a] > pay[b]; });
  os << "payoffs (worst case first):\n";
  for (std::size_t y : order) os << "  " << std::left << std::setw(10) << to_string(pay[y]) << rep.points()[y] << '\n';
  return os.str();
}

}  // namespace ctxbook
