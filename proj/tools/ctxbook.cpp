// ctxbook command line: classify, witness, dutchbook, verify, export, catalog-list.

#include "ctxbook/catalog.hpp"
#include "ctxbook/classifier.hpp"
#include "ctxbook/dutch_book.hpp"
#include "ctxbook/errors.hpp"
#include "ctxbook/export.hpp"
#include "ctxbook/io.hpp"
#include "ctxbook/quantum.hpp"
#include "ctxbook/report.hpp"
#include "ctxbook/violation.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>

namespace {

using namespace ctxbook;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kInvalid = 2;
constexpr int kCap = 3;
constexpr int kInternal = 4;

struct Options {
  std::string model;
  std::size_t cap = kDefaultEnumerationCap;
  double snap_tol = 1e-9;
  std::int64_t denom_bound = 4096;
  std::string format = "text";
  std::string out;
  std::string tier;
  bool padded = false;
  std::string file;
  std::string diagram;

  [[nodiscard]] Limits limits() const { return Limits{cap}; }
  [[nodiscard]] SnapOptions snap() const { return SnapOptions{snap_tol, denom_bound}; }
  [[nodiscard]] bool structured() const { return format == "structured"; }
};

struct LoadedModel {
  std::string name;
  EmpiricalModel model;
};

LoadedModel load_model(const Options& opt) {
  if (opt.model.empty()) throw CLI::ValidationError("--model", "a model name or file is required");
  for (const auto& e : catalog()) {
    if (e.name == opt.model) return {e.name, e.model};
  }
  for (const auto& q : quantum_catalog()) {
    if (q.name == opt.model) return {q.name, quantum_to_empirical(q, opt.snap())};
  }
  if (!std::filesystem::exists(opt.model)) {
    throw IoError("'" + opt.model + "' is neither a catalog name nor a readable file (try catalog-list)");
  }
  const Document doc = load_document(opt.model);
  JsonReader in(doc);
  const std::string kind = in.kind();
  if (kind == "quantum_experiment") return {opt.model, quantum_to_empirical(experiment_from_json(doc), opt.snap())};
  if (kind != "empirical_model") {
    in.fail("/kind", "expected an empirical_model or quantum_experiment, got '" + kind + "'");
  }
  std::string name = opt.model;
  if (auto it = doc.json.find("name"); it != doc.json.end() && it->is_string()) name = it->get<std::string>();
  return {name, model_from_json(doc)};
}

// A standard padding: one point giving measurement 0 two outcomes, one point
// missing an outcome for the last measurement.
WpsRepresentation make_rep(const EmpiricalModel& model, const Options& opt) {
  if (!opt.padded) return build_combinatorial_rep(model, opt.limits());
  const auto& sc = model.scenario();
  const auto base = consistent_global_sections(model, opt.limits());
  const Section anchor = base.empty() ? sections_over(sc, sc.all_measurements(), opt.limits()).back() : base.front();
  std::vector<PadPoint> padding;
  if (sc.num_outcomes() >= 2) padding.push_back(contradictory_point(sc, 0, 0, 1, anchor, "pad.overlap"));
  padding.push_back(missing_point(sc, sc.num_measurements() - 1, anchor, "pad.missing"));
  return build_padded_rep(model, padding, opt.limits());
}

void emit(const Options& opt, const std::string& text, const Json& json) {
  if (opt.structured()) {
    std::cout << json.dump(2) << '\n';
  } else {
    std::cout << text;
  }
}

void write_out(const Options& opt, const Json& json) {
  if (opt.out.empty()) return;
  save_json(opt.out, json);
  if (!opt.structured()) std::cout << "wrote " << opt.out << '\n';
}

int run_catalog_list(const Options& opt) {
  Json list = Json::array();
  std::ostringstream text;
  for (const auto& e : catalog()) {
    text << std::left << std::setw(14) << e.name << std::setw(15) << to_string(e.expected_tier) << e.description
         << '\n';
    list.push_back(Json{{"name", e.name}, {"expected_tier", to_string(e.expected_tier)},
                        {"description", e.description}, {"provenance", e.provenance}});
  }
  for (const auto& q : quantum_catalog()) {
    text << std::left << std::setw(14) << q.name << std::setw(15) << "(quantum)"
         << "Born-rule experiment, " << q.projectors.size() << " projectors in dimension " << q.dimension() << '\n';
    list.push_back(Json{{"name", q.name}, {"kind", "quantum_experiment"}});
  }
  emit(opt, text.str(), list);
  return kOk;
}

int run_classify(const Options& opt) {
  const auto m = load_model(opt);
  const auto report = classification_report(m.model, m.name, opt.limits());
  const Json json = report_to_json(report);
  emit(opt, render_text(report), json);
  write_out(opt, json);
  return kOk;
}

int run_witness(const Options& opt) {
  const auto m = load_model(opt);
  const auto rep = make_rep(m.model, opt);
  std::vector<Tier> tiers;
  if (!opt.tier.empty()) {
    auto t = parse_tier(opt.tier);
    if (!t || *t == Tier::Noncontextual) throw CLI::ValidationError("--tier", "expected strong, logical or probabilistic");
    tiers.push_back(*t);
  } else {
    const Tier tier = classify(m.model, opt.limits()).tier;
    if (tier == Tier::Noncontextual) throw TierMismatch("model is noncontextual; there is no violation witness");
    for (Tier t : {Tier::Strong, Tier::Logical, Tier::Probabilistic}) {
      if (contextual_at(tier, t)) tiers.push_back(t);
    }
  }
  std::string text;
  Json all = Json::array();
  for (Tier t : tiers) {
    const auto w = theorem1_witness(rep, t, opt.limits());
    text += render_witness(rep, t, w);
    if (tiers.size() > 1) text += '\n';
    all.push_back(witness_to_json(rep, w));
  }
  const Json json = all.size() == 1 ? all[0] : all;
  emit(opt, text, json);
  write_out(opt, all[0]);
  return kOk;
}

int run_dutchbook(const Options& opt) {
  const auto m = load_model(opt);
  const auto rep = make_rep(m.model, opt);
  if (auto cert = find_dutch_book(rep)) {
    const Json json = certificate_to_json(rep, *cert);
    emit(opt, render_dutch_book(rep, *cert), json);
    write_out(opt, json);
    return kOk;
  }
  auto p = has_classical_extension(rep, opt.limits());
  if (!p) throw InternalError("no Dutch book but no classical extension either");
  const Json json = extension_to_json(rep, *p);
  emit(opt, "no Dutch book: mu extends to a probability measure on Y\n", json);
  write_out(opt, json);
  return kOk;
}

int run_verify(const Options& opt) {
  const Document doc = load_document(opt.file);
  JsonReader in(doc);
  const std::string kind = in.kind();
  std::vector<std::string> problems;
  std::string summary;
  if (kind == "empirical_model") {
    const auto model = model_from_json(doc);
    summary = "empirical model with " + std::to_string(model.tables().size()) + " compatible tables";
  } else if (kind == "quantum_experiment") {
    const auto model = quantum_to_empirical(experiment_from_json(doc), opt.snap());
    summary = "quantum experiment; snapped tables pass no-signaling, tier " + to_string(classify(model, opt.limits()).tier);
  } else if (kind == "dutch_book_certificate") {
    const auto f = certificate_from_json(doc, opt.limits());
    if (!verify_certificate(f.rep, f.certificate)) {
      const auto pay = payoffs(f.rep, f.certificate);
      for (std::size_t y = 0; y < pay.size(); ++y) {
        if (pay[y] > -f.certificate.loss_bound) {
          problems.push_back("payoff " + to_string(pay[y]) + " at " + f.rep.points()[y] + " exceeds -loss_bound");
        }
      }
      if (f.certificate.loss_bound <= 0) problems.push_back("loss_bound must be positive");
    }
    summary = "Dutch book over " + std::to_string(f.rep.num_points()) + " points, loss at least " +
              to_string(f.certificate.loss_bound);
  } else if (kind == "classical_extension") {
    const auto f = extension_from_json(doc, opt.limits());
    problems = check_extension_weights(f.rep, f.weights);
    summary = "classical extension agrees with mu on all " + std::to_string(f.rep.sigma().size()) + " events";
  } else if (kind == "violation_witness") {
    const auto f = witness_from_json(doc, opt.limits());
    problems = check_witness(f.rep, f.witness);
    summary = to_string(f.witness.kind) + " with " + std::to_string(f.witness.collection.size()) + " events";
  } else if (kind == "classification_report") {
    problems = verify_report(doc, opt.limits());
    summary = "classification report";
  } else {
    in.fail("/kind", "cannot verify documents of kind '" + kind + "'");
  }
  Json json{{"file", opt.file}, {"kind", kind}, {"ok", problems.empty()}, {"problems", problems}};
  std::string text;
  if (problems.empty()) {
    text = "OK: " + summary + '\n';
  } else {
    text = "FAILED: " + opt.file + '\n';
    for (const auto& p : problems) text += "  " + p + '\n';
  }
  emit(opt, text, json);
  return problems.empty() ? kOk : kInvalid;
}

int run_export(const Options& opt) {
  const auto m = load_model(opt);
  GraphExport g;
  if (opt.diagram == "bundle") {
    g = export_bundle_diagram(m.model, opt.limits());
  } else {
    g = export_nerve(make_rep(m.model, opt));
  }
  const std::string body = opt.structured() ? g.data.dump(2) + "\n" : g.dot;
  if (opt.out.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(opt.out, std::ios::binary);
    if (!out) throw IoError("cannot write '" + opt.out + "'");
    out << body;
  }
  return kOk;
}

int dispatch(CLI::App& app, const Options& opt) {
  const auto* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  if (name == "catalog-list") return run_catalog_list(opt);
  if (name == "classify") return run_classify(opt);
  if (name == "witness") return run_witness(opt);
  if (name == "dutchbook") return run_dutchbook(opt);
  if (name == "verify") return run_verify(opt);
  return run_export(opt);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contextuality, sheaf-model representations and Dutch books"};
  app.require_subcommand(1);
  Options opt;

  app.add_option("--cap", opt.cap, "enumeration cap")->capture_default_str();
  app.add_option("--snap-tol", opt.snap_tol, "tolerance when snapping Born-rule values")->capture_default_str();
  app.add_option("--denom-bound", opt.denom_bound, "largest denominator for snapped values")->capture_default_str();
  app.add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"text", "structured"}))
      ->capture_default_str();
  app.add_option("--out", opt.out, "write the result document here");
  app.fallthrough();

  auto model_arg = [&](CLI::App* sub) {
    auto* flag = sub->add_option("--model", opt.model, "catalog name or model file");
    sub->add_option("name_or_file", opt.model, "catalog name or model file")->excludes(flag);
  };

  app.add_subcommand("catalog-list", "list the built-in models");
  model_arg(app.add_subcommand("classify", "contextuality tier with the V_M and convexity verdicts"));
  auto* witness = app.add_subcommand("witness", "collections whose defect witnesses contextuality");
  model_arg(witness);
  witness->add_option("--tier", opt.tier, "strong, logical or probabilistic (default: every tier that applies)");
  witness->add_flag("--padded", opt.padded, "use a padded representation");
  auto* dutch = app.add_subcommand("dutchbook", "Dutch book certificate and payoff table");
  model_arg(dutch);
  dutch->add_flag("--padded", opt.padded, "use a padded representation");
  app.add_subcommand("verify", "re-check a saved model, certificate, extension, witness or report")
      ->add_option("file", opt.file, "document to check")
      ->required();
  auto* exp = app.add_subcommand("export", "bundle or nerve diagram as DOT (text) or JSON (structured)");
  exp->add_option("diagram", opt.diagram, "bundle or nerve")->required()->check(CLI::IsMember({"bundle", "nerve"}));
  model_arg(exp);
  exp->add_flag("--padded", opt.padded, "nerve of a padded representation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    return dispatch(app, opt);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << " (raise --cap)\n";
    return kCap;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  } catch (const ctxbook::Error& e) {
    std::cerr << "invalid: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
