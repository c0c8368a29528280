#pragma once

#include "ctxbook/dutch_book.hpp"
#include "ctxbook/errors.hpp"
#include "ctxbook/quantum.hpp"
#include "ctxbook/violation.hpp"
#include "ctxbook/wps.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace ctxbook {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// A malformed document. line() is 0 when no position is known.
class SchemaError : public ParseError {
 public:
  SchemaError(const std::string& what, std::size_t line, std::string path)
      : ParseError(what), line_(line), path_(std::move(path)) {}
  [[nodiscard]] std::size_t line() const noexcept { return line_; }
  [[nodiscard]] const std::string& path() const noexcept { return path_; }

 private:
  std::size_t line_;
  std::string path_;
};

/// Unreadable or unwritable file.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Parsed JSON plus the raw text, kept for line diagnostics.
struct Document {
  Json json;
  std::string source;
  std::string text;
};

/// Throws SchemaError (with line and column) on invalid JSON.
Document parse_document(std::string text, std::string source = "<input>");
/// Throws IoError, SchemaError.
Document load_document(const std::filesystem::path& path);
/// Writes `json` with two-space indentation and a trailing newline.
void save_json(const std::filesystem::path& path, const Json& json);

/// Typed access into a document; every failure names the JSON path and the
/// line where the offending field starts.
class JsonReader {
 public:
  explicit JsonReader(const Document& doc) : doc_(&doc) {}

  [[noreturn]] void fail(const std::string& path, const std::string& message) const;
  [[nodiscard]] std::size_t line_of(const std::string& path) const;

  const Json& field(const Json& object, const std::string& path, const char* key) const;
  [[nodiscard]] const Json* optional_field(const Json& object, const std::string& path, const char* key) const;
  const Json& object(const Json& node, const std::string& path) const;
  const Json& array(const Json& node, const std::string& path) const;
  std::string string(const Json& node, const std::string& path) const;
  std::vector<std::string> strings(const Json& node, const std::string& path) const;
  Rational rational(const Json& node, const std::string& path) const;
  std::uint64_t unsigned_integer(const Json& node, const std::string& path) const;
  bool boolean(const Json& node, const std::string& path) const;

  /// Checks schema_version and kind; returns the kind.
  std::string kind() const;
  void expect_kind(std::string_view expected) const;

  [[nodiscard]] const Document& document() const noexcept { return *doc_; }

 private:
  const Document* doc_;
};

/// "/a/b" style child path.
std::string child_path(const std::string& path, std::string_view key);
std::string child_path(const std::string& path, std::size_t index);

// Model files: scenario{measurements, outcomes, maximal_contexts} and
// tables{context -> section -> "p/q"}. Omitted sections have weight 0.
Json scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const JsonReader& in, const Json& node, const std::string& path);
/// The scenario and tables only, for embedding.
Json model_body_to_json(const EmpiricalModel& model);
/// Throws SchemaError; NoSignalingViolation when the tables disagree.
EmpiricalModel model_body_from_json(const JsonReader& in, const Json& node, const std::string& path);
Json model_to_json(const EmpiricalModel& model, std::string_view name = "");
EmpiricalModel model_from_json(const Document& doc);

Json experiment_to_json(const QuantumExperiment& q);
QuantumExperiment experiment_from_json(const Document& doc);

/// How to rebuild a representation: {"type": "combinatorial" | "padded", ...}.
/// Throws DomainError for raw representations.
Json representation_to_json(const WpsRepresentation& rep);
WpsRepresentation representation_from_json(const JsonReader& in, const Json& node, const std::string& path,
                                           const EmpiricalModel& model, const Limits& limits = {});

/// Point labels, in point order.
Json event_to_json(const WpsRepresentation& rep, const PointSet& event);
PointSet event_from_json(const JsonReader& in, const Json& node, const std::string& path,
                         const WpsRepresentation& rep);

struct CertificateFile {
  WpsRepresentation rep;
  DutchBookCertificate certificate;
};
Json certificate_to_json(const WpsRepresentation& rep, const DutchBookCertificate& certificate);
CertificateFile certificate_from_json(const Document& doc, const Limits& limits = {});

struct ExtensionFile {
  WpsRepresentation rep;
  std::vector<Rational> weights;  // per point
};
/// A classical extension recorded by its point distribution.
Json extension_to_json(const WpsRepresentation& rep, const std::vector<Rational>& weights);
ExtensionFile extension_from_json(const Document& doc, const Limits& limits = {});

struct WitnessFile {
  WpsRepresentation rep;
  ViolationWitness witness;
};
Json witness_to_json(const WpsRepresentation& rep, const ViolationWitness& witness);
WitnessFile witness_from_json(const Document& doc, const Limits& limits = {});

}  // namespace ctxbook
