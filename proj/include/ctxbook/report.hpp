#pragma once

#include "ctxbook/classifier.hpp"
#include "ctxbook/dutch_book.hpp"
#include "ctxbook/io.hpp"
#include "ctxbook/violation.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ctxbook {

/// Tier verdict next to the V_M violations and the convexity checks, all on
/// the combinatorial representation.
struct ClassificationReport {
  std::string name;
  EmpiricalModel model;
  TierVerdict verdict;
  bool strong_vm = false;
  bool logical_vm = false;
  bool additivity_vm = false;
  ConvexityVerdict convexity;
  bool dutch_bookable = false;
};

ClassificationReport classification_report(const EmpiricalModel& model, std::string name = "",
                                           const Limits& limits = {});

/// Two tables, contextuality hierarchy over Dutch-book hierarchy, one
/// column per tier.
std::string render_text(const ClassificationReport& report);
Json report_to_json(const ClassificationReport& report);
/// Recomputes every verdict in a classification_report document; returns the
/// disagreements.
std::vector<std::string> verify_report(const Document& doc, const Limits& limits = {});

/// Checks that p is a distribution on Y with p(A) = μ(A) for every A ∈ Σ.
std::vector<std::string> check_extension_weights(const WpsRepresentation& rep, const std::vector<Rational>& p);

/// Ē(s) when the event is the image of a section, else its point labels.
std::string event_name(const WpsRepresentation& rep, const PointSet& event);

std::string render_witness(const WpsRepresentation& rep, Tier tier, const ViolationWitness& witness);
/// Stakes, loss bound, and the payoff of every point (worst case first).
std::string render_dutch_book(const WpsRepresentation& rep, const DutchBookCertificate& certificate);

}  // namespace ctxbook
