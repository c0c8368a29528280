#pragma once

#include "ctxbook/empirical_model.hpp"
#include "ctxbook/limits.hpp"
#include "ctxbook/point_set.hpp"
#include "ctxbook/rational.hpp"
#include "ctxbook/section.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ctxbook {

using TransferMap = std::map<Section, PointSet>;

/// Point order of a combinatorial representation. The default lists global
/// sections in canonical order, one point each; a seed shuffles the points
/// and `copies` > 1 gives every global section several points.
struct CombinatorialLayout {
  std::optional<std::uint64_t> shuffle_seed;
  std::size_t copies = 1;

  friend bool operator==(const CombinatorialLayout&, const CombinatorialLayout&) = default;
};

/// An extra sample point for a padded representation. allowed[x] lists the
/// outcomes of measurement x whose events contain the point; it must name
/// zero or several outcomes for at least one measurement.
struct PadPoint {
  std::string label;
  std::vector<std::vector<std::size_t>> allowed;

  friend bool operator==(const PadPoint&, const PadPoint&) = default;
};

/// Point lying in both Ē(x↦o1) and Ē(x↦o2) and otherwise following `base`.
PadPoint contradictory_point(const Scenario& scenario, std::size_t x, std::size_t o1, std::size_t o2,
                             const Section& base, std::string label);
/// Point lying in no Ē(x↦o) and otherwise following `base`.
PadPoint missing_point(const Scenario& scenario, std::size_t x, const Section& base, std::string label);

struct RepOrigin {
  enum class Kind { Raw, Combinatorial, Padded };
  Kind kind = Kind::Raw;
  CombinatorialLayout layout;    // Combinatorial and Padded
  std::vector<PadPoint> padding;  // Padded
};

/// A weak probability space (Y, Σ, μ) with an event transfer map Ē defined on
/// every section over every subset of X.
class WpsRepresentation {
 public:
  /// Raw constructor; performs only shape checks (set universes, duplicate
  /// Σ members). Use verify_rep for the semantic conditions.
  WpsRepresentation(EmpiricalModel model, std::vector<std::string> points, TransferMap transfer,
                    std::vector<PointSet> sigma, std::vector<Rational> mu, bool combinatorial,
                    RepOrigin origin = {});

  [[nodiscard]] const EmpiricalModel& model() const noexcept { return model_; }
  [[nodiscard]] const Scenario& scenario() const noexcept { return model_.scenario(); }
  [[nodiscard]] const std::vector<std::string>& points() const noexcept { return points_; }
  [[nodiscard]] std::size_t num_points() const noexcept { return points_.size(); }
  [[nodiscard]] PointSet all_points() const { return PointSet::full(points_.size()); }
  [[nodiscard]] std::size_t point_index(const std::string& label) const;  // DomainError

  [[nodiscard]] const TransferMap& transfer_map() const noexcept { return transfer_; }
  /// Ē(s); throws DomainError if s has no image.
  [[nodiscard]] const PointSet& transfer(const Section& s) const;
  /// Ē(x↦o).
  [[nodiscard]] const PointSet& transfer(std::size_t x, std::size_t o) const;
  /// The section whose image is `event`, if any; the one with the largest
  /// domain when several share it.
  [[nodiscard]] std::optional<Section> preimage(const PointSet& event) const;

  /// Σ in PointSet order, with μ aligned.
  [[nodiscard]] const std::vector<PointSet>& sigma() const noexcept { return sigma_; }
  [[nodiscard]] const std::vector<Rational>& mu() const noexcept { return mu_; }
  [[nodiscard]] bool is_event(const PointSet& s) const { return find(s).has_value(); }
  [[nodiscard]] std::optional<std::size_t> find(const PointSet& s) const;
  /// μ(S); throws NotAnEvent when S is not in Σ.
  [[nodiscard]] const Rational& measure(const PointSet& s) const;

  [[nodiscard]] bool combinatorial() const noexcept { return combinatorial_; }
  [[nodiscard]] const RepOrigin& origin() const noexcept { return origin_; }

  friend bool operator==(const WpsRepresentation& a, const WpsRepresentation& b) {
    return a.model_ == b.model_ && a.points_ == b.points_ && a.transfer_ == b.transfer_ && a.sigma_ == b.sigma_ &&
           a.mu_ == b.mu_ && a.combinatorial_ == b.combinatorial_;
  }

 private:
  EmpiricalModel model_;
  std::vector<std::string> points_;
  TransferMap transfer_;
  std::vector<PointSet> sigma_;
  std::vector<Rational> mu_;
  bool combinatorial_ = false;
  RepOrigin origin_;
};

/// One point per global section (Y ≅ ε(X)), Σ the union of the algebras Σ_U
/// over all contexts, μ fixed by the tables. Verified before return.
/// Throws CapExceeded, InternalError.
WpsRepresentation build_combinatorial_rep(const EmpiricalModel& model, const Limits& limits = {},
                                          const CombinatorialLayout& layout = {});

/// The combinatorial representation plus measure-zero padding points.
/// Throws PaddingError naming the broken condition if the result does not
/// verify, or if a padding point is malformed.
WpsRepresentation build_padded_rep(const EmpiricalModel& model, const std::vector<PadPoint>& padding,
                                   const Limits& limits = {}, const CombinatorialLayout& layout = {});

/// Builds Σ and μ for given points: each point's allowed outcome sets per
/// measurement determine Ē, the algebras Σ_U follow, μ comes from the tables.
/// Shared by both builders; exposed for tests.
WpsRepresentation assemble_rep(const EmpiricalModel& model, std::vector<std::string> labels,
                               const std::vector<std::vector<std::vector<std::size_t>>>& allowed, bool combinatorial,
                               RepOrigin origin, const Limits& limits);

enum class Condition {
  Transfer,                // Ē defined on every section
  Injectivity,
  Intersection,            // Ē(s) = ∩ Ē(s|x)
  NonEmpty,
  Duality,                 // U ⊂ U′ gives Ē(s|U) ⊇ Ē(s)
  WeakClassicality,
  EmpiricalConsistency,
  MutualExclusivity,
  MarginalizationDual,     // Ē(s) = ∪ of Ē over extensions of s to a larger U′
  CompatibilityDual,       // extensions to C and C′ cover the same set
  StrongMutualExclusivity,
  Exhaustiveness,
};

std::string to_string(Condition condition);

struct RepFailure {
  Condition condition;
  std::string detail;
};

struct RepVerdict {
  std::vector<RepFailure> failures;
  std::vector<std::string> warnings;  // e.g. μ values outside [0, 1]

  [[nodiscard]] bool ok() const noexcept { return failures.empty(); }
  [[nodiscard]] bool has(Condition condition) const;
  [[nodiscard]] std::string describe() const;
};

/// Checks every structural and probabilistic condition of a representation,
/// including Strong Mutual Exclusivity and Exhaustiveness when the
/// representation claims to be combinatorial.
RepVerdict verify_rep(const WpsRepresentation& rep, const Limits& limits = {});

struct ExcisionReport {
  std::vector<PointSet> d1;  // nonempty Ē(x↦o) ∩ Ē(x↦o′), o ≠ o′
  std::vector<PointSet> d2;  // nonempty Y − ∪_o Ē(x↦o)
  PointSet z;                // Y − ∪(D1 ∪ D2)
  std::vector<std::pair<std::size_t, Section>> z_sections;  // z ∈ Ē(s_X)
  std::vector<std::string> problems;  // D1/D2 members not null Σ-events, points of Z without s_X

  [[nodiscard]] bool lemma_holds() const noexcept { return problems.empty(); }
};

ExcisionReport excise(const WpsRepresentation& rep);

/// Ē(s|U) for the section s with Ē(s) = event. Throws NotAnEvent when
/// `event` is not an image, DomainError unless U ⊆ domain(s).
PointSet extend_event(const WpsRepresentation& rep, const PointSet& event, const Context& u);

/// "{a=0,b=1; a=1,b=1}" style rendering of a point set.
std::string describe_points(const WpsRepresentation& rep, const PointSet& s);

}  // namespace ctxbook
