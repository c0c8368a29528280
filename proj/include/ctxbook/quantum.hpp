#pragma once

#include "ctxbook/empirical_model.hpp"
#include "ctxbook/wps.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ctxbook {

struct LabeledProjector {
  std::string label;
  Eigen::MatrixXcd matrix;
};

/// (H, psi, O_n): a pure state and a list of labeled projectors, each read as
/// a two-outcome measurement (outcome "1" is the projector, "0" its
/// complement).
struct QuantumExperiment {
  std::string name;
  Eigen::VectorXcd state;
  std::vector<LabeledProjector> projectors;

  [[nodiscard]] std::size_t dimension() const { return static_cast<std::size_t>(state.size()); }
};

struct SnapOptions {
  double tolerance = 1e-9;
  std::int64_t denominator_bound = 4096;
};

/// Throws ValidationError when psi is not a unit vector or some matrix is not
/// a Hermitian idempotent of the right size (within `tolerance`).
void validate_experiment(const QuantumExperiment& q, double tolerance = 1e-9);

/// Closest rational with denominator at most the bound, if it lies within the
/// tolerance.
std::optional<Rational> snap(double value, const SnapOptions& options = {});

/// Measurements are the projector labels in order, O = {0, 1}, and M holds
/// the maximal sets of pairwise commuting projectors.
Scenario quantum_scenario(const QuantumExperiment& q, double tolerance = 1e-9);

/// Born-rule probabilities before snapping, per maximal context.
std::vector<std::vector<double>> born_tables(const QuantumExperiment& q, const Scenario& scenario);

/// Born-rule tables snapped to exact rationals. Throws ValidationError when a
/// value has no rational within tolerance or a snapped table does not sum to
/// 1, NoSignalingViolation when the snapped tables disagree on overlaps.
EmpiricalModel quantum_to_empirical(const QuantumExperiment& q, const SnapOptions& options = {});

/// Singlet state with spin projectors in the x-z plane at a=0, b=pi,
/// a'=pi/3, b'=2pi/3; reproduces the catalog Bell model.
QuantumExperiment singlet_experiment();
/// GHZ state (|000> + |111>)/sqrt2 with X and Y projectors (I + sigma)/2.
QuantumExperiment ghz_experiment();
/// Catalog of experiments: "bell-quantum", "ghz-quantum".
std::vector<QuantumExperiment> quantum_catalog();
/// Throws DomainError for unknown names.
QuantumExperiment quantum_entry(const std::string& name);

struct WeakHvReport {
  std::vector<std::string> mismatches;
  [[nodiscard]] bool ok() const noexcept { return mismatches.empty(); }
};

/// Checks that rep is a weak hidden variable representation of q:
/// μ(E′(P)) matches ⟨ψ,Pψ⟩, orthogonal projectors have null intersections,
/// and orthogonal families summing to the identity (including {P, I−P}) carry
/// total measure 1.
WeakHvReport is_weak_hv_representation(const WpsRepresentation& rep, const QuantumExperiment& q,
                                       const SnapOptions& options = {});

}  // namespace ctxbook
