#pragma once

#include "ctxbook/classifier.hpp"
#include "ctxbook/feasibility.hpp"
#include "ctxbook/wps.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ctxbook {

enum class WitnessKind { MaximalSubadditivity, Subadditivity, MonotonicAdditivity };

std::string to_string(WitnessKind kind);

struct ViolationWitness {
  WitnessKind kind = WitnessKind::Subadditivity;
  std::vector<PointSet> collection;  // distinct, in PointSet order
  /// 𝔞(V) under μ; absent when V or its union leaves Σ (the additivity
  /// witness, whose defect depends on the extension).
  std::optional<Rational> defect;
  std::optional<std::size_t> context;  // maximal-context index of C*
  std::optional<Section> target;       // s* with S* = Ē(s*)
  std::optional<FarkasCertificate> certificate;  // rows of the marginal system
};

/// 𝔞(V) = μ(∪V) − Σ μ(a). Throws NotAnEvent when a member or the union is
/// not in Σ. Duplicate members count once.
Rational defect(const WpsRepresentation& rep, std::span<const PointSet> collection);

/// V_M = {Ē(s_C) : C maximal, s_C ∈ ε(C)}, contexts in scenario order.
std::vector<PointSet> vm_events(const WpsRepresentation& rep);

/// The collections V3 (Strong), V4 (Logical) and V (Probabilistic) whose
/// defect certifies contextuality at that tier. Throws TierMismatch when the
/// model is not contextual at the requested tier, InternalError if a
/// constructed witness fails.
ViolationWitness theorem1_witness(const WpsRepresentation& rep, Tier tier, const Limits& limits = {});

/// Recomputes everything a witness claims; returns the problems found.
std::vector<std::string> check_witness(const WpsRepresentation& rep, const ViolationWitness& witness);

struct VmVerdict {
  bool violated = false;
  std::vector<PointSet> witness;
  std::optional<Rational> defect;
  std::optional<std::size_t> context;                // additive cover A = ε†(C)
  std::optional<Section> target;
  std::optional<FarkasCertificate> certificate;      // additivity check only
  std::optional<std::vector<Rational>> distribution;  // additivity check, when none is violated
};

/// The null members of V_M cover Y. Throws NotCombinatorial.
VmVerdict strong_vm_violation(const WpsRepresentation& rep);
/// Some S_C with μ(S_C) > 0 lies inside the union of the null members of
/// V_M. Throws NotCombinatorial.
VmVerdict logical_vm_violation(const WpsRepresentation& rep);

/// Marginal system read off the representation: one variable per nonempty
/// Ē(s_X), one row per member of V_M, then normalization.
struct VmSystem {
  LinearSystem system;
  std::vector<Section> globals;       // variable order
  std::vector<std::size_t> row_context;
  std::vector<Section> row_section;
};
VmSystem vm_system(const WpsRepresentation& rep, const Limits& limits = {});

/// Every monotonic extension breaks additivity on a disjoint family from the
/// algebra generated by V_M; decided by the system above. Throws
/// NotCombinatorial.
VmVerdict vm_additivity_violation(const WpsRepresentation& rep, const Limits& limits = {});

/// A probability distribution p on Y with p(A) = μ(A) for all A ∈ Σ, if any.
std::optional<std::vector<Rational>> has_classical_extension(const WpsRepresentation& rep, const Limits& limits = {});

/// Atoms of the algebra generated by Σ, in PointSet order.
std::vector<PointSet> generated_atoms(const WpsRepresentation& rep);

/// A set function on the algebra generated by Σ; values[mask] belongs to the
/// union of the atoms named by the bits of mask.
struct Extension {
  std::vector<PointSet> atoms;
  std::vector<Rational> values;

  /// Throws NotAnEvent unless `set` is a union of atoms.
  [[nodiscard]] std::uint64_t mask_of(const PointSet& set) const;
  [[nodiscard]] const Rational& value(const PointSet& set) const { return values.at(mask_of(set)); }
};

enum class ExtensionKind { Monotonic, Classical };

struct ExtensionVerdict {
  bool is_extension = false;  // defined on the generated algebra and equal to μ on Σ
  bool ok = false;            // and monotone / additive as requested
  std::string failure;        // first problem found
};

ExtensionVerdict verify_extension(const WpsRepresentation& rep, const Extension& candidate, ExtensionKind kind);

/// The probability measure induced by a point distribution.
Extension classical_extension(const WpsRepresentation& rep, std::span<const Rational> p, const Limits& limits = {});

/// Monotonic extensions μ′(A) = λ·inner(A) + (1−λ)·outer(A) off Σ, with
/// inner/outer the largest/smallest μ of a Σ-member inside/around A and λ
/// drawn from {0, 1/16, ..., 1}. Throws CapExceeded for large algebras.
std::vector<Extension> sample_monotonic_extensions(const WpsRepresentation& rep, std::size_t count,
                                                   std::uint64_t seed, const Limits& limits = {});

/// 𝔞(V) evaluated with an extension.
Rational extension_defect(const Extension& ext, std::span<const PointSet> collection);

/// A disjoint family on which `ext` is not additive: first the collections
/// {S̃_X : S_X|^C = S*} over every (C, S*), then pairs of atom unions.
std::optional<ViolationWitness> additivity_violation_in(const WpsRepresentation& rep, const Extension& ext);

}  // namespace ctxbook
