#pragma once

#include "ctxbook/distribution.hpp"
#include "ctxbook/wps.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace ctxbook {

/// V_y restricted to a list of events: values[i] = 1 iff y ∈ events[i].
struct AtomicFunctional {
  std::size_t point = 0;
  std::vector<std::uint8_t> values;

  friend bool operator==(const AtomicFunctional&, const AtomicFunctional&) = default;
};

AtomicFunctional atomic_functional(const WpsRepresentation& rep, std::size_t point, std::span<const PointSet> events);

struct Stake {
  PointSet event;
  Rational amount;

  friend bool operator==(const Stake&, const Stake&) = default;
};

/// Stakes s over events with a guaranteed loss: for every y,
/// Σ s(A)·(V_y(A) − μ(A)) ≤ −loss_bound.
struct DutchBookCertificate {
  std::vector<Stake> stakes;
  Rational loss_bound;

  friend bool operator==(const DutchBookCertificate&, const DutchBookCertificate&) = default;
};

/// Weights w ≥ 0 on Y, Σw = 1, with Σ_y w_y V_y(A) = μ(A) for every A in
/// `restriction` (members must lie in Σ; NotAnEvent otherwise).
std::optional<std::vector<Rational>> convexity_membership(const WpsRepresentation& rep,
                                                          std::span<const PointSet> restriction);

/// A certificate when μ is not Σ-convex. A cover of Y by null events from
/// V_M and the excised sets gives stakes −1 each; otherwise the stakes come
/// from the dual of the membership system, scaled so the loss bound is 1.
std::optional<DutchBookCertificate> find_dutch_book(const WpsRepresentation& rep);

/// Payoff Σ s(A)·(V_y(A) − μ(A)) for every point y. Throws NotAnEvent for
/// a stake on a set outside Σ.
std::vector<Rational> payoffs(const WpsRepresentation& rep, const DutchBookCertificate& certificate);

/// Exhaustive check over Y: every payoff ≤ −loss_bound and loss_bound > 0.
bool verify_certificate(const WpsRepresentation& rep, const DutchBookCertificate& certificate);

/// v(s_X): V^{s_X}(S_C) = 1 iff S_X|^C = S_C, over vm_events order.
/// Throws NotCombinatorial, DomainError for a non-global section.
AtomicFunctional section_to_functional(const WpsRepresentation& rep, const Section& global);

/// d(e_X) = Σ e_X(s_X)·v(s_X), over vm_events order.
std::vector<Rational> distribution_to_convex_point(const WpsRepresentation& rep, const Distribution& global);

struct ConvexityVerdict {
  bool probabilistic_violation = false;
  bool logical_violation = false;
  bool strong_violation = false;
  std::optional<std::vector<Rational>> convex_weights;  // when V_M-convex
};

/// Convexity checks on V_M. Strong: no V_y|V_M is dominated by χ_μ|V_M.
/// Logical: χ_μ|V_M is not the Boolean sum of the V_y it dominates.
/// Throws NotCombinatorial.
ConvexityVerdict convexity_hierarchy(const WpsRepresentation& rep);

}  // namespace ctxbook
