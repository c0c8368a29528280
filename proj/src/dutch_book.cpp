#include "ctxbook/dutch_book.hpp"

#include "ctxbook/errors.hpp"
#include "ctxbook/feasibility.hpp"
#include "ctxbook/violation.hpp"

#include <algorithm>
#include <set>

namespace ctxbook {

AtomicFunctional atomic_functional(const WpsRepresentation& rep, std::size_t point, std::span<const PointSet> events) {
  if (point >= rep.num_points()) throw DomainError("no such sample point");
  AtomicFunctional f{point, {}};
  for (const auto& e : events) f.values.push_back(e.contains(point) ? 1 : 0);
  return f;
}

std::optional<std::vector<Rational>> convexity_membership(const WpsRepresentation& rep,
                                                          std::span<const PointSet> restriction) {
  const std::size_t n = rep.num_points();
  LinearSystem system(n);
  for (const auto& a : restriction) {
    std::vector<Rational> row(n);
    for (std::size_t y : a.members()) row[y] = 1;
    system.add_row(std::move(row), rep.measure(a));
  }
  system.add_row(std::vector<Rational>(n, Rational(1)), Rational(1));
  auto solved = solve_feasibility(system);
  if (!solved.feasible()) return std::nullopt;
  return std::move(solved.solution);
}

std::vector<Rational> payoffs(const WpsRepresentation& rep, const DutchBookCertificate& certificate) {
  std::vector<Rational> out(rep.num_points());
  for (const auto& stake : certificate.stakes) {
    const Rational& m = rep.measure(stake.event);
    for (std::size_t y = 0; y < out.size(); ++y) {
      out[y] += stake.amount * ((stake.event.contains(y) ? Rational(1) : Rational(0)) - m);
    }
  }
  return out;
}

bool verify_certificate(const WpsRepresentation& rep, const DutchBookCertificate& certificate) {
  if (certificate.loss_bound <= 0) return false;
  const auto pay = payoffs(rep, certificate);
  return std::all_of(pay.begin(), pay.end(), [&](const Rational& p) { return p <= -certificate.loss_bound; });
}

namespace {

// Stakes −1 on null events that together cover Y.
std::optional<DutchBookCertificate> null_cover_book(const WpsRepresentation& rep) {
  std::set<PointSet> nulls;
  for (auto& s : vm_events(rep)) {
    if (is_zero(rep.measure(s))) nulls.insert(std::move(s));
  }
  const auto cut = excise(rep);
  for (const auto* family : {&cut.d1, &cut.d2}) {
    for (const auto& s : *family) {
      if (rep.is_event(s) && is_zero(rep.measure(s))) nulls.insert(s);
    }
  }
  PointSet covered(rep.num_points());
  for (const auto& s : nulls) covered |= s;
  if (covered != rep.all_points()) return std::nullopt;
  DutchBookCertificate cert;
  for (const auto& s : nulls) cert.stakes.push_back({s, Rational(-1)});
  const auto pay = payoffs(rep, cert);
  cert.loss_bound = -*std::max_element(pay.begin(), pay.end());
  return cert;
}

}  // namespace

std::optional<DutchBookCertificate> find_dutch_book(const WpsRepresentation& rep) {
  if (auto cover = null_cover_book(rep)) {
    if (!verify_certificate(rep, *cover)) throw InternalError("null-cover certificate failed verification");
    return cover;
  }
  const std::size_t n = rep.num_points();
  LinearSystem system(n);
  for (std::size_t i = 0; i < rep.sigma().size(); ++i) {
    std::vector<Rational> row(n);
    for (std::size_t y : rep.sigma()[i].members()) row[y] = 1;
    system.add_row(std::move(row), rep.mu()[i]);
  }
  system.add_row(std::vector<Rational>(n, Rational(1)), Rational(1));
  auto solved = solve_feasibility(system);
  if (solved.feasible()) return std::nullopt;

  // y^T A ≥ 0 and y^T b < 0; stakes s = −y on Σ give payoff ≤ y^T b at every point.
  DutchBookCertificate cert;
  const auto& y = solved.certificate->multipliers;
  for (std::size_t i = 0; i < rep.sigma().size(); ++i) {
    if (!is_zero(y[i])) cert.stakes.push_back({rep.sigma()[i], -y[i]});
  }
  const auto pay = payoffs(rep, cert);
  const Rational worst = -*std::max_element(pay.begin(), pay.end());
  if (worst <= 0) throw InternalError("dual certificate gives no guaranteed loss");
  for (auto& s : cert.stakes) s.amount /= worst;
  cert.loss_bound = 1;
  if (!verify_certificate(rep, cert)) throw InternalError("dual certificate failed verification");
  return cert;
}

AtomicFunctional section_to_functional(const WpsRepresentation& rep, const Section& global) {
  if (!rep.combinatorial()) throw NotCombinatorial("section_to_functional needs a combinatorial representation");
  const auto& sc = rep.scenario();
  if (global.domain() != sc.all_measurements()) throw DomainError("v is defined on global sections");
  const PointSet& image = rep.transfer(global);
  // In a combinatorial rep Ē(s_X) ⊆ S_C or is disjoint from it; a point decides.
  const std::size_t y = image.first();
  const auto events = vm_events(rep);
  AtomicFunctional f{y, {}};
  for (const auto& e : events) f.values.push_back(e.contains(y) ? 1 : 0);
  return f;
}

std::vector<Rational> distribution_to_convex_point(const WpsRepresentation& rep, const Distribution& global) {
  const auto& sc = rep.scenario();
  if (global.domain() != sc.all_measurements()) throw DomainError("d is defined on distributions over ε(X)");
  std::vector<Rational> point(vm_events(rep).size());
  for (std::size_t g : global.support()) {
    const auto v = section_to_functional(rep, section_at(sc, sc.all_measurements(), g));
    for (std::size_t i = 0; i < point.size(); ++i) {
      if (v.values[i]) point[i] += global.weight_at(g);
    }
  }
  return point;
}

ConvexityVerdict convexity_hierarchy(const WpsRepresentation& rep) {
  if (!rep.combinatorial()) throw NotCombinatorial("convexity_hierarchy needs a combinatorial representation");
  const auto events = vm_events(rep);
  ConvexityVerdict out;
  out.convex_weights = convexity_membership(rep, events);
  out.probabilistic_violation = !out.convex_weights;

  // χ_μ(S) = 1 iff μ(S) > 0.
  std::vector<std::uint8_t> chi;
  for (const auto& e : events) chi.push_back(rep.measure(e) > 0 ? 1 : 0);
  std::vector<std::uint8_t> boolean_sum(events.size(), 0);
  bool any_dominated = false;
  for (std::size_t y = 0; y < rep.num_points(); ++y) {
    const auto v = atomic_functional(rep, y, events);
    bool dominated = true;
    for (std::size_t i = 0; i < events.size() && dominated; ++i) dominated = v.values[i] <= chi[i];
    if (!dominated) continue;
    any_dominated = true;
    for (std::size_t i = 0; i < events.size(); ++i) boolean_sum[i] |= v.values[i];
  }
  out.strong_violation = !any_dominated;
  out.logical_violation = boolean_sum != chi;
  if (out.strong_violation && !out.logical_violation) throw InternalError("strong without logical convexity violation");
  if (out.logical_violation && !out.probabilistic_violation) {
    throw InternalError("logical without probabilistic convexity violation");
  }
  return out;
}

}  // namespace ctxbook
