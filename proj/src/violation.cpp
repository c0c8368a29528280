#include "ctxbook/violation.hpp"

#include "ctxbook/errors.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <random>
#include <set>

namespace ctxbook {

std::string to_string(WitnessKind kind) {
  switch (kind) {
    case WitnessKind::MaximalSubadditivity: return "maximal subadditivity violation";
    case WitnessKind::Subadditivity: return "subadditivity violation";
    case WitnessKind::MonotonicAdditivity: return "additivity violation in every monotonic extension";
  }
  return "?";
}

namespace {

std::vector<PointSet> distinct(std::span<const PointSet> collection) {
  std::set<PointSet> s(collection.begin(), collection.end());
  return {s.begin(), s.end()};
}

PointSet union_of(const WpsRepresentation& rep, std::span<const PointSet> collection) {
  PointSet u(rep.num_points());
  for (const auto& s : collection) u |= s;
  return u;
}

void require_combinatorial(const WpsRepresentation& rep, const char* what) {
  if (!rep.combinatorial()) throw NotCombinatorial(std::string(what) + " needs a combinatorial representation");
}

// Index of the first table row with a nonzero multiplier.
std::size_t canonical_row(const FarkasCertificate& cert, std::size_t table_rows) {
  for (std::size_t r = 0; r < table_rows; ++r) {
    if (!is_zero(cert.multipliers.at(r))) return r;
  }
  throw InternalError("certificate uses only the normalization row");
}

std::vector<PointSet> null_vm_events(const WpsRepresentation& rep) {
  std::vector<PointSet> out;
  for (auto& s : vm_events(rep)) {
    if (is_zero(rep.measure(s))) out.push_back(std::move(s));
  }
  return distinct(out);
}

}  // namespace

Rational defect(const WpsRepresentation& rep, std::span<const PointSet> collection) {
  const auto members = distinct(collection);
  Rational sum = 0;
  for (const auto& m : members) sum += rep.measure(m);
  const PointSet u = union_of(rep, members);
  if (!rep.is_event(u)) throw NotAnEvent("union " + describe_points(rep, u) + " is not μ-evaluable");
  return rep.measure(u) - sum;
}

std::vector<PointSet> vm_events(const WpsRepresentation& rep) {
  const auto& sc = rep.scenario();
  std::vector<PointSet> out;
  for (const auto& c : sc.maximal_contexts()) {
    for (const auto& s : sections_over(sc, c)) out.push_back(rep.transfer(s));
  }
  return out;
}

ViolationWitness theorem1_witness(const WpsRepresentation& rep, Tier tier, const Limits& limits) {
  const auto& model = rep.model();
  const auto& sc = rep.scenario();
  const auto verdict = classify(model, limits);
  if (tier == Tier::Noncontextual) throw TierMismatch("noncontextual models have no violation witness");
  if (!contextual_at(verdict.tier, tier)) {
    throw TierMismatch("model is " + to_string(verdict.tier) + ", not contextual at tier " + to_string(tier));
  }

  const auto cut = excise(rep);
  ViolationWitness w;

  if (tier == Tier::Probabilistic) {
    const auto gs = global_distribution_system(model, limits);
    auto solved = solve_feasibility(gs.system);
    if (solved.feasible()) throw InternalError("contextual model has a global distribution");
    const std::size_t row = canonical_row(*solved.certificate, gs.table_rows());
    const Section& target = gs.row_section[row];
    std::vector<PointSet> v;
    for (const auto& g : gs.globals) {
      if (restrict(g, target.domain()) != target) continue;
      PointSet t = cut.z & rep.transfer(g);
      if (!t.empty()) v.push_back(std::move(t));
    }
    w.kind = WitnessKind::MonotonicAdditivity;
    w.collection = distinct(v);
    w.context = gs.row_context[row];
    w.target = target;
    w.certificate = std::move(solved.certificate);
    try {
      w.defect = defect(rep, w.collection);
    } catch (const NotAnEvent&) {
    }
    return w;
  }

  std::vector<PointSet> v(cut.d1.begin(), cut.d1.end());
  v.insert(v.end(), cut.d2.begin(), cut.d2.end());
  const auto globals = sections_over(sc, sc.all_measurements(), limits);
  for (const auto& c : sc.maximal_contexts()) {
    for (const auto& s : sections_over(sc, c, limits)) {
      const PointSet& image = rep.transfer(s);
      if (!is_zero(rep.measure(image))) continue;
      const bool holds_global = std::any_of(globals.begin(), globals.end(), [&](const Section& g) {
        return rep.transfer(g).is_subset_of(image);
      });
      if (holds_global) v.push_back(image);  // D3
    }
  }

  if (tier == Tier::Strong) {
    w.kind = WitnessKind::MaximalSubadditivity;
    w.collection = distinct(v);
    w.defect = defect(rep, w.collection);
    if (*w.defect != 1) throw InternalError("V3 has defect " + to_string(*w.defect) + ", expected 1");
    return w;
  }

  const auto logical = is_logically_contextual(model, limits);
  const Section& target = *logical.witness;
  for (const auto& t : sections_over(sc, target.domain(), limits)) {
    if (t != target) v.push_back(rep.transfer(t));  // D4
  }
  w.kind = WitnessKind::Subadditivity;
  w.collection = distinct(v);
  w.context = sc.maximal_index(target.domain());
  w.target = target;
  w.defect = defect(rep, w.collection);
  if (*w.defect <= 0) throw InternalError("V4 has defect " + to_string(*w.defect));
  return w;
}

std::vector<std::string> check_witness(const WpsRepresentation& rep, const ViolationWitness& witness) {
  std::vector<std::string> problems;
  if (distinct(witness.collection) != witness.collection) problems.push_back("collection is not distinct and sorted");
  if (witness.kind != WitnessKind::MonotonicAdditivity) {
    for (const auto& s : witness.collection) {
      if (!rep.is_event(s)) problems.push_back("member " + describe_points(rep, s) + " is not in Σ");
    }
  }
  std::optional<Rational> recomputed;
  try {
    recomputed = defect(rep, witness.collection);
  } catch (const NotAnEvent&) {
  }
  if (recomputed != witness.defect) problems.push_back("stored defect does not match a recomputation");
  switch (witness.kind) {
    case WitnessKind::MaximalSubadditivity:
      if (recomputed != Rational(1)) problems.push_back("defect is not 1");
      break;
    case WitnessKind::Subadditivity:
      if (!recomputed || *recomputed <= 0) problems.push_back("defect is not positive");
      break;
    case WitnessKind::MonotonicAdditivity: {
      for (std::size_t i = 0; i < witness.collection.size(); ++i) {
        for (std::size_t j = i + 1; j < witness.collection.size(); ++j) {
          if (witness.collection[i].intersects(witness.collection[j])) problems.push_back("members are not disjoint");
        }
      }
      if (!witness.target || !witness.certificate) {
        problems.push_back("missing target or certificate");
        break;
      }
      if (!union_of(rep, witness.collection).is_subset_of(rep.transfer(*witness.target))) {
        problems.push_back("collection leaves S*");
      }
      const auto gs = global_distribution_system(rep.model());
      if (!certifies_infeasibility(gs.system, *witness.certificate)) {
        problems.push_back("certificate does not separate the marginal system");
      }
      break;
    }
  }
  return problems;
}

VmVerdict strong_vm_violation(const WpsRepresentation& rep) {
  require_combinatorial(rep, "strong_vm_violation");
  VmVerdict out;
  auto nulls = null_vm_events(rep);
  if (union_of(rep, nulls) == rep.all_points()) {
    out.violated = true;
    out.defect = defect(rep, nulls);
    out.witness = std::move(nulls);
  }
  return out;
}

VmVerdict logical_vm_violation(const WpsRepresentation& rep) {
  require_combinatorial(rep, "logical_vm_violation");
  const auto& sc = rep.scenario();
  const auto nulls = null_vm_events(rep);
  const PointSet covered = union_of(rep, nulls);
  VmVerdict out;
  const auto& contexts = sc.maximal_contexts();
  for (std::size_t c = 0; c < contexts.size(); ++c) {
    const auto sections = sections_over(sc, contexts[c]);
    for (const auto& s : sections) {
      const PointSet& image = rep.transfer(s);
      if (is_zero(rep.measure(image)) || !image.is_subset_of(covered)) continue;
      std::vector<PointSet> v = nulls;
      for (const auto& t : sections) {
        if (t != s) v.push_back(rep.transfer(t));
      }
      out.violated = true;
      out.witness = distinct(v);
      out.defect = defect(rep, out.witness);
      out.context = c;
      out.target = s;
      return out;
    }
  }
  return out;
}

VmSystem vm_system(const WpsRepresentation& rep, const Limits& limits) {
  const auto& sc = rep.scenario();
  VmSystem out;
  std::vector<const PointSet*> images;
  for (auto& g : sections_over(sc, sc.all_measurements(), limits)) {
    const PointSet& image = rep.transfer(g);
    if (image.empty()) continue;
    images.push_back(&image);
    out.globals.push_back(std::move(g));
  }
  const std::size_t n = images.size();
  out.system = LinearSystem(n);
  const auto& contexts = sc.maximal_contexts();
  for (std::size_t c = 0; c < contexts.size(); ++c) {
    for (auto& s : sections_over(sc, contexts[c], limits)) {
      const PointSet& event = rep.transfer(s);
      std::vector<Rational> row(n);
      for (std::size_t j = 0; j < n; ++j) {
        if (images[j]->is_subset_of(event)) row[j] = 1;
      }
      out.system.add_row(std::move(row), rep.measure(event));
      out.row_context.push_back(c);
      out.row_section.push_back(std::move(s));
    }
  }
  out.system.add_row(std::vector<Rational>(n, Rational(1)), Rational(1));
  return out;
}

VmVerdict vm_additivity_violation(const WpsRepresentation& rep, const Limits& limits) {
  require_combinatorial(rep, "vm_additivity_violation");
  const auto vs = vm_system(rep, limits);
  auto solved = solve_feasibility(vs.system);
  VmVerdict out;
  if (solved.feasible()) {
    out.distribution = std::move(solved.solution);
    return out;
  }
  const std::size_t row = canonical_row(*solved.certificate, vs.row_section.size());
  const PointSet& target = rep.transfer(vs.row_section[row]);
  for (const auto& g : vs.globals) {
    const PointSet& image = rep.transfer(g);
    if (image.is_subset_of(target)) out.witness.push_back(image);
  }
  out.witness = distinct(out.witness);
  out.violated = true;
  out.context = vs.row_context[row];
  out.target = vs.row_section[row];
  out.certificate = std::move(solved.certificate);
  return out;
}

std::vector<PointSet> generated_atoms(const WpsRepresentation& rep) {
  std::map<std::vector<bool>, PointSet> cells;
  const auto& sigma = rep.sigma();
  for (std::size_t y = 0; y < rep.num_points(); ++y) {
    std::vector<bool> key(sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) key[i] = sigma[i].contains(y);
    cells.try_emplace(std::move(key), PointSet(rep.num_points())).first->second.insert(y);
  }
  std::vector<PointSet> atoms;
  for (auto& [key, points] : cells) atoms.push_back(std::move(points));
  std::sort(atoms.begin(), atoms.end());
  return atoms;
}

std::optional<std::vector<Rational>> has_classical_extension(const WpsRepresentation& rep, const Limits& limits) {
  const auto atoms = generated_atoms(rep);
  require_within_cap(atoms.size() * rep.sigma().size(), limits, "classical extension system");
  LinearSystem system(atoms.size());
  for (std::size_t i = 0; i < rep.sigma().size(); ++i) {
    std::vector<Rational> row(atoms.size());
    for (std::size_t a = 0; a < atoms.size(); ++a) {
      if (atoms[a].is_subset_of(rep.sigma()[i])) row[a] = 1;
    }
    system.add_row(std::move(row), rep.mu()[i]);
  }
  system.add_row(std::vector<Rational>(atoms.size(), Rational(1)), Rational(1));
  auto solved = solve_feasibility(system);
  if (!solved.feasible()) return std::nullopt;
  std::vector<Rational> p(rep.num_points());
  for (std::size_t a = 0; a < atoms.size(); ++a) p[atoms[a].first()] = (*solved.solution)[a];
  return p;
}

std::uint64_t Extension::mask_of(const PointSet& set) const {
  std::uint64_t mask = 0;
  for (std::size_t a = 0; a < atoms.size(); ++a) {
    if (atoms[a].is_subset_of(set)) {
      mask |= std::uint64_t{1} << a;
    } else if (atoms[a].intersects(set)) {
      throw NotAnEvent("set is not in the algebra generated by Σ");
    }
  }
  return mask;
}

namespace {

std::size_t algebra_size(std::size_t atoms, const Limits& limits) {
  if (atoms >= 63) throw CapExceeded("generated algebra has too many atoms");
  const std::size_t count = std::size_t{1} << atoms;
  require_within_cap(count, limits, "generated algebra");
  return count;
}

PointSet atoms_union(const Extension& ext, std::uint64_t mask, std::size_t universe) {
  PointSet u(universe);
  for (std::size_t a = 0; a < ext.atoms.size(); ++a) {
    if (mask >> a & 1U) u |= ext.atoms[a];
  }
  return u;
}

}  // namespace

ExtensionVerdict verify_extension(const WpsRepresentation& rep, const Extension& candidate, ExtensionKind kind) {
  ExtensionVerdict out;
  if (candidate.atoms != generated_atoms(rep)) {
    out.failure = "not an extension: atoms differ from those of the algebra generated by Σ";
    return out;
  }
  const std::size_t k = candidate.atoms.size();
  if (k >= 63 || candidate.values.size() != (std::size_t{1} << k)) {
    out.failure = "not an extension: expected one value per member of the generated algebra";
    return out;
  }
  for (std::size_t i = 0; i < rep.sigma().size(); ++i) {
    if (candidate.value(rep.sigma()[i]) != rep.mu()[i]) {
      out.failure = "not an extension: differs from μ on " + describe_points(rep, rep.sigma()[i]);
      return out;
    }
  }
  out.is_extension = true;
  const auto& v = candidate.values;
  const std::uint64_t full = (std::uint64_t{1} << k) - 1;
  if (kind == ExtensionKind::Monotonic) {
    for (std::uint64_t m = 0; m <= full; ++m) {
      for (std::size_t a = 0; a < k; ++a) {
        const std::uint64_t up = m | (std::uint64_t{1} << a);
        if (up != m && v[up] < v[m]) {
          out.failure = "not monotone: μ′" + describe_points(rep, atoms_union(candidate, m, rep.num_points())) +
                        " = " + to_string(v[m]) + " exceeds μ′ of its superset " +
                        describe_points(rep, atoms_union(candidate, up, rep.num_points()));
          return out;
        }
      }
    }
  } else {
    if (!is_zero(v[0]) || v[full] != 1) {
      out.failure = "not normalized";
      return out;
    }
    for (std::size_t a = 0; a < k; ++a) {
      if (v[std::uint64_t{1} << a] < 0) {
        out.failure = "negative on atom " + describe_points(rep, candidate.atoms[a]);
        return out;
      }
    }
    for (std::uint64_t m = 1; m <= full; ++m) {
      const std::uint64_t low = m & (~m + 1);
      if (v[m] != v[m & (m - 1)] + v[low]) {
        out.failure = "not additive on " + describe_points(rep, atoms_union(candidate, m, rep.num_points()));
        return out;
      }
    }
  }
  out.ok = true;
  return out;
}

Extension classical_extension(const WpsRepresentation& rep, std::span<const Rational> p, const Limits& limits) {
  Extension ext;
  ext.atoms = generated_atoms(rep);
  const std::size_t count = algebra_size(ext.atoms.size(), limits);
  std::vector<Rational> atom_mass(ext.atoms.size());
  for (std::size_t a = 0; a < ext.atoms.size(); ++a) {
    for (std::size_t y : ext.atoms[a].members()) atom_mass[a] += p[y];
  }
  ext.values.assign(count, Rational(0));
  for (std::size_t m = 1; m < count; ++m) {
    ext.values[m] = ext.values[m & (m - 1)] + atom_mass[static_cast<std::size_t>(std::countr_zero(m))];
  }
  return ext;
}

std::vector<Extension> sample_monotonic_extensions(const WpsRepresentation& rep, std::size_t count,
                                                   std::uint64_t seed, const Limits& limits) {
  Extension base;
  base.atoms = generated_atoms(rep);
  const std::size_t k = base.atoms.size();
  const std::size_t size = algebra_size(k, limits);

  std::vector<std::optional<Rational>> direct(size);
  for (std::size_t i = 0; i < rep.sigma().size(); ++i) direct[base.mask_of(rep.sigma()[i])] = rep.mu()[i];

  // inner: best Σ-member below; outer: best Σ-member above (subset-sum style sweeps).
  std::vector<std::optional<Rational>> inner = direct, outer = direct;
  for (std::size_t a = 0; a < k; ++a) {
    const std::size_t bit = std::size_t{1} << a;
    for (std::size_t m = 0; m < size; ++m) {
      if (m & bit) {
        const auto& below = inner[m ^ bit];
        if (below && (!inner[m] || *below > *inner[m])) inner[m] = below;
      }
    }
    for (std::size_t m = size; m-- > 0;) {
      if (!(m & bit)) {
        const auto& above = outer[m | bit];
        if (above && (!outer[m] || *above < *outer[m])) outer[m] = above;
      }
    }
  }

  std::mt19937_64 rng(seed);
  std::vector<Extension> out;
  for (std::size_t i = 0; i < count; ++i) {
    const Rational lambda(static_cast<long>(rng() % 17), 16);
    Extension ext;
    ext.atoms = base.atoms;
    ext.values.resize(size);
    for (std::size_t m = 0; m < size; ++m) {
      if (direct[m]) {
        ext.values[m] = *direct[m];
      } else {
        const Rational lo = inner[m].value_or(Rational(0));
        const Rational hi = outer[m].value_or(Rational(1));
        ext.values[m] = lambda * lo + (1 - lambda) * hi;
      }
    }
    out.push_back(std::move(ext));
  }
  return out;
}

Rational extension_defect(const Extension& ext, std::span<const PointSet> collection) {
  const auto members = distinct(collection);
  if (members.empty()) return 0;
  Rational sum = 0;
  PointSet u(members.front().universe());
  for (const auto& m : members) {
    sum += ext.value(m);
    u |= m;
  }
  return ext.value(u) - sum;
}

std::optional<ViolationWitness> additivity_violation_in(const WpsRepresentation& rep, const Extension& ext) {
  const auto& sc = rep.scenario();
  const auto cut = excise(rep);
  const auto globals = sections_over(sc, sc.all_measurements());
  const auto& contexts = sc.maximal_contexts();
  for (std::size_t c = 0; c < contexts.size(); ++c) {
    for (const auto& s : sections_over(sc, contexts[c])) {
      std::vector<PointSet> v;
      for (const auto& g : globals) {
        if (restrict(g, contexts[c]) != s) continue;
        PointSet t = cut.z & rep.transfer(g);
        if (!t.empty()) v.push_back(std::move(t));
      }
      const Rational d = extension_defect(ext, v);
      if (!is_zero(d)) {
        ViolationWitness w;
        w.kind = WitnessKind::MonotonicAdditivity;
        w.collection = distinct(v);
        w.defect = d;
        w.context = c;
        w.target = s;
        return w;
      }
    }
  }
  const std::size_t k = ext.atoms.size();
  const std::uint64_t full = (std::uint64_t{1} << k) - 1;
  for (std::uint64_t m = 1; m <= full; ++m) {
    for (std::size_t a = 0; a < k; ++a) {
      const std::uint64_t bit = std::uint64_t{1} << a;
      if (m & bit) continue;
      const Rational d = ext.values[m | bit] - ext.values[m] - ext.values[bit];
      if (!is_zero(d)) {
        ViolationWitness w;
        w.kind = WitnessKind::MonotonicAdditivity;
        w.collection = distinct(std::vector<PointSet>{atoms_union(ext, m, rep.num_points()), ext.atoms[a]});
        w.defect = d;
        return w;
      }
    }
  }
  return std::nullopt;
}

}  // namespace ctxbook
