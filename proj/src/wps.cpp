#include "ctxbook/wps.hpp"

#include "ctxbook/errors.hpp"
#include "ctxbook/sampling.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <set>
#include <sstream>

namespace ctxbook {

namespace {

using Allowed = std::vector<std::vector<std::size_t>>;  // per measurement

std::vector<std::size_t> normalized(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

PadPoint following(const Scenario& scenario, const Section& base, std::string label) {
  if (base.domain() != scenario.all_measurements()) throw DomainError("padding base must be a global section");
  PadPoint p{std::move(label), {}};
  p.allowed.resize(scenario.num_measurements());
  for (std::size_t x = 0; x < scenario.num_measurements(); ++x) p.allowed[x] = {*base.value_of(x)};
  return p;
}

// Every subset of X as a Context, by bitmask.
std::vector<Context> all_subsets(std::size_t n) {
  std::vector<Context> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t x = 0; x < n; ++x) {
      if (mask >> x & 1U) idx.push_back(x);
    }
    out.emplace_back(std::move(idx));
  }
  return out;
}

void require_transfer_cap(const Scenario& scenario, const Limits& limits) {
  if (scenario.num_measurements() >= 63) throw CapExceeded("too many measurements to enumerate all sections");
  require_within_cap(saturating_pow(scenario.num_outcomes() + 1, scenario.num_measurements()), limits,
                     "sections over all subsets of X");
}

// Atoms of the algebra generated by {Ē(x↦o) : x ∈ U}: points grouped by the
// set of single-measurement events they lie in.
struct Atom {
  PointSet points;
  std::optional<Section> proper;  // the section when the point pattern is one outcome per measurement
};

std::vector<Atom> atoms_of(const WpsRepresentation& rep, const Context& u) {
  const auto& scenario = rep.scenario();
  const std::size_t k = scenario.num_outcomes();
  std::map<std::vector<std::vector<bool>>, PointSet> cells;
  std::vector<std::vector<const PointSet*>> singles;
  for (std::size_t x : u) {
    singles.emplace_back();
    for (std::size_t o = 0; o < k; ++o) singles.back().push_back(&rep.transfer(x, o));
  }
  for (std::size_t y = 0; y < rep.num_points(); ++y) {
    std::vector<std::vector<bool>> key(u.size(), std::vector<bool>(k));
    for (std::size_t i = 0; i < u.size(); ++i) {
      for (std::size_t o = 0; o < k; ++o) key[i][o] = singles[i][o]->contains(y);
    }
    auto it = cells.try_emplace(std::move(key), PointSet(rep.num_points())).first;
    it->second.insert(y);
  }
  std::vector<Atom> atoms;
  for (auto& [key, points] : cells) {
    Atom atom{points, std::nullopt};
    std::vector<std::size_t> values;
    for (const auto& row : key) {
      if (std::count(row.begin(), row.end(), true) != 1) break;
      values.push_back(static_cast<std::size_t>(std::find(row.begin(), row.end(), true) - row.begin()));
    }
    if (values.size() == u.size()) atom.proper = Section(u, std::move(values));
    atoms.push_back(std::move(atom));
  }
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.points < b.points; });
  return atoms;
}

// All 2^k unions of the atoms, indexed by bitmask.
std::vector<PointSet> unions_of(const std::vector<Atom>& atoms, std::size_t universe, const Limits& limits) {
  if (atoms.size() >= 63) throw CapExceeded("algebra has too many atoms");
  const std::size_t count = std::size_t{1} << atoms.size();
  require_within_cap(count, limits, "algebra members");
  std::vector<PointSet> out(count, PointSet(universe));
  for (std::size_t mask = 1; mask < count; ++mask) {
    const std::size_t low = static_cast<std::size_t>(std::countr_zero(mask));
    out[mask] = out[mask & (mask - 1)] | atoms[low].points;
  }
  return out;
}

}  // namespace

PadPoint contradictory_point(const Scenario& scenario, std::size_t x, std::size_t o1, std::size_t o2,
                             const Section& base, std::string label) {
  if (o1 == o2 || o1 >= scenario.num_outcomes() || o2 >= scenario.num_outcomes()) {
    throw DomainError("contradictory point needs two distinct outcomes");
  }
  PadPoint p = following(scenario, base, std::move(label));
  p.allowed.at(x) = normalized({o1, o2});
  return p;
}

PadPoint missing_point(const Scenario& scenario, std::size_t x, const Section& base, std::string label) {
  PadPoint p = following(scenario, base, std::move(label));
  p.allowed.at(x).clear();
  return p;
}

WpsRepresentation::WpsRepresentation(EmpiricalModel model, std::vector<std::string> points, TransferMap transfer,
                                     std::vector<PointSet> sigma, std::vector<Rational> mu, bool combinatorial,
                                     RepOrigin origin)
    : model_(std::move(model)),
      points_(std::move(points)),
      transfer_(std::move(transfer)),
      combinatorial_(combinatorial),
      origin_(std::move(origin)) {
  if (points_.empty()) throw ValidationError("sample space is empty");
  if (std::set<std::string>(points_.begin(), points_.end()).size() != points_.size()) {
    throw ValidationError("duplicate sample point labels");
  }
  for (const auto& [s, image] : transfer_) {
    if (image.universe() != points_.size()) throw ValidationError("transfer image over the wrong sample space");
  }
  if (sigma.size() != mu.size()) throw ValidationError("Σ and μ have different sizes");
  std::vector<std::size_t> order(sigma.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sigma[a] < sigma[b]; });
  for (std::size_t i : order) {
    if (sigma[i].universe() != points_.size()) throw ValidationError("Σ member over the wrong sample space");
    if (!sigma_.empty() && sigma_.back() == sigma[i]) {
      if (mu_.back() != mu[i]) throw ValidationError("Σ member listed twice with different μ");
      continue;
    }
    sigma_.push_back(std::move(sigma[i]));
    mu_.push_back(std::move(mu[i]));
  }
}

std::size_t WpsRepresentation::point_index(const std::string& label) const {
  auto it = std::find(points_.begin(), points_.end(), label);
  if (it == points_.end()) throw DomainError("unknown sample point '" + label + "'");
  return static_cast<std::size_t>(it - points_.begin());
}

const PointSet& WpsRepresentation::transfer(const Section& s) const {
  auto it = transfer_.find(s);
  if (it == transfer_.end()) throw DomainError("section " + to_string(scenario(), s) + " has no event image");
  return it->second;
}

const PointSet& WpsRepresentation::transfer(std::size_t x, std::size_t o) const {
  return transfer(Section(Context{x}, {o}));
}

std::optional<Section> WpsRepresentation::preimage(const PointSet& event) const {
  // Largest domain wins when images coincide across domains.
  std::optional<Section> found;
  for (const auto& [s, image] : transfer_) {
    if (image == event) found = s;
  }
  return found;
}

std::optional<std::size_t> WpsRepresentation::find(const PointSet& s) const {
  auto it = std::lower_bound(sigma_.begin(), sigma_.end(), s);
  if (it == sigma_.end() || *it != s) return std::nullopt;
  return static_cast<std::size_t>(it - sigma_.begin());
}

const Rational& WpsRepresentation::measure(const PointSet& s) const {
  auto i = find(s);
  if (!i) throw NotAnEvent("set " + describe_points(*this, s) + " is not in Σ");
  return mu_[*i];
}

WpsRepresentation assemble_rep(const EmpiricalModel& model, std::vector<std::string> labels,
                               const std::vector<Allowed>& allowed, bool combinatorial, RepOrigin origin,
                               const Limits& limits) {
  const Scenario& scenario = model.scenario();
  const std::size_t n = scenario.num_measurements();
  const std::size_t k = scenario.num_outcomes();
  const std::size_t size = labels.size();
  require_transfer_cap(scenario, limits);

  std::vector<std::vector<PointSet>> single(n, std::vector<PointSet>(k, PointSet(size)));
  for (std::size_t y = 0; y < size; ++y) {
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t o : allowed[y][x]) single[x][o].insert(y);
    }
  }

  TransferMap transfer;
  for (const auto& u : all_subsets(n)) {
    for (auto& s : sections_over(scenario, u, limits)) {
      PointSet image = PointSet::full(size);
      for (std::size_t i = 0; i < u.size(); ++i) image &= single[u.indices()[i]][s.values()[i]];
      transfer.emplace(std::move(s), std::move(image));
    }
  }

  // A provisional rep gives atoms_of access to the transfer map.
  WpsRepresentation shell(model, labels, transfer, {}, {}, combinatorial, origin);
  std::map<PointSet, Rational> measure;
  for (const auto& u : scenario.all_contexts()) {
    const auto atoms = atoms_of(shell, u);
    const Distribution marginal = model.marginal(u);
    std::vector<Rational> atom_mu;
    for (const auto& a : atoms) atom_mu.push_back(a.proper ? marginal.weight(scenario, *a.proper) : Rational(0));
    const auto members = unions_of(atoms, size, limits);
    std::vector<Rational> values(members.size());
    for (std::size_t mask = 1; mask < members.size(); ++mask) {
      values[mask] = values[mask & (mask - 1)] + atom_mu[static_cast<std::size_t>(std::countr_zero(mask))];
    }
    for (std::size_t mask = 0; mask < members.size(); ++mask) measure.try_emplace(members[mask], values[mask]);
  }

  std::vector<PointSet> sigma;
  std::vector<Rational> mu;
  for (auto& [set, value] : measure) {
    sigma.push_back(set);
    mu.push_back(value);
  }
  return WpsRepresentation(model, std::move(labels), std::move(transfer), std::move(sigma), std::move(mu),
                           combinatorial, std::move(origin));
}

namespace {

void combinatorial_points(const EmpiricalModel& model, const CombinatorialLayout& layout, const Limits& limits,
                          std::vector<std::string>& labels, std::vector<Allowed>& allowed) {
  const Scenario& scenario = model.scenario();
  if (layout.copies == 0) throw DomainError("layout needs at least one copy per global section");
  const auto globals = sections_over(scenario, scenario.all_measurements(), limits);
  require_within_cap(saturating_pow(globals.size(), 1) * layout.copies, limits, "combinatorial sample space");
  std::vector<std::pair<std::string, Allowed>> points;
  for (const auto& g : globals) {
    Allowed a(scenario.num_measurements());
    for (std::size_t x = 0; x < a.size(); ++x) a[x] = {g.values()[x]};
    for (std::size_t c = 0; c < layout.copies; ++c) {
      std::string label = to_string(scenario, g);
      if (layout.copies > 1) label += "#" + std::to_string(c + 1);
      points.emplace_back(std::move(label), a);
    }
  }
  if (layout.shuffle_seed) {
    std::mt19937_64 rng(*layout.shuffle_seed);
    seeded_shuffle(points, rng);
  }
  for (auto& [label, a] : points) {
    labels.push_back(std::move(label));
    allowed.push_back(std::move(a));
  }
}

}  // namespace

WpsRepresentation build_combinatorial_rep(const EmpiricalModel& model, const Limits& limits,
                                          const CombinatorialLayout& layout) {
  std::vector<std::string> labels;
  std::vector<Allowed> allowed;
  combinatorial_points(model, layout, limits, labels, allowed);
  RepOrigin origin{RepOrigin::Kind::Combinatorial, layout, {}};
  auto rep = assemble_rep(model, std::move(labels), allowed, true, std::move(origin), limits);
  if (auto verdict = verify_rep(rep, limits); !verdict.ok()) {
    throw InternalError("combinatorial representation failed verification: " + verdict.describe());
  }
  return rep;
}

WpsRepresentation build_padded_rep(const EmpiricalModel& model, const std::vector<PadPoint>& padding,
                                   const Limits& limits, const CombinatorialLayout& layout) {
  const Scenario& scenario = model.scenario();
  std::vector<std::string> labels;
  std::vector<Allowed> allowed;
  combinatorial_points(model, layout, limits, labels, allowed);
  std::vector<PadPoint> cleaned;
  for (const auto& p : padding) {
    if (p.label.empty()) throw PaddingError("padding point without a label");
    if (std::find(labels.begin(), labels.end(), p.label) != labels.end()) {
      throw PaddingError("padding point label '" + p.label + "' is already in use");
    }
    if (p.allowed.size() != scenario.num_measurements()) {
      throw PaddingError("padding point '" + p.label + "' must list outcomes for every measurement");
    }
    PadPoint q{p.label, {}};
    bool improper = false;
    for (const auto& outs : p.allowed) {
      auto norm = normalized(outs);
      for (std::size_t o : norm) {
        if (o >= scenario.num_outcomes()) throw PaddingError("padding point '" + p.label + "' names an unknown outcome");
      }
      improper = improper || norm.size() != 1;
      q.allowed.push_back(std::move(norm));
    }
    if (!improper) {
      throw PaddingError("padding point '" + p.label +
                         "' is a plain global section; it must sit in an overlap or in no event of some measurement");
    }
    labels.push_back(q.label);
    allowed.push_back(q.allowed);
    cleaned.push_back(std::move(q));
  }
  const bool combinatorial = cleaned.empty();
  RepOrigin origin{combinatorial ? RepOrigin::Kind::Combinatorial : RepOrigin::Kind::Padded, layout, cleaned};
  auto rep = assemble_rep(model, std::move(labels), allowed, combinatorial, std::move(origin), limits);
  if (auto verdict = verify_rep(rep, limits); !verdict.ok()) {
    const auto& f = verdict.failures.front();
    throw PaddingError("padding breaks " + to_string(f.condition) + ": " + f.detail);
  }
  return rep;
}

std::string to_string(Condition condition) {
  switch (condition) {
    case Condition::Transfer: return "transfer";
    case Condition::Injectivity: return "injectivity";
    case Condition::Intersection: return "intersection";
    case Condition::NonEmpty: return "non-emptiness";
    case Condition::Duality: return "duality";
    case Condition::WeakClassicality: return "WC";
    case Condition::EmpiricalConsistency: return "EC";
    case Condition::MutualExclusivity: return "ME";
    case Condition::MarginalizationDual: return "dual marginalization";
    case Condition::CompatibilityDual: return "dual compatibility";
    case Condition::StrongMutualExclusivity: return "strong mutual exclusivity";
    case Condition::Exhaustiveness: return "exhaustiveness";
  }
  return "unknown";
}

bool RepVerdict::has(Condition condition) const {
  return std::any_of(failures.begin(), failures.end(), [&](const RepFailure& f) { return f.condition == condition; });
}

std::string RepVerdict::describe() const {
  std::string out;
  for (const auto& f : failures) {
    if (!out.empty()) out += "; ";
    out += to_string(f.condition) + ": " + f.detail;
  }
  return out.empty() ? "ok" : out;
}

std::string describe_points(const WpsRepresentation& rep, const PointSet& s) {
  std::string out = "{";
  bool first = true;
  for (std::size_t y : s.members()) {
    if (!first) out += "; ";
    first = false;
    out += y < rep.num_points() ? rep.points()[y] : std::to_string(y);
  }
  return out + "}";
}

namespace {

class VerdictBuilder {
 public:
  explicit VerdictBuilder(RepVerdict& verdict) : verdict_(verdict) {}

  void fail(Condition c, std::string detail) {
    auto& n = counts_[c];
    if (++n <= kPerCondition) verdict_.failures.push_back({c, std::move(detail)});
  }

  void finish() {
    for (const auto& [c, n] : counts_) {
      if (n > kPerCondition) {
        verdict_.failures.push_back({c, std::to_string(n - kPerCondition) + " further failures not listed"});
      }
    }
  }

 private:
  static constexpr std::size_t kPerCondition = 8;
  RepVerdict& verdict_;
  std::map<Condition, std::size_t> counts_;
};

}  // namespace

RepVerdict verify_rep(const WpsRepresentation& rep, const Limits& limits) {
  RepVerdict verdict;
  VerdictBuilder out(verdict);
  const Scenario& scenario = rep.scenario();
  const std::size_t n = scenario.num_measurements();
  const std::size_t k = scenario.num_outcomes();
  const PointSet everything = rep.all_points();
  require_transfer_cap(scenario, limits);

  auto image = [&](const Section& s) -> const PointSet* {
    auto it = rep.transfer_map().find(s);
    return it == rep.transfer_map().end() ? nullptr : &it->second;
  };
  auto mu_of = [&](const PointSet& set) -> const Rational* {
    auto i = rep.find(set);
    return i ? &rep.mu()[*i] : nullptr;
  };
  auto name = [&](const Section& s) { return to_string(scenario, s); };

  // Transfer map: completeness, injectivity, intersections, non-emptiness, duality.
  // Injectivity is demanded within each ε(U): a one-outcome measurement x
  // forces Ē(x↦o) = Y = Ē(∅) under exhaustiveness.
  bool transfer_complete = true;
  for (const auto& u : all_subsets(n)) {
    std::map<PointSet, Section> seen;
    for (const auto& s : sections_over(scenario, u, limits)) {
      const PointSet* img = image(s);
      if (!img) {
        out.fail(Condition::Transfer, "no event image for " + name(s));
        transfer_complete = false;
        continue;
      }
      if (auto [it, fresh] = seen.emplace(*img, s); !fresh) {
        out.fail(Condition::Injectivity, name(it->second) + " and " + name(s) + " share an image");
      }
      if (img->empty()) out.fail(Condition::NonEmpty, "Ē(" + name(s) + ") is empty");
    }
  }
  if (!transfer_complete) {
    out.finish();
    return verdict;
  }
  for (const auto& [s, img] : rep.transfer_map()) {
    const auto& u = s.domain();
    PointSet meet = everything;
    for (std::size_t x : u) meet &= rep.transfer(x, *s.value_of(x));
    if (meet != img) out.fail(Condition::Intersection, "Ē(" + name(s) + ") is not the intersection of its singleton restrictions");
    for (std::size_t x : u) {
      std::vector<std::size_t> rest;
      for (std::size_t m : u) {
        if (m != x) rest.push_back(m);
      }
      const PointSet& larger = rep.transfer(restrict(s, Context(rest)));
      if (!img.is_subset_of(larger)) {
        out.fail(Condition::Duality, "Ē(" + name(s) + ") is not inside the image of its restriction dropping " +
                                         scenario.measurement(x));
      }
    }
  }

  // WC: each Σ_U is present in Σ and μ is a probability measure on it.
  std::vector<bool> covered(rep.sigma().size(), false);
  for (const auto& u : scenario.all_contexts()) {
    const auto atoms = atoms_of(rep, u);
    const auto members = unions_of(atoms, rep.num_points(), limits);
    std::vector<const Rational*> atom_mu;
    bool complete = true;
    for (std::size_t mask = 0; mask < members.size(); ++mask) {
      auto i = rep.find(members[mask]);
      if (!i) {
        out.fail(Condition::WeakClassicality, "Σ_{" + scenario.label(u) + "} member " +
                                                  describe_points(rep, members[mask]) + " is missing from Σ");
        complete = false;
        continue;
      }
      covered[*i] = true;
    }
    if (!complete) continue;
    const std::string where = "Σ_{" + scenario.label(u) + "}";
    if (!is_zero(rep.measure(members.front()))) out.fail(Condition::WeakClassicality, "μ(∅) ≠ 0");
    if (rep.measure(members.back()) != 1) out.fail(Condition::WeakClassicality, "μ(Y) = " + to_string(rep.measure(members.back())) + " on " + where);
    for (const auto& a : atoms) {
      if (rep.measure(a.points) < 0) {
        out.fail(Condition::WeakClassicality, "negative μ on atom " + describe_points(rep, a.points) + " of " + where);
      }
    }
    std::vector<Rational> sums(members.size());
    for (std::size_t mask = 1; mask < members.size(); ++mask) {
      const std::size_t low = static_cast<std::size_t>(std::countr_zero(mask));
      sums[mask] = sums[mask & (mask - 1)] + rep.measure(atoms[low].points);
      if (rep.measure(members[mask]) != sums[mask]) {
        out.fail(Condition::WeakClassicality, "μ is not additive on " + describe_points(rep, members[mask]) + " in " +
                                                  where + ": " + to_string(rep.measure(members[mask])) +
                                                  " vs atom sum " + to_string(sums[mask]));
      }
    }
  }
  for (std::size_t i = 0; i < covered.size(); ++i) {
    if (!covered[i]) {
      out.fail(Condition::WeakClassicality, "Σ member " + describe_points(rep, rep.sigma()[i]) + " lies in no Σ_U");
    }
  }

  // EC on every context below every maximal context.
  for (std::size_t c = 0; c < scenario.maximal_contexts().size(); ++c) {
    const auto& table = rep.model().table(c);
    for (const auto& u : subsets_of(scenario.maximal_contexts()[c])) {
      const auto marginal = marginalize(scenario, table, u);
      for (const auto& s : sections_over(scenario, u, limits)) {
        const Rational* m = mu_of(rep.transfer(s));
        if (!m) {
          out.fail(Condition::EmpiricalConsistency, "Ē(" + name(s) + ") is not in Σ");
        } else if (*m != marginal.weight(scenario, s)) {
          out.fail(Condition::EmpiricalConsistency, "μ(Ē(" + name(s) + ")) = " + to_string(*m) + " but e(" + name(s) +
                                                        ") = " + to_string(marginal.weight(scenario, s)));
        }
      }
    }
  }

  // ME: distinct same-context sections meet in a null set.
  for (const auto& u : scenario.all_contexts()) {
    const auto sections = sections_over(scenario, u, limits);
    for (std::size_t i = 0; i < sections.size(); ++i) {
      for (std::size_t j = i + 1; j < sections.size(); ++j) {
        const PointSet meet = rep.transfer(sections[i]) & rep.transfer(sections[j]);
        const Rational* m = mu_of(meet);
        if (!m || !is_zero(*m)) {
          out.fail(Condition::MutualExclusivity, "Ē(" + name(sections[i]) + ") ∩ Ē(" + name(sections[j]) + ") " +
                                                     (m ? "has μ = " + to_string(*m) : std::string("is not in Σ")));
        }
      }
    }
  }

  // Dual marginalization along chains U ⊆ U′ ⊆ C, dual compatibility across maximal pairs.
  auto pushed = [&](const Context& from, const Context& to, std::vector<Rational>& result) {
    // Σ of μ(Ē(t)) over t ∈ ε(from) grouped by t|to; false if some image is not in Σ.
    result.assign(saturating_pow(k, to.size()), Rational(0));
    const auto idx = restriction_indices(scenario, from, to);
    const auto sections = sections_over(scenario, from, limits);
    for (std::size_t t = 0; t < sections.size(); ++t) {
      const Rational* m = mu_of(rep.transfer(sections[t]));
      if (!m) return false;
      result[idx[t]] += *m;
    }
    return true;
  };
  std::set<std::pair<Context, Context>> chains;
  for (const auto& c : scenario.maximal_contexts()) {
    const auto subs = subsets_of(c);
    for (const auto& u : subs) {
      for (const auto& up : subs) {
        if (u.is_subset_of(up) && u != up) chains.emplace(u, up);
      }
    }
  }
  for (const auto& [u, up] : chains) {
    std::vector<Rational> direct, via;
    if (!pushed(u, u, direct) || !pushed(up, u, via)) continue;  // EC already reports missing events
    if (direct != via) {
      out.fail(Condition::MarginalizationDual, "μ on {" + scenario.label(up) + "} does not marginalize to μ on {" +
                                                   scenario.label(u) + "}");
    }
  }
  const auto& maximal = scenario.maximal_contexts();
  for (std::size_t i = 0; i < maximal.size(); ++i) {
    for (std::size_t j = i + 1; j < maximal.size(); ++j) {
      const Context w = maximal[i].intersection(maximal[j]);
      std::vector<Rational> left, right;
      if (!pushed(maximal[i], w, left) || !pushed(maximal[j], w, right)) continue;
      if (left != right) {
        out.fail(Condition::CompatibilityDual, "{" + scenario.label(maximal[i]) + "} and {" + scenario.label(maximal[j]) +
                                                   "} disagree on {" + scenario.label(w) + "}");
      }
    }
  }

  if (rep.combinatorial()) {
    for (std::size_t x = 0; x < n; ++x) {
      PointSet all(rep.num_points());
      for (std::size_t o = 0; o < k; ++o) {
        for (std::size_t o2 = o + 1; o2 < k; ++o2) {
          if (rep.transfer(x, o).intersects(rep.transfer(x, o2))) {
            out.fail(Condition::StrongMutualExclusivity, "Ē(" + scenario.measurement(x) + "=" + scenario.outcome(o) +
                                                             ") meets Ē(" + scenario.measurement(x) + "=" +
                                                             scenario.outcome(o2) + ")");
          }
        }
        all |= rep.transfer(x, o);
      }
      if (all != everything) {
        out.fail(Condition::Exhaustiveness, "points " + describe_points(rep, everything - all) +
                                                " have no outcome for " + scenario.measurement(x));
      }
    }
  }

  for (std::size_t i = 0; i < rep.sigma().size(); ++i) {
    if (rep.mu()[i] < 0 || rep.mu()[i] > 1) {
      verdict.warnings.push_back("μ(" + describe_points(rep, rep.sigma()[i]) + ") = " + to_string(rep.mu()[i]) +
                                 " lies outside [0, 1]");
    }
  }
  out.finish();
  return verdict;
}

ExcisionReport excise(const WpsRepresentation& rep) {
  const Scenario& scenario = rep.scenario();
  const std::size_t n = scenario.num_measurements();
  const std::size_t k = scenario.num_outcomes();
  ExcisionReport report;
  std::set<PointSet> d1, d2;
  for (std::size_t x = 0; x < n; ++x) {
    PointSet any(rep.num_points());
    for (std::size_t o = 0; o < k; ++o) {
      any |= rep.transfer(x, o);
      for (std::size_t o2 = o + 1; o2 < k; ++o2) {
        PointSet meet = rep.transfer(x, o) & rep.transfer(x, o2);
        if (!meet.empty()) d1.insert(std::move(meet));
      }
    }
    PointSet none = rep.all_points() - any;
    if (!none.empty()) d2.insert(std::move(none));
  }
  report.d1.assign(d1.begin(), d1.end());
  report.d2.assign(d2.begin(), d2.end());

  report.z = rep.all_points();
  for (const auto* family : {&report.d1, &report.d2}) {
    for (const auto& s : *family) {
      report.z -= s;
      auto i = rep.find(s);
      if (!i) {
        report.problems.push_back("excised set " + describe_points(rep, s) + " is not in Σ");
      } else if (!is_zero(rep.mu()[*i])) {
        report.problems.push_back("excised set " + describe_points(rep, s) + " has μ = " + to_string(rep.mu()[*i]));
      }
    }
  }

  const Context everything = scenario.all_measurements();
  for (std::size_t z : report.z.members()) {
    std::vector<std::size_t> values;
    for (std::size_t x = 0; x < n; ++x) {
      std::vector<std::size_t> hits;
      for (std::size_t o = 0; o < k; ++o) {
        if (rep.transfer(x, o).contains(z)) hits.push_back(o);
      }
      if (hits.size() != 1) {
        report.problems.push_back("point " + rep.points()[z] + " lies in " + std::to_string(hits.size()) +
                                  " outcome events of " + scenario.measurement(x));
        break;
      }
      values.push_back(hits.front());
    }
    if (values.size() != n) continue;
    Section global(everything, std::move(values));
    if (!rep.transfer(global).contains(z)) {
      report.problems.push_back("point " + rep.points()[z] + " is outside Ē(" + to_string(scenario, global) + ")");
      continue;
    }
    report.z_sections.emplace_back(z, std::move(global));
  }
  return report;
}

PointSet extend_event(const WpsRepresentation& rep, const PointSet& event, const Context& u) {
  auto s = rep.preimage(event);
  if (!s) throw NotAnEvent("set " + describe_points(rep, event) + " is not the image of a section");
  if (!u.is_subset_of(s->domain())) {
    throw DomainError("{" + rep.scenario().label(u) + "} is not inside the domain of " + to_string(rep.scenario(), *s));
  }
  return rep.transfer(restrict(*s, u));
}

}  // namespace ctxbook
