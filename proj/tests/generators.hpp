#pragma once

// Hand-rolled random inputs for property and acceptance runs. Everything is
// driven by one mt19937_64 so a failing seed can be replayed.

#include "ctxbook/catalog.hpp"
#include "ctxbook/empirical_model.hpp"
#include "ctxbook/sampling.hpp"
#include "ctxbook/wps.hpp"

#include <random>
#include <string>
#include <vector>

namespace ctxbook::gen {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::size_t below(std::size_t n) { return uniform_index(eng_, n); }
  bool coin() { return below(2) == 1; }
  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

inline Scenario cycle_scenario(std::size_t n, std::size_t outcomes = 2) {
  std::vector<std::string> xs, os;
  for (std::size_t i = 0; i < n; ++i) xs.push_back("x" + std::to_string(i));
  for (std::size_t o = 0; o < outcomes; ++o) os.push_back(std::to_string(o));
  std::vector<std::vector<std::string>> contexts;
  for (std::size_t i = 0; i < n; ++i) contexts.push_back({xs[i], xs[(i + 1) % n]});
  return Scenario(xs, os, contexts);
}

// Random antichain of small contexts covering 2..4 measurements.
inline Scenario random_cover_scenario(Rng& rng) {
  const std::size_t n = 2 + rng.below(3);
  const std::size_t k = 2 + rng.below(2);
  std::vector<std::string> xs, os;
  for (std::size_t i = 0; i < n; ++i) xs.push_back(std::string(1, static_cast<char>('p' + i)));
  for (std::size_t o = 0; o < k; ++o) os.push_back(std::to_string(o));
  std::vector<std::vector<std::size_t>> picked;
  std::vector<bool> covered(n, false);
  auto count = [&] { return static_cast<std::size_t>(std::count(covered.begin(), covered.end(), true)); };
  for (std::size_t attempt = 0; count() < n || attempt < 3; ++attempt) {
    std::vector<std::size_t> c;
    // three-measurement contexts only with binary outcomes, so each context
    // has at most 8 atoms and 2^8 Σ-members
    const std::size_t size = std::min<std::size_t>(n, k == 2 ? 2 + rng.below(2) : 2);
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    seeded_shuffle(all, rng.engine());
    c.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(size));
    std::sort(c.begin(), c.end());
    bool redundant = false;
    for (const auto& p : picked) {
      redundant = redundant || std::includes(p.begin(), p.end(), c.begin(), c.end());
    }
    if (redundant) continue;
    std::erase_if(picked, [&](const auto& p) { return std::includes(c.begin(), c.end(), p.begin(), p.end()); });
    picked.push_back(c);
    std::fill(covered.begin(), covered.end(), false);
    for (const auto& p : picked) {
      for (std::size_t x : p) covered[x] = true;
    }
  }
  std::vector<std::vector<std::string>> contexts;
  for (const auto& p : picked) {
    std::vector<std::string> labels;
    for (std::size_t x : p) labels.push_back(xs[x]);
    contexts.push_back(labels);
  }
  return Scenario(xs, os, contexts);
}

inline Scenario random_scenario(Rng& rng) {
  switch (rng.below(4)) {
    case 0: return bell_scenario();
    case 1: return cycle_scenario(3 + rng.below(3));
    default: return random_cover_scenario(rng);
  }
}

inline Section random_global(Rng& rng, const Scenario& sc) {
  std::vector<std::size_t> values;
  for (std::size_t x = 0; x < sc.num_measurements(); ++x) values.push_back(rng.below(sc.num_outcomes()));
  return Section(sc.all_measurements(), values);
}

// k positive weights with a common denominator of at most 12.
inline std::vector<Rational> random_weights(Rng& rng, std::size_t k) {
  const std::size_t total = k + rng.below(13 - k);
  std::vector<std::size_t> parts(k, 1);
  for (std::size_t extra = total - k; extra > 0; --extra) ++parts[rng.below(k)];
  std::vector<Rational> w;
  for (std::size_t p : parts) w.emplace_back(static_cast<long>(p), static_cast<long>(total));
  return w;
}

inline EmpiricalModel random_noncontextual(Rng& rng, const Scenario& sc, std::size_t components = 0) {
  if (components == 0) components = 1 + rng.below(4);
  std::vector<EmpiricalModel> parts;
  for (std::size_t i = 0; i < components; ++i) parts.push_back(deterministic_model(sc, random_global(rng, sc)));
  const auto w = random_weights(rng, components);
  return mixture(parts, w);
}

// Correlated on every edge of a binary cycle except one, where the outcomes
// disagree: no global section fits the support.
inline EmpiricalModel pr_cycle(const Scenario& sc) {
  std::vector<Distribution> tables;
  const auto& contexts = sc.maximal_contexts();
  for (std::size_t i = 0; i < contexts.size(); ++i) {
    const bool flip = i + 1 == contexts.size();
    std::vector<Rational> w(4, Rational(0));
    w[flip ? 1 : 0] = Rational(1, 2);
    w[flip ? 2 : 3] = Rational(1, 2);
    tables.emplace_back(sc, contexts[i], w);
  }
  return EmpiricalModel(sc, tables);
}

// Mixtures of contextual models with noncontextual noise; the noise keeps
// no-signaling because each component has it.
inline EmpiricalModel random_model(Rng& rng) {
  const std::size_t kind = rng.below(5);
  if (kind == 0) return random_noncontextual(rng, random_scenario(rng));
  EmpiricalModel base = [&] {
    if (kind == 1) return pr_cycle(cycle_scenario(3 + rng.below(3)));
    const auto& entries = catalog();
    return entries[rng.below(entries.size())].model;
  }();
  if (rng.below(3) == 0) return base;
  const auto w = random_weights(rng, 2);
  std::vector<EmpiricalModel> parts{base, random_noncontextual(rng, base.scenario())};
  return mixture(parts, w);
}

// One to three padding points of either kind anchored at random globals.
inline std::vector<PadPoint> random_padding(Rng& rng, const Scenario& sc) {
  std::vector<PadPoint> out;
  const std::size_t count = 1 + rng.below(3);
  for (std::size_t i = 0; i < count; ++i) {
    const Section base = random_global(rng, sc);
    const std::size_t x = rng.below(sc.num_measurements());
    const std::string label = "pad" + std::to_string(i);
    if (sc.num_outcomes() >= 2 && rng.coin()) {
      const std::size_t o1 = rng.below(sc.num_outcomes());
      const std::size_t o2 = (o1 + 1 + rng.below(sc.num_outcomes() - 1)) % sc.num_outcomes();
      out.push_back(contradictory_point(sc, x, std::min(o1, o2), std::max(o1, o2), base, label));
    } else {
      out.push_back(missing_point(sc, x, base, label));
    }
  }
  return out;
}

}  // namespace ctxbook::gen
