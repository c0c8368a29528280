#include "ctxbook/distribution.hpp"

#include "ctxbook/errors.hpp"

namespace ctxbook {

Distribution::Distribution(const Scenario& scenario, Context domain, std::vector<Rational> weights)
    : domain_(std::move(domain)), num_outcomes_(scenario.num_outcomes()), weights_(std::move(weights)) {
  const std::size_t expected = saturating_pow(num_outcomes_, domain_.size());
  if (weights_.size() != expected) {
    throw WeightError("distribution over {" + scenario.label(domain_) + "} has " +
                      std::to_string(weights_.size()) + " weights, expected " +
                      std::to_string(expected));
  }
  Rational total = 0;
  for (std::size_t k = 0; k < weights_.size(); ++k) {
    if (weights_[k] < 0) {
      throw WeightError("negative weight " + to_string(weights_[k]) + " on " +
                        to_string(scenario, section_at(scenario, domain_, k)));
    }
    total += weights_[k];
  }
  if (total != 1) {
    throw WeightError("weights over {" + scenario.label(domain_) + "} sum to " + to_string(total) +
                      ", not 1");
  }
}

const Rational& Distribution::weight(const Scenario& scenario, const Section& s) const {
  if (s.domain() != domain_) throw DomainError("section is not over the distribution's context");
  return weights_.at(section_index(scenario, s));
}

std::vector<std::size_t> Distribution::support() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < weights_.size(); ++k) {
    if (weights_[k] > 0) out.push_back(k);
  }
  return out;
}

Distribution point_mass(const Scenario& scenario, const Section& s) {
  std::vector<Rational> w(saturating_pow(scenario.num_outcomes(), s.domain().size()));
  w[section_index(scenario, s)] = 1;
  return Distribution(scenario, s.domain(), std::move(w));
}

std::vector<std::size_t> restriction_indices(const Scenario& scenario, const Context& from,
                                             const Context& to) {
  if (!to.is_subset_of(from)) throw DomainError("marginalization target is not a subset of the source context");
  const std::size_t base = scenario.num_outcomes();
  const std::size_t count = saturating_pow(base, from.size());
  std::vector<std::size_t> positions;
  for (std::size_t x : to) positions.push_back(from.position_of(x));

  std::vector<std::size_t> out(count);
  std::vector<std::size_t> digits(from.size());
  for (std::size_t k = 0; k < count; ++k) {
    std::size_t rest = k;
    for (std::size_t p = from.size(); p-- > 0;) {
      digits[p] = rest % base;
      rest /= base;
    }
    std::size_t index = 0;
    for (std::size_t p : positions) index = index * base + digits[p];
    out[k] = index;
  }
  return out;
}

Distribution marginalize(const Scenario& scenario, const Distribution& d, const Context& u) {
  const auto map = restriction_indices(scenario, d.domain(), u);
  std::vector<Rational> w(saturating_pow(scenario.num_outcomes(), u.size()));
  for (std::size_t k = 0; k < map.size(); ++k) w[map[k]] += d.weight_at(k);
  return Distribution(scenario, u, std::move(w));
}

}  // namespace ctxbook
