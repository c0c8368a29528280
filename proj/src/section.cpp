#include "ctxbook/section.hpp"

#include "ctxbook/errors.hpp"

#include <map>

namespace ctxbook {

Section::Section(Context domain, std::vector<std::size_t> values)
    : domain_(std::move(domain)), values_(std::move(values)) {
  if (domain_.size() != values_.size()) {
    throw DomainError("section has " + std::to_string(values_.size()) + " values for a domain of " +
                      std::to_string(domain_.size()) + " measurements");
  }
}

std::optional<std::size_t> Section::value_of(std::size_t measurement) const {
  const std::size_t pos = domain_.position_of(measurement);
  if (pos == Context::npos) return std::nullopt;
  return values_[pos];
}

std::vector<Section> sections_over(const Scenario& scenario, const Context& u,
                                   const Limits& limits) {
  const std::size_t count = saturating_pow(scenario.num_outcomes(), u.size());
  require_within_cap(count, limits, "sections_over");
  std::vector<Section> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.push_back(section_at(scenario, u, k));
  return out;
}

std::size_t section_index(const Scenario& scenario, const Section& s) {
  const std::size_t base = scenario.num_outcomes();
  std::size_t index = 0;
  for (std::size_t v : s.values()) {
    if (v >= base) throw DomainError("section value out of outcome range");
    index = index * base + v;
  }
  return index;
}

Section section_at(const Scenario& scenario, const Context& u, std::size_t index) {
  const std::size_t base = scenario.num_outcomes();
  std::vector<std::size_t> values(u.size());
  for (std::size_t k = u.size(); k-- > 0;) {
    values[k] = index % base;
    index /= base;
  }
  return Section(u, std::move(values));
}

Section restrict(const Section& s, const Context& u) {
  if (!u.is_subset_of(s.domain())) throw DomainError("restriction target is not a subset of the section's domain");
  std::vector<std::size_t> values;
  values.reserve(u.size());
  for (std::size_t x : u) values.push_back(*s.value_of(x));
  return Section(u, std::move(values));
}

bool compatible(const Section& a, const Section& b) {
  for (std::size_t k = 0; k < a.domain().size(); ++k) {
    auto other = b.value_of(a.domain().indices()[k]);
    if (other && *other != a.values()[k]) return false;
  }
  return true;
}

Section glue(std::span<const Section> family) {
  if (family.empty()) throw DomainError("glue of an empty family");
  std::map<std::size_t, std::pair<std::size_t, std::size_t>> assigned;  // measurement -> (value, member)
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto& s = family[i];
    for (std::size_t k = 0; k < s.domain().size(); ++k) {
      const std::size_t x = s.domain().indices()[k];
      auto [it, inserted] = assigned.emplace(x, std::make_pair(s.values()[k], i));
      if (!inserted && it->second.first != s.values()[k]) {
        throw IncompatibleFamily("sections #" + std::to_string(it->second.second) + " and #" +
                                 std::to_string(i) + " disagree on measurement #" +
                                 std::to_string(x));
      }
    }
  }
  std::vector<std::size_t> domain;
  std::vector<std::size_t> values;
  for (const auto& [x, entry] : assigned) {
    domain.push_back(x);
    values.push_back(entry.first);
  }
  return Section(Context(std::move(domain)), std::move(values));
}

std::string to_string(const Scenario& scenario, const Section& s) {
  if (s.domain().empty()) return "{}";
  std::string out;
  for (std::size_t k = 0; k < s.domain().size(); ++k) {
    if (k) out += ',';
    out += scenario.measurement(s.domain().indices()[k]);
    out += '=';
    out += scenario.outcome(s.values()[k]);
  }
  return out;
}

Section parse_section(const Scenario& scenario, std::string_view text) {
  if (text == "{}") return Section();
  std::map<std::size_t, std::size_t> entries;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    auto item = text.substr(start, end - start);
    auto eq = item.find('=');
    if (eq == std::string_view::npos) throw ParseError("section entry '" + std::string(item) + "' lacks '='");
    std::size_t x = 0;
    std::size_t o = 0;
    try {
      x = scenario.measurement_index(item.substr(0, eq));
      o = scenario.outcome_index(item.substr(eq + 1));
    } catch (const DomainError& e) {
      throw ParseError(std::string("section '") + std::string(text) + "': " + e.what());
    }
    if (!entries.emplace(x, o).second) {
      throw ParseError("section '" + std::string(text) + "' assigns a measurement twice");
    }
    start = end + 1;
  }
  std::vector<std::size_t> domain;
  std::vector<std::size_t> values;
  for (auto [x, o] : entries) {
    domain.push_back(x);
    values.push_back(o);
  }
  return Section(Context(std::move(domain)), std::move(values));
}

}  // namespace ctxbook
