#pragma once

#include "ctxbook/limits.hpp"
#include "ctxbook/scenario.hpp"

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ctxbook {

/// An assignment of outcomes to every measurement in a domain U.
/// values()[k] is the outcome index of domain().indices()[k].
class Section {
 public:
  Section() = default;
  /// Throws DomainError when the value count does not match the domain.
  Section(Context domain, std::vector<std::size_t> values);

  [[nodiscard]] const Context& domain() const noexcept { return domain_; }
  [[nodiscard]] const std::vector<std::size_t>& values() const noexcept { return values_; }
  [[nodiscard]] std::optional<std::size_t> value_of(std::size_t measurement) const;

  friend bool operator==(const Section&, const Section&) = default;
  friend auto operator<=>(const Section& a, const Section& b) {
    if (auto c = a.domain_ <=> b.domain_; c != 0) return c;
    return a.values_ <=> b.values_;
  }

 private:
  Context domain_;
  std::vector<std::size_t> values_;
};


/// All |O|^|U| sections over U, lexicographic by measurement order with the
/// first measurement most significant. Throws CapExceeded.
std::vector<Section> sections_over(const Scenario& scenario, const Context& u,
                                   const Limits& limits = {});

/// Rank of `s` in sections_over(scenario, s.domain()).
std::size_t section_index(const Scenario& scenario, const Section& s);
/// Inverse of section_index.
Section section_at(const Scenario& scenario, const Context& u, std::size_t index);

/// Throws DomainError unless U is a subset of domain(s).
Section restrict(const Section& s, const Context& u);

/// Unique section on the union of the domains restricting to every member.
/// Throws IncompatibleFamily naming the first clashing pair, DomainError on
/// an empty family.
Section glue(std::span<const Section> family);

/// True when `a` and `b` agree on their shared measurements.
bool compatible(const Section& a, const Section& b);

/// "a=0,b=1"; "{}" for the empty section.
std::string to_string(const Scenario& scenario, const Section& s);

/// Inverse of to_string; throws ParseError.
Section parse_section(const Scenario& scenario, std::string_view text);

}  // namespace ctxbook
