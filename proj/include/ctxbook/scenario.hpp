#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace ctxbook {

/// A set of measurements, held as sorted measurement indices into a Scenario.
class Context {
 public:
  Context() = default;
  explicit Context(std::vector<std::size_t> indices);
  Context(std::initializer_list<std::size_t> indices);

  [[nodiscard]] const std::vector<std::size_t>& indices() const noexcept { return indices_; }
  [[nodiscard]] std::size_t size() const noexcept { return indices_.size(); }
  [[nodiscard]] bool empty() const noexcept { return indices_.empty(); }
  [[nodiscard]] bool contains(std::size_t measurement) const;
  [[nodiscard]] bool is_subset_of(const Context& other) const;

  /// Position of `measurement` inside indices(), or npos.
  [[nodiscard]] std::size_t position_of(std::size_t measurement) const;

  [[nodiscard]] Context intersection(const Context& other) const;
  [[nodiscard]] Context union_with(const Context& other) const;

  auto begin() const noexcept { return indices_.begin(); }
  auto end() const noexcept { return indices_.end(); }

  friend bool operator==(const Context&, const Context&) = default;
  friend auto operator<=>(const Context& a, const Context& b) {
    if (auto c = a.indices_.size() <=> b.indices_.size(); c != 0) return c;
    return a.indices_ <=> b.indices_;
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::vector<std::size_t> indices_;
};

/// Every subset of `context`, smallest first and lexicographic within a size.
std::vector<Context> subsets_of(const Context& context);

/// The combinatorial base (X, M, O). Measurement and outcome order is fixed
/// at construction and used for every enumeration; maximal contexts are kept
/// sorted.
class Scenario {
 public:
  /// Throws ValidationError when any invariant fails: non-empty X and O,
  /// unique labels without whitespace, ',' or '=', every measurement covered,
  /// no maximal context contained in another.
  Scenario(std::vector<std::string> measurements, std::vector<std::string> outcomes,
           const std::vector<std::vector<std::string>>& maximal_contexts);

  [[nodiscard]] std::size_t num_measurements() const noexcept { return measurements_.size(); }
  [[nodiscard]] std::size_t num_outcomes() const noexcept { return outcomes_.size(); }
  [[nodiscard]] const std::vector<std::string>& measurements() const noexcept { return measurements_; }
  [[nodiscard]] const std::vector<std::string>& outcomes() const noexcept { return outcomes_; }
  [[nodiscard]] const std::vector<Context>& maximal_contexts() const noexcept { return maximal_; }

  [[nodiscard]] const std::string& measurement(std::size_t i) const { return measurements_.at(i); }
  [[nodiscard]] const std::string& outcome(std::size_t o) const { return outcomes_.at(o); }

  /// Throws DomainError for unknown labels.
  [[nodiscard]] std::size_t measurement_index(std::string_view label) const;
  [[nodiscard]] std::size_t outcome_index(std::string_view label) const;

  /// The whole measurement set X as a Context.
  [[nodiscard]] Context all_measurements() const;

  /// Context from labels; throws DomainError for unknown labels.
  [[nodiscard]] Context context(const std::vector<std::string>& labels) const;

  /// True when U lies inside some maximal context (U is in M').
  [[nodiscard]] bool is_context(const Context& u) const;

  /// Index of the maximal context equal to C, or Context::npos.
  [[nodiscard]] std::size_t maximal_index(const Context& c) const;

  /// The distinct members of M' (all subsets of maximal contexts), computed
  /// on demand, in Context order.
  [[nodiscard]] std::vector<Context> all_contexts() const;

  /// "a,b" style label.
  [[nodiscard]] std::string label(const Context& u) const;

  friend bool operator==(const Scenario&, const Scenario&) = default;

 private:
  std::vector<std::string> measurements_;
  std::vector<std::string> outcomes_;
  std::vector<Context> maximal_;
};

}  // namespace ctxbook
