#include "ctxbook/scenario.hpp"

#include "ctxbook/errors.hpp"

#include <algorithm>
#include <set>

namespace ctxbook {

Context::Context(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
}

Context::Context(std::initializer_list<std::size_t> indices)
    : Context(std::vector<std::size_t>(indices)) {}

bool Context::contains(std::size_t measurement) const {
  return std::binary_search(indices_.begin(), indices_.end(), measurement);
}

bool Context::is_subset_of(const Context& other) const {
  return std::includes(other.indices_.begin(), other.indices_.end(), indices_.begin(),
                       indices_.end());
}

std::size_t Context::position_of(std::size_t measurement) const {
  auto it = std::lower_bound(indices_.begin(), indices_.end(), measurement);
  if (it == indices_.end() || *it != measurement) return npos;
  return static_cast<std::size_t>(it - indices_.begin());
}

Context Context::intersection(const Context& other) const {
  std::vector<std::size_t> out;
  std::set_intersection(indices_.begin(), indices_.end(), other.indices_.begin(),
                        other.indices_.end(), std::back_inserter(out));
  return Context(std::move(out));
}

Context Context::union_with(const Context& other) const {
  std::vector<std::size_t> out;
  std::set_union(indices_.begin(), indices_.end(), other.indices_.begin(), other.indices_.end(),
                 std::back_inserter(out));
  return Context(std::move(out));
}

std::vector<Context> subsets_of(const Context& context) {
  const auto& idx = context.indices();
  const std::size_t n = idx.size();
  std::vector<Context> out;
  out.reserve(std::size_t{1} << n);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> members;
    for (std::size_t k = 0; k < n; ++k) {
      if (mask & (std::size_t{1} << k)) members.push_back(idx[k]);
    }
    out.emplace_back(std::move(members));
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void check_label(const std::string& label, const char* kind) {
  if (label.empty()) throw ValidationError(std::string("empty ") + kind + " label");
  for (char c : label) {
    if (c == ',' || c == '=' || c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      throw ValidationError(std::string(kind) + " label '" + label +
                            "' contains a reserved character (whitespace, ',' or '=')");
    }
  }
}

void check_unique(const std::vector<std::string>& labels, const char* kind) {
  std::set<std::string> seen;
  for (const auto& l : labels) {
    check_label(l, kind);
    if (!seen.insert(l).second) throw ValidationError(std::string("duplicate ") + kind + " label '" + l + "'");
  }
}

}  // namespace

Scenario::Scenario(std::vector<std::string> measurements, std::vector<std::string> outcomes,
                   const std::vector<std::vector<std::string>>& maximal_contexts)
    : measurements_(std::move(measurements)), outcomes_(std::move(outcomes)) {
  if (measurements_.empty()) throw ValidationError("scenario has no measurements");
  if (outcomes_.empty()) throw ValidationError("scenario has no outcomes");
  check_unique(measurements_, "measurement");
  check_unique(outcomes_, "outcome");

  for (const auto& labels : maximal_contexts) {
    if (labels.empty()) throw ValidationError("empty maximal context");
    Context c = context(labels);
    if (c.size() != labels.size()) throw ValidationError("maximal context repeats a measurement");
    maximal_.push_back(std::move(c));
  }
  std::sort(maximal_.begin(), maximal_.end());
  if (std::adjacent_find(maximal_.begin(), maximal_.end()) != maximal_.end()) {
    throw ValidationError("duplicate maximal context");
  }
  for (std::size_t i = 0; i < maximal_.size(); ++i) {
    for (std::size_t j = 0; j < maximal_.size(); ++j) {
      if (i != j && maximal_[i].is_subset_of(maximal_[j])) {
        throw ValidationError("maximal context {" + label(maximal_[i]) + "} is contained in {" +
                              label(maximal_[j]) + "}");
      }
    }
  }
  for (std::size_t x = 0; x < measurements_.size(); ++x) {
    bool covered = std::any_of(maximal_.begin(), maximal_.end(),
                               [x](const Context& c) { return c.contains(x); });
    if (!covered) throw ValidationError("measurement '" + measurements_[x] + "' is in no maximal context");
  }
}

std::size_t Scenario::measurement_index(std::string_view label) const {
  auto it = std::find(measurements_.begin(), measurements_.end(), label);
  if (it == measurements_.end()) throw DomainError("unknown measurement '" + std::string(label) + "'");
  return static_cast<std::size_t>(it - measurements_.begin());
}

std::size_t Scenario::outcome_index(std::string_view label) const {
  auto it = std::find(outcomes_.begin(), outcomes_.end(), label);
  if (it == outcomes_.end()) throw DomainError("unknown outcome '" + std::string(label) + "'");
  return static_cast<std::size_t>(it - outcomes_.begin());
}

Context Scenario::all_measurements() const {
  std::vector<std::size_t> all(measurements_.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return Context(std::move(all));
}

Context Scenario::context(const std::vector<std::string>& labels) const {
  std::vector<std::size_t> idx;
  idx.reserve(labels.size());
  for (const auto& l : labels) idx.push_back(measurement_index(l));
  return Context(std::move(idx));
}

bool Scenario::is_context(const Context& u) const {
  return std::any_of(maximal_.begin(), maximal_.end(),
                     [&u](const Context& c) { return u.is_subset_of(c); });
}

std::size_t Scenario::maximal_index(const Context& c) const {
  auto it = std::lower_bound(maximal_.begin(), maximal_.end(), c);
  if (it == maximal_.end() || *it != c) return Context::npos;
  return static_cast<std::size_t>(it - maximal_.begin());
}

std::vector<Context> Scenario::all_contexts() const {
  std::set<Context> seen;
  for (const auto& c : maximal_) {
    for (auto& u : subsets_of(c)) seen.insert(std::move(u));
  }
  return {seen.begin(), seen.end()};
}

std::string Scenario::label(const Context& u) const {
  std::string out;
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (k) out += ',';
    out += measurements_.at(u.indices()[k]);
  }
  return out;
}

}  // namespace ctxbook
