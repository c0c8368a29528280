#include "ctxbook/point_set.hpp"

#include "ctxbook/errors.hpp"

#include <bit>
#include <string>

namespace ctxbook {

namespace {
constexpr std::size_t kBits = 64;
}

PointSet::PointSet(std::size_t universe) : universe_(universe), words_((universe + kBits - 1) / kBits, 0) {}

PointSet PointSet::full(std::size_t universe) {
  PointSet s(universe);
  for (auto& w : s.words_) w = ~std::uint64_t{0};
  if (const std::size_t tail = universe % kBits; tail != 0) s.words_.back() = (std::uint64_t{1} << tail) - 1;
  return s;
}

PointSet PointSet::of(std::size_t universe, std::span<const std::size_t> members) {
  PointSet s(universe);
  for (std::size_t p : members) s.insert(p);
  return s;
}

PointSet PointSet::of(std::size_t universe, std::initializer_list<std::size_t> members) {
  return of(universe, std::span<const std::size_t>(members.begin(), members.size()));
}

void PointSet::check(std::size_t point) const {
  if (point >= universe_) {
    throw DomainError("point " + std::to_string(point) + " outside sample space of size " + std::to_string(universe_));
  }
}

void PointSet::check_same(const PointSet& other) const {
  if (universe_ != other.universe_) throw DomainError("point sets over different sample spaces");
}

bool PointSet::contains(std::size_t point) const {
  if (point >= universe_) return false;
  return (words_[point / kBits] >> (point % kBits)) & 1U;
}

void PointSet::insert(std::size_t point) {
  check(point);
  words_[point / kBits] |= std::uint64_t{1} << (point % kBits);
}

void PointSet::erase(std::size_t point) {
  check(point);
  words_[point / kBits] &= ~(std::uint64_t{1} << (point % kBits));
}

std::size_t PointSet::count() const noexcept {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool PointSet::empty() const noexcept {
  for (auto w : words_) {
    if (w != 0) return false;
  }
  return true;
}

bool PointSet::is_subset_of(const PointSet& other) const {
  check_same(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & ~other.words_[i]) != 0) return false;
  }
  return true;
}

bool PointSet::intersects(const PointSet& other) const {
  check_same(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & other.words_[i]) != 0) return true;
  }
  return false;
}

std::vector<std::size_t> PointSet::members() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    for (std::uint64_t w = words_[i]; w != 0; w &= w - 1) {
      out.push_back(i * kBits + static_cast<std::size_t>(std::countr_zero(w)));
    }
  }
  return out;
}

std::size_t PointSet::first() const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] != 0) return i * kBits + static_cast<std::size_t>(std::countr_zero(words_[i]));
  }
  return universe_;
}

PointSet& PointSet::operator&=(const PointSet& other) {
  check_same(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

PointSet& PointSet::operator|=(const PointSet& other) {
  check_same(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

PointSet& PointSet::operator-=(const PointSet& other) {
  check_same(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  return *this;
}

PointSet PointSet::operator~() const { return full(universe_) - *this; }

std::strong_ordering operator<=>(const PointSet& a, const PointSet& b) {
  if (auto c = a.universe_ <=> b.universe_; c != 0) return c;
  // Lowest point in the symmetric difference decides: the set holding it is
  // smaller unless the other set has nothing beyond it (then it is a prefix).
  for (std::size_t i = 0; i < a.words_.size(); ++i) {
    const std::uint64_t diff = a.words_[i] ^ b.words_[i];
    if (diff == 0) continue;
    const unsigned bit = static_cast<unsigned>(std::countr_zero(diff));
    const bool in_a = (a.words_[i] >> bit) & 1U;
    const PointSet& other = in_a ? b : a;
    bool other_continues = bit + 1 < kBits && (other.words_[i] >> (bit + 1)) != 0;
    for (std::size_t j = i + 1; !other_continues && j < other.words_.size(); ++j) {
      other_continues = other.words_[j] != 0;
    }
    if (in_a) return other_continues ? std::strong_ordering::less : std::strong_ordering::greater;
    return other_continues ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  return std::strong_ordering::equal;
}

std::size_t PointSet::hash() const noexcept {
  std::size_t h = universe_ * 0x9e3779b97f4a7c15ULL;
  for (auto w : words_) h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

}  // namespace ctxbook
