#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ctxbook {

/// Subset of a finite sample space {0, ..., universe-1}.
/// Ordered lexicographically by sorted member lists, so {} < {0} < {0,1} < {1}.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::size_t universe);

  static PointSet full(std::size_t universe);
  static PointSet of(std::size_t universe, std::span<const std::size_t> members);
  static PointSet of(std::size_t universe, std::initializer_list<std::size_t> members);

  [[nodiscard]] std::size_t universe() const noexcept { return universe_; }
  [[nodiscard]] bool contains(std::size_t point) const;
  void insert(std::size_t point);
  void erase(std::size_t point);

  [[nodiscard]] std::size_t count() const noexcept;
  [[nodiscard]] bool empty() const noexcept;
  [[nodiscard]] bool is_subset_of(const PointSet& other) const;
  [[nodiscard]] bool intersects(const PointSet& other) const;
  [[nodiscard]] std::vector<std::size_t> members() const;
  [[nodiscard]] std::size_t first() const;  // universe() when empty

  PointSet& operator&=(const PointSet& other);
  PointSet& operator|=(const PointSet& other);
  PointSet& operator-=(const PointSet& other);
  friend PointSet operator&(PointSet a, const PointSet& b) { return a &= b; }
  friend PointSet operator|(PointSet a, const PointSet& b) { return a |= b; }
  friend PointSet operator-(PointSet a, const PointSet& b) { return a -= b; }
  /// Complement within the universe.
  PointSet operator~() const;

  friend bool operator==(const PointSet&, const PointSet&) = default;
  friend std::strong_ordering operator<=>(const PointSet& a, const PointSet& b);

  [[nodiscard]] std::size_t hash() const noexcept;

 private:
  void check(std::size_t point) const;
  void check_same(const PointSet& other) const;

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

struct PointSetHash {
  std::size_t operator()(const PointSet& s) const noexcept { return s.hash(); }
};

}  // namespace ctxbook
