#pragma once

#include <cstddef>

namespace ctxbook {

inline constexpr std::size_t kDefaultEnumerationCap = std::size_t{1} << 20;

/// Resource limits shared by every enumerating operation.
struct Limits {
  std::size_t enumeration_cap = kDefaultEnumerationCap;
};

/// Throws CapExceeded when `count` exceeds the cap. `what` names the
/// enumeration in the message.
void require_within_cap(std::size_t count, const Limits& limits, const char* what);

/// base^exponent, saturating at SIZE_MAX.
std::size_t saturating_pow(std::size_t base, std::size_t exponent);

}  // namespace ctxbook
