#include "ctxbook/limits.hpp"

#include "ctxbook/errors.hpp"

#include <limits>
#include <string>

namespace ctxbook {

void require_within_cap(std::size_t count, const Limits& limits, const char* what) {
  if (count > limits.enumeration_cap) {
    throw CapExceeded(std::string(what) + ": " +
                      (count == std::numeric_limits<std::size_t>::max() ? std::string("overflow")
                                                                         : std::to_string(count)) +
                      " items exceeds enumeration cap " + std::to_string(limits.enumeration_cap));
  }
}

std::size_t saturating_pow(std::size_t base, std::size_t exponent) {
  std::size_t result = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    if (base != 0 && result > std::numeric_limits<std::size_t>::max() / base) {
      return std::numeric_limits<std::size_t>::max();
    }
    result *= base;
  }
  return result;
}

}  // namespace ctxbook
