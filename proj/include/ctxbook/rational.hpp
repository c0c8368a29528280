#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace ctxbook {

/// Exact rational number; GMP keeps it in canonical reduced form with a
/// positive denominator.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

inline bool is_zero(const Rational& value) { return value.is_zero(); }

/// Parses "p/q", "p" or a finite decimal such as "0.375" exactly.
/// Throws ParseError on anything else (including q == 0).
Rational parse_rational(std::string_view text);

/// Formats as "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);

/// Nearest double; only used for display and numeric cross-checks.
double to_double(const Rational& value);

}  // namespace ctxbook
