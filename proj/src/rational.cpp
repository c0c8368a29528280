#include "ctxbook/rational.hpp"

#include "ctxbook/errors.hpp"

#include <cctype>

namespace ctxbook {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string original(text);
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  Rational value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw ParseError("not a rational: '" + original + "'");
    Integer d{std::string(den)};
    if (d == 0) throw ParseError("zero denominator: '" + original + "'");
    value = Rational(Integer(std::string(num)), d);
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto whole = text.substr(0, dot);
    auto frac = text.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac)) {
      throw ParseError("not a rational: '" + original + "'");
    }
    Integer scale = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(frac.size()));
    Integer w = whole.empty() ? Integer(0) : Integer(std::string(whole));
    value = Rational(w * scale + Integer(std::string(frac)), scale);
  } else {
    if (!all_digits(text)) throw ParseError("not a rational: '" + original + "'");
    value = Rational(Integer(std::string(text)));
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& value) {
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

}  // namespace ctxbook
