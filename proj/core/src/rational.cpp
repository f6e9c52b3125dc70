#include "votepower/rational.hpp"

#include <cctype>
#include <cstdlib>

#include "votepower/errors.hpp"

namespace votepower {

BigInt factorial(unsigned n) {
  BigInt result = 1;
  for (unsigned k = 2; k <= n; ++k) result *= k;
  return result;
}

std::string to_fraction_string(const Rational& value) {
  return numerator(value).str() + "/" + denominator(value).str();
}

Rational parse_fraction(std::string_view text) {
  const auto bad = [&] {
    raise(Errc::ParseError, "malformed rational '" + std::string(text) + "'");
  };
  if (text.empty()) bad();
  const auto is_int = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!is_int(text)) bad();
    return Rational(BigInt(std::string(text)));
  }
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = text.substr(slash + 1);
  if (!is_int(num) || !is_int(den)) bad();
  BigInt d{std::string(den)};
  if (d == 0) bad();
  return Rational(BigInt(std::string(num)), d);
}

std::string to_decimal_string(const Rational& value, int precision) {
  if (precision < 0) precision = 0;
  const bool negative = value < 0;
  BigInt num = negative ? BigInt(-numerator(value)) : numerator(value);
  const BigInt den = denominator(value);

  BigInt scale = 1;
  for (int i = 0; i < precision; ++i) scale *= 10;

  BigInt shifted = num * scale;
  BigInt quotient = shifted / den;
  const BigInt remainder = shifted % den;
  const BigInt twice = remainder * 2;
  if (twice > den || (twice == den && (quotient & 1) != 0)) ++quotient;

  const BigInt whole = quotient / scale;
  const BigInt frac = quotient % scale;

  std::string out;
  if (negative && (whole != 0 || frac != 0)) out += '-';
  out += whole.str();
  if (precision > 0) {
    std::string digits = frac.str();
    out += '.';
    out.append(static_cast<size_t>(precision) - digits.size(), '0');
    out += digits;
  }
  return out;
}

double to_double(const Rational& value) {
  return value.convert_to<double>();
}

}  // namespace votepower
