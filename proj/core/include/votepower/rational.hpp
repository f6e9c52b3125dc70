#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace votepower {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt factorial(unsigned n);

/// Canonical lowest-terms "p/q" rendering (always carries the denominator,
/// e.g. "0/1", "1/3", "-2/5").
std::string to_fraction_string(const Rational& value);

/// Parses "p/q" or a bare integer "p". Throws Errc::ParseError on malformed
/// input or a zero denominator.
Rational parse_fraction(std::string_view text);

/// Exact fixed-point rendering with `precision` digits after the point,
/// rounded half-to-even. precision 0 renders a bare integer.
std::string to_decimal_string(const Rational& value, int precision);

double to_double(const Rational& value);

}  // namespace votepower
