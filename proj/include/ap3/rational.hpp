#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

namespace ap3 {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) { return Rational(BigInt(num), BigInt(den)); }

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);
/// Accepts "p", "p/q" and finite decimals such as "0.25".
Rational parse_rational(const std::string& text);
double to_double(const Rational& r);
/// Truncated (toward zero) decimal expansion with `digits` fractional digits.
std::string to_decimal(const Rational& r, int digits);
/// Exact value of a finite double.
Rational exact_from_double(double x);

}  // namespace ap3
