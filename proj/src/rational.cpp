#include "ap3/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace ap3 {

std::string to_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  try {
    if (auto slash = text.find('/'); slash != std::string::npos) {
      BigInt num(text.substr(0, slash));
      BigInt den(text.substr(slash + 1));
      if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
      return Rational(num, den);
    }
    if (auto dot = text.find('.'); dot != std::string::npos) {
      const bool negative = !text.empty() && text[0] == '-';
      std::string whole = text.substr(0, dot);
      const std::string frac = text.substr(dot + 1);
      if (whole.empty() || whole == "-" || whole == "+") whole += "0";
      BigInt scale = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
      BigInt w(whole);
      BigInt f = frac.empty() ? BigInt(0) : BigInt(frac);
      if (w < 0 || negative) f = -f;
      return Rational(w * scale + f, scale);
    }
    return Rational(BigInt(text));
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed rational literal '" + text + "'");
  }
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string to_decimal(const Rational& r, int digits) {
  BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  std::string out;
  if (num < 0) {
    out += "-";
    num = -num;
  }
  BigInt whole = num / den;
  BigInt rem = num % den;
  out += whole.str();
  if (digits > 0) out += ".";
  for (int i = 0; i < digits; ++i) {
    rem *= 10;
    out += static_cast<char>('0' + static_cast<int>(rem / den));
    rem %= den;
  }
  return out;
}

Rational exact_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value has no rational form");
  int exp = 0;
  double mant = std::frexp(x, &exp);
  // 53 significant bits
  auto m = static_cast<std::int64_t>(std::ldexp(mant, 53));
  exp -= 53;
  Rational r{BigInt(m)};
  BigInt p2 = 1;
  p2 <<= std::abs(exp);
  return exp >= 0 ? r * Rational(p2) : r / Rational(p2);
}

}  // namespace ap3
