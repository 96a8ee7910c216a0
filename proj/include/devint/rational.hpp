#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "devint/error.hpp"

namespace devint {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Fixed-point rendering rounded half away from zero, e.g. 2/3 -> "0.666667".
inline std::string to_decimal(const Rational& r, int digits = 6) {
  BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  const bool negative = num < 0;
  if (negative) num = -num;
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  BigInt scaled = (num * scale * 2 + den) / (den * 2);
  BigInt whole = scaled / scale;
  std::string frac = BigInt(scaled % scale).str();
  std::string out = negative && scaled != 0 ? "-" : "";
  out += whole.str();
  if (digits > 0) out += "." + std::string(digits - frac.size(), '0') + frac;
  return out;
}

// "p/q" in lowest terms; integers print as "p/1".
inline std::string to_fraction(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

inline Rational parse_fraction(std::string_view s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string_view::npos) return Rational(BigInt(std::string(s)));
    BigInt num(std::string(s.substr(0, slash)));
    BigInt den(std::string(s.substr(slash + 1)));
    if (den == 0) throw ValidationError("zero denominator in \"" + std::string(s) + "\"");
    return Rational(num, den);
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const ValidationError*>(&e)) throw;
    throw ValidationError("malformed fraction \"" + std::string(s) + "\"");
  }
}

}  // namespace devint
