#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <string>

#include "coc/errors.hpp"

namespace coc {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// floor(p/q) with exact integer arithmetic (rounds toward -inf).
inline Integer rational_floor(const Rational& r) {
  Integer num = boost::multiprecision::numerator(r);
  Integer den = boost::multiprecision::denominator(r);  // > 0 by invariant
  Integer q = num / den;
  if (num < 0 && q * den != num) --q;
  return q;
}

/// frac_lift: canonical representative of t mod 1 in [0,1).  Exact.
inline Rational frac_lift(const Rational& t) {
  return t - Rational(rational_floor(t));
}

inline double frac_lift(double t) { return t - std::floor(t); }

inline bool is_integer(const Rational& r) {
  return boost::multiprecision::denominator(r) == 1;
}

inline double to_double(const Rational& r) {
  return boost::multiprecision::numerator(r).convert_to<double>() /
         boost::multiprecision::denominator(r).convert_to<double>();
}

/// Serialize as "p/q" ("p" when q == 1); bit-exact round trip.
inline std::string rational_to_string(const Rational& r) {
  Integer num = boost::multiprecision::numerator(r);
  Integer den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline Rational rational_from_string(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer num(s.substr(0, slash));
    Integer den(s.substr(slash + 1));
    if (den == 0) throw ParseError("rational with zero denominator: " + s);
    return Rational(num, den);
  } catch (const std::exception&) {
    throw ParseError("malformed rational: '" + s + "'");
  }
}

}  // namespace coc
