#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace mta {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline Integer numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

/// Comparing against a literal 0 builds a temporary rational; this does not.
inline bool is_zero(const Rational& q) { return q.is_zero(); }

inline bool is_integer(const Rational& q) { return denominator_of(q) == 1; }

/// "p" when q is integral, "p/q" otherwise.
inline std::string to_string(const Rational& q) {
  if (is_integer(q)) return numerator_of(q).str();
  return numerator_of(q).str() + "/" + denominator_of(q).str();
}

inline std::string to_string(const Integer& z) { return z.str(); }

/// Accepts "p", "-p", "p/q".
inline Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) return Rational(Integer(std::string(text)));
    Integer num(std::string(text.substr(0, slash)));
    Integer den(std::string(text.substr(slash + 1)));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed rational: " + std::string(text));
  }
}

/// Largest integer not exceeding q.
inline Integer floor_of(const Rational& q) {
  Integer n = numerator_of(q), d = denominator_of(q);
  Integer f = n / d;  // truncates toward zero
  if (n < 0 && f * d != n) f -= 1;
  return f;
}

inline Integer ceil_of(const Rational& q) { return -floor_of(-q); }

}  // namespace mta
