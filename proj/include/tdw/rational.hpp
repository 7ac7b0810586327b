#pragma once

#include <gmpxx.h>

#include <string>

#include "tdw/errors.hpp"

namespace tdw {

/// Exact rational scalar. mpq_class keeps values canonical (lowest terms,
/// positive denominator) as long as every construction from a raw
/// numerator/denominator pair goes through make_rational.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw InputError("zero denominator in rational literal");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational make_rational(long num, long den = 1) {
  return make_rational(Integer(num), Integer(den));
}

/// "num/den", with the denominator omitted when it is 1.
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational parse_rational(const std::string& text) {
  Rational q;
  if (text.empty() || q.set_str(text, 10) != 0 || q.get_den() == 0)
    throw InputError("not a rational number: '" + text + "'");
  q.canonicalize();
  return q;
}

}  // namespace tdw
