#ifndef QSOBOLEV_RATIONAL_HPP
#define QSOBOLEV_RATIONAL_HPP

/* Arbitrary-precision rationals. GMP's mpq_class already keeps values in
 * lowest terms with a positive denominator, which is exactly the canonical
 * form we need, so we use it directly and add the few helpers the rest of
 * the library wants (string round-trips, integer powers).
 */

#include <gmpxx.h>

#include <string>

#include "qsobolev/errors.hpp"

namespace qsobolev {

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw DivisionByZero("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/* Accepts "p", "p/q" and "-p/q"; whitespace around tokens is ignored. */
inline Rational parse_rational(const std::string& text) {
  std::string s;
  s.reserve(text.size());
  for (char c : text)
    if (c != ' ' && c != '\t') s.push_back(c);
  if (s.empty()) throw Error("empty rational literal");
  try {
    Rational r(s);
    if (r.get_den() == 0) throw DivisionByZero("rational with zero denominator");
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw Error("malformed rational literal: '" + text + "'");
  }
}

inline std::string rational_str(const Rational& r) {
  return r.get_str();  // "p" or "p/q", lowest terms
}

/* r^e for any integer e; negative exponents invert. */
inline Rational rational_pow(const Rational& r, long e) {
  if (e == 0) return Rational(1);
  if (r == 0 && e < 0) throw DivisionByZero("0 raised to a negative power");
  Rational base = r;
  bool invert = e < 0;
  unsigned long n = invert ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  Rational acc(1);
  while (n > 0) {
    if (n & 1) acc *= base;
    base *= base;
    n >>= 1;
  }
  if (invert) acc = Rational(1) / acc;
  acc.canonicalize();
  return acc;
}

}  // namespace qsobolev

#endif
