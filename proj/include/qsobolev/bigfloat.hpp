#ifndef QSOBOLEV_BIGFLOAT_HPP
#define QSOBOLEV_BIGFLOAT_HPP

/* High-precision reals for the approximate backend. 256 bits of mantissa
 * (~77 decimal digits) leaves ample headroom over the 50 digits the kernel
 * determinants need before cancellation.
 */

#include <gmpxx.h>

#include <string>

#include "qsobolev/rational.hpp"

namespace qsobolev {

using BigFloat = mpf_class;

inline constexpr unsigned kBigFloatBits = 256;

inline BigFloat bigfloat(const Rational& r) { return BigFloat(r, kBigFloatBits); }

inline BigFloat bigfloat(double x) { return BigFloat(x, kBigFloatBits); }

inline BigFloat bigfloat(long x) { return BigFloat(x, kBigFloatBits); }

inline BigFloat bf_abs(const BigFloat& x) { return x < 0 ? BigFloat(-x) : x; }

inline BigFloat bf_pow(const BigFloat& base, long e) {
  if (e == 0) return bigfloat(1L);
  BigFloat b = base;
  bool invert = e < 0;
  unsigned long n = invert ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  BigFloat acc = bigfloat(1L);
  while (n > 0) {
    if (n & 1) acc *= b;
    b *= b;
    n >>= 1;
  }
  if (invert) acc = bigfloat(1L) / acc;
  return acc;
}

inline std::string bigfloat_str(const BigFloat& x, int digits = 30) {
  mp_exp_t exp;
  std::string mant = x.get_str(exp, 10, digits);
  if (mant.empty()) return "0";
  bool neg = mant[0] == '-';
  std::string digits_only = neg ? mant.substr(1) : mant;
  std::string out = neg ? "-" : "";
  out += "0." + digits_only + "e" + std::to_string(exp);
  return out;
}

}  // namespace qsobolev

#endif
