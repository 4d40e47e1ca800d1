#ifndef QSOBOLEV_ZRAT_HPP
#define QSOBOLEV_ZRAT_HPP

/* The exact coefficient field Q(Z): rational functions in one formal
 * transcendental Z over arbitrary-precision rationals. Z stands for the
 * infinite product (q;q)oo (a;q)oo (a^{-1}q;q)oo that enters every squared
 * norm, so keeping it formal makes all identities downstream exactly
 * decidable.
 *
 * Canonical form: gcd(num, den) = 1 over Q[Z], den monic, zero = 0/1.
 * Two values are equal iff their canonical coefficient lists are equal.
 */

#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qsobolev/bigfloat.hpp"
#include "qsobolev/errors.hpp"
#include "qsobolev/rational.hpp"

namespace qsobolev {

namespace detail {

/* Dense univariate polynomials over Q, coefficient index = power of Z.
 * Invariant: no trailing zeros; zero polynomial = empty vector.
 */
using QQPoly = std::vector<Rational>;

inline void qq_trim(QQPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline bool qq_is_zero(const QQPoly& p) { return p.empty(); }

inline QQPoly qq_const(const Rational& r) {
  QQPoly p;
  if (r != 0) p.push_back(r);
  return p;
}

inline QQPoly qq_add(const QQPoly& a, const QQPoly& b) {
  QQPoly out(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  qq_trim(out);
  return out;
}

inline QQPoly qq_neg(QQPoly a) {
  for (auto& c : a) c = -c;
  return a;
}

inline QQPoly qq_sub(const QQPoly& a, const QQPoly& b) { return qq_add(a, qq_neg(b)); }

inline QQPoly qq_mul(const QQPoly& a, const QQPoly& b) {
  if (a.empty() || b.empty()) return {};
  QQPoly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  qq_trim(out);
  return out;
}

inline QQPoly qq_scale(QQPoly a, const Rational& r) {
  if (r == 0) return {};
  for (auto& c : a) c *= r;
  return a;
}

inline QQPoly qq_monic(QQPoly a) {
  if (a.empty()) return a;
  Rational lead = a.back();
  for (auto& c : a) c /= lead;
  return a;
}

/* Euclidean division; requires b nonzero. */
inline std::pair<QQPoly, QQPoly> qq_divmod(const QQPoly& a, const QQPoly& b) {
  if (b.empty()) throw DivisionByZero("polynomial division by zero");
  QQPoly rem = a;
  if (a.size() < b.size()) return {{}, rem};
  QQPoly quot(a.size() - b.size() + 1, Rational(0));
  const Rational& blead = b.back();
  for (std::size_t k = quot.size(); k-- > 0;) {
    if (rem.size() < b.size() + k) continue;
    Rational c = rem[b.size() - 1 + k] / blead;
    if (c == 0) continue;
    quot[k] = c;
    for (std::size_t i = 0; i < b.size(); ++i) rem[i + k] -= c * b[i];
  }
  qq_trim(rem);
  qq_trim(quot);
  return {quot, rem};
}

using ZZPoly = std::vector<mpz_class>;

inline void zz_trim(ZZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

/* Scale to an integer polynomial; the rational factor is irrelevant for gcds. */
inline ZZPoly qq_to_primitive_integer(const QQPoly& p) {
  mpz_class den_lcm(1);
  for (const Rational& c : p) {
    mpz_class d = c.get_den();
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
    den_lcm = den_lcm / g * d;
  }
  ZZPoly out;
  out.reserve(p.size());
  mpz_class content(0);
  for (const Rational& c : p) {
    mpz_class v = c.get_num() * (den_lcm / c.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
    out.push_back(std::move(v));
  }
  if (content > 1)
    for (auto& v : out) v /= content;
  if (!out.empty() && out.back() < 0)
    for (auto& v : out) v = -v;
  return out;
}

inline void zz_make_primitive(ZZPoly& p) {
  if (p.empty()) return;
  mpz_class content(0);
  for (const auto& v : p) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
  if (content > 1)
    for (auto& v : p) v /= content;
  if (p.back() < 0)
    for (auto& v : p) v = -v;
}

/* Fraction-free pseudo-remainder of a by b. */
inline ZZPoly zz_prem(ZZPoly a, const ZZPoly& b) {
  const std::size_t db = b.size() - 1;
  const mpz_class& lb = b.back();
  while (!a.empty() && a.size() - 1 >= db) {
    mpz_class la = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (auto& v : a) v *= lb;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= la * b[i];
    zz_trim(a);
  }
  return a;
}

/* Monic gcd over Q[Z], computed with the primitive pseudo-remainder sequence
 * over Z[Z]; removing integer content each round keeps coefficient size
 * polynomial where the naive monic Euclid blows up. */
inline QQPoly qq_gcd(QQPoly a_in, QQPoly b_in) {
  qq_trim(a_in);
  qq_trim(b_in);
  if (a_in.empty()) return qq_monic(std::move(b_in));
  if (b_in.empty()) return qq_monic(std::move(a_in));
  if (a_in.size() == 1 || b_in.size() == 1) return qq_const(Rational(1));
  ZZPoly a = qq_to_primitive_integer(a_in);
  ZZPoly b = qq_to_primitive_integer(b_in);
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    ZZPoly r = zz_prem(a, b);
    zz_make_primitive(r);
    a = std::move(b);
    b = std::move(r);
  }
  QQPoly g;
  g.reserve(a.size());
  for (const auto& v : a) g.push_back(Rational(v));
  return qq_monic(std::move(g));
}

inline BigFloat qq_eval(const QQPoly& p, const BigFloat& z) {
  BigFloat acc = bigfloat(0L);
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * z + bigfloat(p[i]);
  return acc;
}

inline std::string qq_str(const QQPoly& p) {
  std::ostringstream os;
  os << '[';
  if (p.empty()) {
    os << '0';
  } else {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i) os << ", ";
      os << rational_str(p[i]);
    }
  }
  os << ']';
  return os.str();
}

}  // namespace detail

class ZRat {
 public:
  ZRat() : num_(), den_(detail::qq_const(Rational(1))) {}

  explicit ZRat(const Rational& r) : num_(detail::qq_const(r)), den_(detail::qq_const(Rational(1))) {}

  ZRat(detail::QQPoly num, detail::QQPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (detail::qq_is_zero(den_)) throw DivisionByZero("rational function with zero denominator");
    reduce();
  }

  /* The formal generator Z itself. */
  static ZRat generator() {
    detail::QQPoly z{Rational(0), Rational(1)};
    return ZRat(std::move(z), detail::qq_const(Rational(1)));
  }

  const detail::QQPoly& num() const { return num_; }
  const detail::QQPoly& den() const { return den_; }

  bool is_zero() const { return num_.empty(); }
  bool is_one() const { return num_.size() == 1 && num_[0] == 1 && den_.size() == 1 && den_[0] == 1; }

  /* Exact rational content, if the value lies in Q. */
  bool is_rational() const { return num_.size() <= 1 && den_.size() == 1 && den_[0] == 1; }
  Rational as_rational() const {
    if (!is_rational()) throw Error("value is not a plain rational");
    return num_.empty() ? Rational(0) : num_[0];
  }

  friend ZRat operator+(const ZRat& a, const ZRat& b) {
    using namespace detail;
    QQPoly g = qq_gcd(a.den_, b.den_);
    QQPoly bd = qq_divmod(b.den_, g).first;
    QQPoly ad = qq_divmod(a.den_, g).first;
    QQPoly num = qq_add(qq_mul(a.num_, bd), qq_mul(b.num_, ad));
    QQPoly den = qq_mul(a.den_, bd);
    return ZRat(std::move(num), std::move(den));
  }

  friend ZRat operator-(const ZRat& a, const ZRat& b) { return a + (-b); }

  ZRat operator-() const {
    ZRat r = *this;
    r.num_ = detail::qq_neg(r.num_);
    return r;
  }

  friend ZRat operator*(const ZRat& a, const ZRat& b) {
    using namespace detail;
    if (a.is_zero() || b.is_zero()) return ZRat();
    QQPoly g1 = qq_gcd(a.num_, b.den_);
    QQPoly g2 = qq_gcd(b.num_, a.den_);
    QQPoly num = qq_mul(qq_divmod(a.num_, g1).first, qq_divmod(b.num_, g2).first);
    QQPoly den = qq_mul(qq_divmod(a.den_, g2).first, qq_divmod(b.den_, g1).first);
    return ZRat(std::move(num), std::move(den));
  }

  friend ZRat operator/(const ZRat& a, const ZRat& b) {
    if (b.is_zero()) throw DivisionByZero();
    return a * b.inverse();
  }

  ZRat inverse() const {
    if (is_zero()) throw DivisionByZero();
    return ZRat(den_, num_);
  }

  ZRat pow(long e) const {
    if (e == 0) return ZRat(Rational(1));
    ZRat base = e < 0 ? inverse() : *this;
    unsigned long n = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    ZRat acc(Rational(1));
    while (n > 0) {
      if (n & 1) acc = acc * base;
      base = base * base;
      n >>= 1;
    }
    return acc;
  }

  friend bool operator==(const ZRat& a, const ZRat& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const ZRat& a, const ZRat& b) { return !(a == b); }

  /* Numeric substitution Z -> z. */
  BigFloat eval(const BigFloat& z) const {
    BigFloat d = detail::qq_eval(den_, z);
    if (d == 0) throw PoleAtZ();
    return detail::qq_eval(num_, z) / d;
  }

  /* "[n0, n1, ...] / [d0, ...]" with exact rational entries, constant term first. */
  std::string str() const { return detail::qq_str(num_) + " / " + detail::qq_str(den_); }

  static ZRat parse(const std::string& text) {
    auto read_list = [](const std::string& s) {
      detail::QQPoly p;
      std::size_t lb = s.find('[');
      std::size_t rb = s.find(']');
      if (lb == std::string::npos || rb == std::string::npos || rb < lb)
        throw Error("malformed coefficient list: '" + s + "'");
      std::string body = s.substr(lb + 1, rb - lb - 1);
      std::size_t pos = 0;
      while (pos < body.size()) {
        std::size_t comma = body.find(',', pos);
        std::string tok = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (tok.find_first_not_of(" \t") != std::string::npos) p.push_back(parse_rational(tok));
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
      detail::qq_trim(p);
      return p;
    };
    std::size_t slash = text.find('/', text.find(']'));
    if (slash == std::string::npos) return ZRat(read_list(text), detail::qq_const(Rational(1)));
    return ZRat(read_list(text.substr(0, slash)), read_list(text.substr(slash + 1)));
  }

 private:
  void reduce() {
    using namespace detail;
    if (num_.empty()) {
      den_ = qq_const(Rational(1));
      return;
    }
    QQPoly g = qq_gcd(num_, den_);
    if (g.size() > 1 || (g.size() == 1 && g[0] != 1)) {
      num_ = qq_divmod(num_, g).first;
      den_ = qq_divmod(den_, g).first;
    }
    Rational lead = den_.back();
    if (lead != 1) {
      for (auto& c : den_) c /= lead;
      for (auto& c : num_) c /= lead;
    }
  }

  detail::QQPoly num_;
  detail::QQPoly den_;
};

}  // namespace qsobolev

#endif
