#ifndef QSOBOLEV_POLY_HPP
#define QSOBOLEV_POLY_HPP

/* Dense univariate polynomials over an arbitrary coefficient ring C, and
 * reduced rational functions over Scalar. Bivariate kernels use the nesting
 * Poly<Poly<Scalar>>: outer variable x, inner variable y.
 *
 * Canonical form throughout: no trailing zero coefficients, zero = empty
 * list, so equality is plain list comparison.
 *
 * Coefficients never get default-constructed; where a zero/one element is
 * required it is derived from a value that is already at hand (zero_like),
 * which keeps exact and approx backends from leaking into each other.
 */

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "qsobolev/errors.hpp"
#include "qsobolev/scalar.hpp"

namespace qsobolev {

template <typename C>
class Poly;

inline bool coeff_is_zero(const Scalar& c) { return c.is_zero(); }
inline bool coeff_is_one(const Scalar& c) { return c.is_one(); }
inline Scalar coeff_zero_like(const Scalar& c) { return Scalar::zero_like(c); }
inline Scalar coeff_one_like(const Scalar& c) { return Scalar::one_like(c); }
inline Scalar coeff_scale(const Scalar& c, const Scalar& s) { return c * s; }
inline Scalar coeff_div(const Scalar& a, const Scalar& b) { return a / b; }

template <typename C>
Poly<C> coeff_div(const Poly<C>& a, const Poly<C>& b);

template <typename C>
bool coeff_is_zero(const Poly<C>& p) {
  return p.is_zero();
}
template <typename C>
bool coeff_is_one(const Poly<C>& p) {
  return p.degree() == 0 && coeff_is_one(p[0]);
}
template <typename C>
Poly<C> coeff_zero_like(const Poly<C>&) {
  return Poly<C>();
}
template <typename C>
Poly<C> coeff_one_like(const Poly<C>& p);
template <typename C>
Poly<C> coeff_scale(const Poly<C>& p, const Scalar& s);

template <typename C>
class Poly {
 public:
  Poly() = default;

  explicit Poly(std::vector<C> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly constant(C value) {
    std::vector<C> v;
    if (!coeff_is_zero(value)) v.push_back(std::move(value));
    return Poly(std::move(v));
  }

  /* c * x^k */
  static Poly monomial(C value, std::size_t k) {
    if (coeff_is_zero(value)) return Poly();
    std::vector<C> v;
    v.reserve(k + 1);
    for (std::size_t i = 0; i < k; ++i) v.push_back(coeff_zero_like(value));
    v.push_back(std::move(value));
    return Poly(std::move(v));
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for the zero polynomial

  const std::vector<C>& coeffs() const { return c_; }

  const C& operator[](std::size_t i) const { return c_[i]; }

  /* Coefficient of x^i, with zeros beyond the degree. Undefined on the zero
   * polynomial (no element to derive a backend from). */
  C coeff(std::size_t i) const {
    if (c_.empty()) throw Error("coeff() on the zero polynomial");
    if (i < c_.size()) return c_[i];
    return coeff_zero_like(c_.front());
  }

  const C& leading() const {
    if (c_.empty()) throw Error("leading() on the zero polynomial");
    return c_.back();
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    const auto& longer = a.c_.size() >= b.c_.size() ? a.c_ : b.c_;
    const auto& shorter = a.c_.size() >= b.c_.size() ? b.c_ : a.c_;
    std::vector<C> out;
    out.reserve(longer.size());
    for (std::size_t i = 0; i < shorter.size(); ++i) out.push_back(longer[i] + shorter[i]);
    for (std::size_t i = shorter.size(); i < longer.size(); ++i) out.push_back(longer[i]);
    return Poly(std::move(out));
  }

  Poly operator-() const {
    std::vector<C> out;
    out.reserve(c_.size());
    for (const auto& c : c_) out.push_back(-c);
    return Poly(std::move(out));
  }

  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    const std::size_t m = a.c_.size(), n = b.c_.size();
    std::vector<C> out;
    out.reserve(m + n - 1);
    for (std::size_t k = 0; k + 1 <= m + n - 1; ++k) {
      const std::size_t ilo = k >= n - 1 ? k - (n - 1) : 0;
      const std::size_t ihi = std::min(k, m - 1);
      C acc = a.c_[ilo] * b.c_[k - ilo];
      for (std::size_t i = ilo + 1; i <= ihi; ++i) acc = acc + a.c_[i] * b.c_[k - i];
      out.push_back(std::move(acc));
    }
    return Poly(std::move(out));
  }

  Poly scaled(const C& s) const {
    if (coeff_is_zero(s)) return Poly();
    std::vector<C> out;
    out.reserve(c_.size());
    for (const auto& c : c_) out.push_back(c * s);
    return Poly(std::move(out));
  }

  /* Multiply by x^k. */
  Poly shifted_up(std::size_t k) const {
    if (is_zero() || k == 0) return *this;
    std::vector<C> out;
    out.reserve(c_.size() + k);
    for (std::size_t i = 0; i < k; ++i) out.push_back(coeff_zero_like(c_.front()));
    for (const auto& c : c_) out.push_back(c);
    return Poly(std::move(out));
  }

  /* Horner evaluation at a point of the coefficient ring. */
  C eval(const C& x) const {
    if (c_.empty()) return coeff_zero_like(x);
    C acc = c_.back();
    for (std::size_t i = c_.size() - 1; i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  Scalar eval_scalar(const Scalar& x) const
    requires std::is_same_v<C, Scalar>
  {
    return eval(x);
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  /* Division when the divisor's leading coefficient is an exact unit (field
   * coefficients, or a monic divisor over a nested ring). */
  friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
    if (a.is_zero() || a.degree() < b.degree()) return {Poly(), a};
    std::vector<C> rem = a.c_;
    const std::size_t qn = a.c_.size() - b.c_.size() + 1;
    std::vector<C> quot;
    quot.reserve(qn);
    for (std::size_t i = 0; i < qn; ++i) quot.push_back(coeff_zero_like(a.c_.front()));
    for (std::size_t k = qn; k-- > 0;) {
      const C& top = rem[b.c_.size() - 1 + k];
      if (coeff_is_zero(top)) continue;
      C c = coeff_is_one(b.c_.back()) ? top : coeff_div(top, b.c_.back());
      for (std::size_t i = 0; i < b.c_.size(); ++i) rem[i + k] = rem[i + k] - c * b.c_[i];
      quot[k] = std::move(c);
    }
    return {Poly(std::move(quot)), Poly(std::move(rem))};
  }

  /* Exact division; throws if a remainder survives. */
  friend Poly divide_exact(const Poly& a, const Poly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw ExactDivisionFailed("polynomial division left a remainder");
    return q;
  }

  Poly monic() const {
    if (is_zero()) return *this;
    if (coeff_is_one(c_.back())) return *this;
    std::vector<C> out;
    out.reserve(c_.size());
    for (const auto& c : c_) out.push_back(coeff_div(c, c_.back()));
    return Poly(std::move(out));
  }

  std::string str() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i) os << ", ";
      os << coeff_str(c_[i]);
    }
    if (c_.empty()) os << "0";
    os << ']';
    return os.str();
  }

 private:
  static std::string coeff_str(const Scalar& c) { return c.str(); }
  template <typename D>
  static std::string coeff_str(const Poly<D>& c) {
    return c.str();
  }

  void trim() {
    while (!c_.empty() && coeff_is_zero(c_.back())) c_.pop_back();
  }

  std::vector<C> c_;
};

template <typename C>
Poly<C> coeff_one_like(const Poly<C>& p) {
  if (p.is_zero()) throw Error("one_like of a zero polynomial has no backend sample");
  return Poly<C>::constant(coeff_one_like(p[0]));
}

template <typename C>
Poly<C> coeff_scale(const Poly<C>& p, const Scalar& s) {
  std::vector<C> out;
  out.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) out.push_back(coeff_scale(c, s));
  return Poly<C>(std::move(out));
}

template <typename C>
Poly<C> coeff_div(const Poly<C>& a, const Poly<C>& b) {
  return divide_exact(a, b);
}

/* Monic gcd over field coefficients. */
template <typename C>
Poly<C> poly_gcd(Poly<C> a, Poly<C> b) {
  while (!b.is_zero()) {
    b = b.monic();
    Poly<C> r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

using PolyX = Poly<Scalar>;
using PolyXY = Poly<Poly<Scalar>>;  // outer x, inner y

namespace detail {

/* Polynomials in x with coefficients in Q[Z]: the denominator-free view of
 * PolyX used by the gcd below. */
using XZPoly = std::vector<QQPoly>;

inline void xz_trim(XZPoly& p) {
  while (!p.empty() && p.back().empty()) p.pop_back();
}

inline void xz_make_primitive(XZPoly& p) {
  if (p.empty()) return;
  QQPoly content;
  for (const QQPoly& c : p) {
    content = qq_gcd(content, c);
    if (content.size() == 1) break;  // already a unit
  }
  if (content.size() > 1)
    for (QQPoly& c : p) c = qq_divmod(c, content).first;
}

/* Fraction-free pseudo-remainder in x over Q[Z]. */
inline XZPoly xz_prem(XZPoly a, const XZPoly& b) {
  const std::size_t db = b.size() - 1;
  const QQPoly lb = b.back();
  while (!a.empty() && a.size() - 1 >= db) {
    QQPoly la = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (QQPoly& v : a) v = qq_mul(v, lb);
    for (std::size_t i = 0; i < b.size(); ++i)
      a[i + shift] = qq_sub(a[i + shift], qq_mul(la, b[i]));
    xz_trim(a);
  }
  return a;
}

/* Clear the Q(Z) denominators of a PolyX: returns coefficients in Q[Z]. */
inline XZPoly xz_from_polyx(const Poly<Scalar>& p) {
  QQPoly common_den = qq_const(Rational(1));
  for (const Scalar& c : p.coeffs()) {
    const QQPoly& d = c.zrat().den();
    QQPoly g = qq_gcd(common_den, d);
    common_den = qq_mul(common_den, qq_divmod(d, g).first);
  }
  XZPoly out;
  out.reserve(p.coeffs().size());
  for (const Scalar& c : p.coeffs())
    out.push_back(qq_mul(c.zrat().num(), qq_divmod(common_den, c.zrat().den()).first));
  xz_trim(out);
  return out;
}

}  // namespace detail

/* Monic gcd in x over the exact field Q(Z). Denominators are cleared first
 * and the primitive pseudo-remainder sequence runs over Q[Z], which avoids
 * the expression swell a fraction-field Euclid suffers here. */
inline PolyX poly_gcd(const PolyX& a, const PolyX& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (!a.leading().is_exact() || !b.leading().is_exact()) throw BackendMismatch();
  PolyX one = PolyX::constant(Scalar::one_like(a.leading()));
  if (a.degree() == 0 || b.degree() == 0) return one;
  detail::XZPoly pa = detail::xz_from_polyx(a);
  detail::XZPoly pb = detail::xz_from_polyx(b);
  detail::xz_make_primitive(pa);
  detail::xz_make_primitive(pb);
  if (pa.size() < pb.size()) std::swap(pa, pb);
  while (!pb.empty()) {
    detail::XZPoly r = detail::xz_prem(pa, pb);
    detail::xz_make_primitive(r);
    pa = std::move(pb);
    pb = std::move(r);
  }
  if (pa.size() == 1) return one;
  std::vector<Scalar> coeffs;
  coeffs.reserve(pa.size());
  for (detail::QQPoly& c : pa) coeffs.push_back(Scalar::exact(ZRat(std::move(c), detail::qq_const(Rational(1)))));
  return PolyX(std::move(coeffs)).monic();
}

/* Reduced rational functions in x over Scalar: gcd(num, den) = 1, den monic,
 * zero = 0/1, so residual-is-zero checks are `num().is_zero()` tests and
 * equality is canonical-form comparison. Reduction is skipped in the approx
 * backend (gcd on floating coefficients is meaningless; approx rational
 * functions are only ever evaluated).
 */
class RatFunX {
 public:
  RatFunX(PolyX num, PolyX den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
    reduce();
  }

  static RatFunX from_poly(PolyX p) {
    if (p.is_zero()) throw Error("use zero_like to build a zero rational function");
    PolyX den = PolyX::constant(Scalar::one_like(p[0]));
    return RatFunX(std::move(p), std::move(den));
  }

  /* For num/den pairs that are coprime by construction (e.g. images of a
   * canonical value under a ring automorphism such as x -> q^l x). Only the
   * monic normalization is applied. */
  static RatFunX assume_reduced(PolyX num, PolyX den) {
    if (den.is_zero()) throw DivisionByZero("rational function with zero denominator");
    return canonical(std::move(num), std::move(den));
  }

  static RatFunX from_scalar(const Scalar& s) {
    return RatFunX(PolyX::constant(s), PolyX::constant(Scalar::one_like(s)));
  }

  static RatFunX zero_like(const Scalar& sample) {
    return RatFunX(PolyX(), PolyX::constant(Scalar::one_like(sample)));
  }
  static RatFunX one_like(const Scalar& sample) { return from_scalar(Scalar::one_like(sample)); }

  const PolyX& num() const { return num_; }
  const PolyX& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  /* Sums and products keep the canonical form by construction (cross- and
   * shared-factor cancellation in the style of Henrici); a blind gcd of the
   * full-size results is never taken. */
  friend RatFunX operator+(const RatFunX& a, const RatFunX& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (!a.exact())
      return RatFunX(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    PolyX g = poly_gcd(a.den_, b.den_);
    if (g.degree() == 0) {
      // coprime denominators: the sum is already reduced
      return canonical(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    PolyX ad = divide_exact(a.den_, g);
    PolyX bd = divide_exact(b.den_, g);
    PolyX t = a.num_ * bd + b.num_ * ad;
    if (t.is_zero()) return zero_like(a.den_.leading());
    PolyX h = poly_gcd(t, g);
    if (h.degree() > 0) {
      t = divide_exact(t, h);
      g = divide_exact(g, h);
    }
    return canonical(std::move(t), ad * bd * g);
  }

  friend RatFunX operator-(const RatFunX& a, const RatFunX& b) { return a + (-b); }

  RatFunX operator-() const {
    RatFunX r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend RatFunX operator*(const RatFunX& a, const RatFunX& b) {
    if (a.is_zero()) return a;
    if (b.is_zero()) return b;
    if (a.exact() && (a.den_.degree() > 0 || b.den_.degree() > 0)) {
      PolyX g1 = poly_gcd(a.num_, b.den_);
      PolyX g2 = poly_gcd(b.num_, a.den_);
      return canonical(divide_exact(a.num_, g1) * divide_exact(b.num_, g2),
                       divide_exact(a.den_, g2) * divide_exact(b.den_, g1));
    }
    return canonical(a.num_ * b.num_, a.den_ * b.den_);
  }

  friend RatFunX operator/(const RatFunX& a, const RatFunX& b) {
    if (b.is_zero()) throw DivisionByZero();
    return a * b.inverse();
  }

  RatFunX inverse() const {
    if (is_zero()) throw DivisionByZero();
    return canonical(den_, num_);
  }

  RatFunX pow(long e) const {
    Scalar sample = den_[0];
    if (e == 0) return one_like(sample);
    RatFunX base = e < 0 ? inverse() : *this;
    unsigned long n = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    RatFunX acc = one_like(sample);
    while (n > 0) {
      if (n & 1) acc = acc * base;
      base = base * base;
      n >>= 1;
    }
    return acc;
  }

  friend bool operator==(const RatFunX& a, const RatFunX& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFunX& a, const RatFunX& b) { return !(a == b); }

  /* True when the reduced denominator is the constant 1. */
  bool is_polynomial() const { return den_.degree() == 0 && den_[0].is_one(); }

  Scalar eval(const Scalar& x) const {
    Scalar d = den_.eval_scalar(x);
    if (d.is_zero()) throw DivisionByZero("rational function evaluated at a pole");
    return num_.eval_scalar(x) / d;
  }

  std::string str() const { return num_.str() + " / " + den_.str(); }

 private:
  struct AlreadyCanonical {};
  RatFunX(PolyX num, PolyX den, AlreadyCanonical) : num_(std::move(num)), den_(std::move(den)) {
    if (num_.is_zero()) {
      den_ = PolyX::constant(Scalar::one_like(den_.leading()));
      return;
    }
    if (!den_.leading().is_one()) {
      Scalar lead = den_.leading();
      num_ = num_.scaled(lead.inverse());
      den_ = den_.scaled(lead.inverse());
    }
  }

  /* For results whose num/den are coprime by construction. */
  static RatFunX canonical(PolyX num, PolyX den) {
    return RatFunX(std::move(num), std::move(den), AlreadyCanonical{});
  }

  bool exact() const { return den_.leading().is_exact(); }

  void reduce() {
    if (num_.is_zero()) {
      den_ = PolyX::constant(Scalar::one_like(den_[0]));
      return;
    }
    if (den_.degree() > 0 && exact()) {
      PolyX g = poly_gcd(num_, den_);
      if (g.degree() > 0) {
        num_ = divide_exact(num_, g);
        den_ = divide_exact(den_, g);
      }
    }
    if (!den_.leading().is_one()) {
      Scalar lead = den_.leading();
      num_ = num_.scaled(lead.inverse());
      den_ = den_.scaled(lead.inverse());
    }
  }

  PolyX num_;
  PolyX den_;
};

}  // namespace qsobolev

#endif
