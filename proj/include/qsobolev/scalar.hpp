#ifndef QSOBOLEV_SCALAR_HPP
#define QSOBOLEV_SCALAR_HPP

/* A Scalar is an element of the coefficient field under the active backend:
 * exact (a ZRat in Q(Z)) or approx (a high-precision real with Z already
 * substituted). Arithmetic never crosses backends; mixing throws
 * BackendMismatch. Values are immutable and safe to share across threads.
 */

#include <string>
#include <variant>

#include "qsobolev/bigfloat.hpp"
#include "qsobolev/errors.hpp"
#include "qsobolev/rational.hpp"
#include "qsobolev/zrat.hpp"

namespace qsobolev {

enum class Backend { exact, approx };

class Scalar {
 public:
  Scalar() : v_(ZRat()) {}
  static Scalar exact(ZRat z) { return Scalar(std::variant<ZRat, BigFloat>(std::move(z))); }
  static Scalar exact(const Rational& r) { return exact(ZRat(r)); }
  static Scalar approx(BigFloat x) { return Scalar(std::variant<ZRat, BigFloat>(std::move(x))); }

  Backend backend() const { return std::holds_alternative<ZRat>(v_) ? Backend::exact : Backend::approx; }
  bool is_exact() const { return backend() == Backend::exact; }

  const ZRat& zrat() const {
    if (!is_exact()) throw BackendMismatch();
    return std::get<ZRat>(v_);
  }
  const BigFloat& real() const {
    if (is_exact()) throw BackendMismatch();
    return std::get<BigFloat>(v_);
  }

  bool is_zero() const { return is_exact() ? zrat().is_zero() : real() == 0; }
  bool is_one() const { return is_exact() ? zrat().is_one() : real() == 1; }

  static Scalar zero_like(const Scalar& s) {
    return s.is_exact() ? exact(ZRat()) : approx(bigfloat(0L));
  }
  static Scalar one_like(const Scalar& s) {
    return s.is_exact() ? exact(ZRat(Rational(1))) : approx(bigfloat(1L));
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    check(a, b);
    if (a.is_exact()) return exact(a.zrat() + b.zrat());
    return approx(a.real() + b.real());
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    check(a, b);
    if (a.is_exact()) return exact(a.zrat() - b.zrat());
    return approx(a.real() - b.real());
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    check(a, b);
    if (a.is_exact()) return exact(a.zrat() * b.zrat());
    return approx(a.real() * b.real());
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    check(a, b);
    if (b.is_zero()) throw DivisionByZero();
    if (a.is_exact()) return exact(a.zrat() / b.zrat());
    return approx(a.real() / b.real());
  }
  Scalar operator-() const {
    if (is_exact()) return exact(-zrat());
    return approx(-real());
  }
  Scalar inverse() const {
    if (is_zero()) throw DivisionByZero();
    if (is_exact()) return exact(zrat().inverse());
    return approx(bigfloat(1L) / real());
  }
  Scalar pow(long e) const {
    if (is_exact()) return exact(zrat().pow(e));
    return approx(bf_pow(real(), e));
  }

  /* Exact backend: canonical-form equality in Q(Z). Approx: numeric equality
   * (only meaningful for structural checks such as trailing-zero trims). */
  friend bool operator==(const Scalar& a, const Scalar& b) {
    check(a, b);
    if (a.is_exact()) return a.zrat() == b.zrat();
    return a.real() == b.real();
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /* Substitute a numeric value for Z (exact backend only). */
  BigFloat eval_z(const BigFloat& z) const { return zrat().eval(z); }

  std::string str() const { return is_exact() ? zrat().str() : bigfloat_str(real()); }

 private:
  explicit Scalar(std::variant<ZRat, BigFloat> v) : v_(std::move(v)) {}
  static void check(const Scalar& a, const Scalar& b) {
    if (a.backend() != b.backend()) throw BackendMismatch();
  }

  std::variant<ZRat, BigFloat> v_;
};

}  // namespace qsobolev

#endif
