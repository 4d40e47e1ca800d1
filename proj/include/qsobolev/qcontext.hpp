#ifndef QSOBOLEV_QCONTEXT_HPP
#define QSOBOLEV_QCONTEXT_HPP

/* Fixed parameters of a computation: the base q in (0,1), the family
 * parameter a < 0, the two point masses lambda, mu >= 0, the derivative
 * order j >= 1, and the backend. The context also owns the constant Z:
 * the formal generator in the exact backend, the numeric value of
 * (q;q)oo (a;q)oo (a^{-1}q;q)oo in the approx one.
 */

#include <string>

#include "qsobolev/errors.hpp"
#include "qsobolev/scalar.hpp"

namespace qsobolev {

namespace detail {

/* Truncated infinite product prod_{i>=0}(1 - c q^i) with the geometric tail
 * bound |c| q^N / (1-q) < tol as the stopping rule. */
inline BigFloat pochhammer_inf_numeric(const BigFloat& c, const BigFloat& q, double tol) {
  if (!(tol > 0)) throw ToleranceNotPositive();
  BigFloat bound = bigfloat(tol);
  BigFloat prod = bigfloat(1L);
  BigFloat cq = c;  // c q^i
  BigFloat one_minus_q = bigfloat(1L) - q;
  while (bf_abs(cq) / one_minus_q >= bound) {
    prod *= (bigfloat(1L) - cq);
    cq *= q;
  }
  return prod;
}

}  // namespace detail

class QContext {
 public:
  QContext(Rational q, Rational a, Rational lambda, Rational mu, int j,
           Backend backend = Backend::exact, double approx_tolerance = 1e-35)
      : q_(std::move(q)),
        a_(std::move(a)),
        lambda_(std::move(lambda)),
        mu_(std::move(mu)),
        j_(j),
        backend_(backend),
        approx_tolerance_(approx_tolerance) {
    if (!(q_ > 0 && q_ < 1)) throw Error("q must satisfy 0 < q < 1");
    if (!(a_ < 0)) throw Error("a must be negative");
    if (lambda_ < 0 || mu_ < 0) throw Error("lambda and mu must be nonnegative");
    if (j_ < 1) throw Error("j must be a positive integer");
    if (!(approx_tolerance_ > 0)) throw ToleranceNotPositive();
    if (backend_ == Backend::exact) {
      z_ = Scalar::exact(ZRat::generator());
    } else {
      BigFloat qf = bigfloat(q_);
      BigFloat af = bigfloat(a_);
      BigFloat prod = detail::pochhammer_inf_numeric(qf, qf, approx_tolerance_) *
                      detail::pochhammer_inf_numeric(af, qf, approx_tolerance_) *
                      detail::pochhammer_inf_numeric(qf / af, qf, approx_tolerance_);
      z_ = Scalar::approx(prod);
    }
  }

  const Rational& q() const { return q_; }
  const Rational& a() const { return a_; }
  const Rational& lambda() const { return lambda_; }
  const Rational& mu() const { return mu_; }
  int j() const { return j_; }
  Backend backend() const { return backend_; }
  double approx_tolerance() const { return approx_tolerance_; }

  /* The constant Z in the active backend. */
  const Scalar& z() const { return z_; }

  /* Lift a rational constant into the active backend. */
  Scalar scalar(const Rational& r) const {
    if (backend_ == Backend::exact) return Scalar::exact(r);
    return Scalar::approx(bigfloat(r));
  }
  Scalar integer(long n) const { return scalar(Rational(n)); }
  Scalar zero() const { return integer(0); }
  Scalar one() const { return integer(1); }

  /* q^m as an exact rational, for any integer m. */
  Rational q_pow(long m) const { return rational_pow(q_, m); }

  Scalar q_scalar() const { return scalar(q_); }
  Scalar a_scalar() const { return scalar(a_); }

  std::string describe() const {
    return "q=" + rational_str(q_) + " a=" + rational_str(a_) + " lambda=" + rational_str(lambda_) +
           " mu=" + rational_str(mu_) + " j=" + std::to_string(j_) +
           (backend_ == Backend::exact ? " exact" : " approx");
  }

 private:
  Rational q_, a_, lambda_, mu_;
  int j_;
  Backend backend_;
  double approx_tolerance_;
  Scalar z_;
};

}  // namespace qsobolev

#endif
