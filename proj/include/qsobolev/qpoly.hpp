#ifndef QSOBOLEV_QPOLY_HPP
#define QSOBOLEV_QPOLY_HPP

/* q-difference operators on polynomials and rational functions:
 *   dilation        p(x) -> p(q^l x)
 *   q-derivative    (D_{q^l} p)(x) = (p(q^l x) - p(x)) / ((q^l - 1) x)
 * together with the Jackson-Hahn-Cigler power (x [-]_q y)^n and the q-Taylor
 * expansion built from it. D_{q^l} maps x^k to [k]_{q^l} x^{k-1}, which is
 * what the coefficient loops below implement; the difference-quotient form
 * is recovered exactly and is checked by the test suite.
 */

#include <vector>

#include "qsobolev/poly.hpp"
#include "qsobolev/qcontext.hpp"

namespace qsobolev {

/* [m]_{q^l} = (1 - q^{lm}) / (1 - q^l), defined for every integer m. */
inline Rational q_int_rational(const QContext& ctx, long m, int ell = 1) {
  Rational qe = ctx.q_pow(ell);
  if (m == 0) return Rational(0);
  return (Rational(1) - rational_pow(qe, m)) / (Rational(1) - qe);
}

inline Rational q_factorial_rational(const QContext& ctx, long n) {
  Rational acc(1);
  for (long i = 1; i <= n; ++i) acc *= q_int_rational(ctx, i);
  return acc;
}

template <typename C>
Poly<C> poly_dilate(const QContext& ctx, const Poly<C>& p, int ell) {
  std::vector<C> out;
  out.reserve(p.coeffs().size());
  for (std::size_t k = 0; k < p.coeffs().size(); ++k)
    out.push_back(coeff_scale(p[k], ctx.scalar(ctx.q_pow(static_cast<long>(ell) * static_cast<long>(k)))));
  return Poly<C>(std::move(out));
}

template <typename C>
Poly<C> q_derivative(const QContext& ctx, const Poly<C>& p, int ell) {
  if (p.degree() < 1) return Poly<C>();
  std::vector<C> out;
  out.reserve(p.coeffs().size() - 1);
  for (std::size_t k = 1; k < p.coeffs().size(); ++k)
    out.push_back(coeff_scale(p[k], ctx.scalar(q_int_rational(ctx, static_cast<long>(k), ell))));
  return Poly<C>(std::move(out));
}

template <typename C>
Poly<C> q_derivative_iter(const QContext& ctx, Poly<C> p, int ell, int k) {
  for (int i = 0; i < k; ++i) p = q_derivative(ctx, p, ell);
  return p;
}

inline Scalar q_derivative_at(const QContext& ctx, const PolyX& p, int ell, int k, const Scalar& x0) {
  return q_derivative_iter(ctx, p, ell, k).eval(x0);
}

/* (x [-]_q y)^n = prod_{i=0}^{n-1} (x - y q^i), monic of degree n in x. */
inline PolyX boxminus_pow(const QContext& ctx, const Scalar& y, int n) {
  Scalar one = Scalar::one_like(y);
  PolyX acc = PolyX::constant(one);
  Scalar yq = y;
  for (int i = 0; i < n; ++i) {
    acc = acc * PolyX(std::vector<Scalar>{-yq, one});
    yq = yq * ctx.q_scalar();
  }
  return acc;
}

/* Truncated q-Taylor expansion of p at alpha:
 *   sum_{k=0}^{m} (D_q^k p)(alpha) / [k]_q! * (x [-]_q alpha)^k.
 * Exact reconstruction of p whenever m >= deg p. */
inline PolyX q_taylor_polynomial(const QContext& ctx, const PolyX& p, const Scalar& alpha, int m) {
  PolyX acc;
  PolyX deriv = p;
  for (int k = 0; k <= m; ++k) {
    if (deriv.is_zero()) break;
    Scalar coeff = deriv.eval(alpha) / ctx.scalar(q_factorial_rational(ctx, k));
    acc = acc + boxminus_pow(ctx, alpha, k).scaled(coeff);
    deriv = q_derivative(ctx, deriv, 1);
  }
  return acc;
}

inline RatFunX ratfun_dilate(const QContext& ctx, const RatFunX& r, int ell) {
  if (r.is_zero()) return r;
  // dilation is a ring automorphism: the image of a reduced pair is reduced
  return RatFunX::assume_reduced(poly_dilate(ctx, r.num(), ell), poly_dilate(ctx, r.den(), ell));
}

/* D_{q^l}(P/Q) = (P(q^l x) Q(x) - P(x) Q(q^l x)) / ((q^l - 1) x Q(x) Q(q^l x)). */
inline RatFunX q_derivative_rat(const QContext& ctx, const RatFunX& r, int ell) {
  if (r.is_zero()) return r;
  Scalar one = Scalar::one_like(r.den().leading());
  PolyX num_shift = poly_dilate(ctx, r.num(), ell);
  PolyX den_shift = poly_dilate(ctx, r.den(), ell);
  PolyX num = num_shift * r.den() - r.num() * den_shift;
  Scalar factor = ctx.scalar(ctx.q_pow(ell) - Rational(1));
  PolyX den = (r.den() * den_shift).scaled(factor).shifted_up(1);
  if (num.is_zero()) return RatFunX::zero_like(one);
  return RatFunX(std::move(num), std::move(den));
}

inline RatFunX ratfun_q_derivative(const QContext& ctx, const RatFunX& r, int ell) {
  return q_derivative_rat(ctx, r, ell);
}

}  // namespace qsobolev

#endif
