#ifndef QSOBOLEV_QCORE_HPP
#define QSOBOLEV_QCORE_HPP

/* q-calculus primitives over a QContext: q-integers for every integer index,
 * q-factorials and binomials, finite and infinite q-Pochhammer symbols, the
 * q-falling factorial, terminating basic hypergeometric sums, and the numeric
 * Jackson integral against the Al-Salam-Carlitz I weight (the oracle all
 * exact norms are checked against).
 */

#include <vector>

#include "qsobolev/qcontext.hpp"
#include "qsobolev/qpoly.hpp"

namespace qsobolev {

/* [m]_q, all integer m (negative indices via q^m = 1/q^{-m}). */
inline Scalar q_number(const QContext& ctx, long m) { return ctx.scalar(q_int_rational(ctx, m)); }

inline Scalar q_factorial(const QContext& ctx, long n) {
  return ctx.scalar(q_factorial_rational(ctx, n));
}

inline Scalar q_binomial(const QContext& ctx, long n, long k) {
  if (k < 0 || k > n) throw IndexOutOfRange("q_binomial requires 0 <= k <= n");
  return ctx.scalar(q_factorial_rational(ctx, n) /
                    (q_factorial_rational(ctx, k) * q_factorial_rational(ctx, n - k)));
}

/* (c;q)_n = prod_{i=1}^{n} (1 - c q^{i-1}). */
inline Scalar q_pochhammer(const QContext& ctx, const Scalar& c, long n) {
  if (n < 0) throw IndexOutOfRange("q_pochhammer requires n >= 0");
  Scalar one = Scalar::one_like(c);
  Scalar acc = one;
  Scalar cq = c;
  for (long i = 0; i < n; ++i) {
    acc = acc * (one - cq);
    cq = cq * ctx.q_scalar();
  }
  return acc;
}

inline Rational q_pochhammer_rational(const QContext& ctx, const Rational& c, long n) {
  Rational acc(1);
  Rational cq = c;
  for (long i = 0; i < n; ++i) {
    acc *= (Rational(1) - cq);
    cq *= ctx.q();
  }
  return acc;
}

/* (c;q)_oo, truncated; stops once the geometric tail bound |c| q^N / (1-q)
 * drops below tol. Approx backend only. */
inline BigFloat q_pochhammer_inf(const QContext& ctx, const BigFloat& c, double tol) {
  if (!(tol > 0)) throw ToleranceNotPositive();
  return detail::pochhammer_inf_numeric(c, bigfloat(ctx.q()), tol);
}

/* [n]_q^{(k)} = (q^{-n};q)_k (q-1)^{-k} q^{kn - C(k,2)} = [n]_q [n-1]_q ... [n-k+1]_q. */
inline Scalar q_falling_factorial(const QContext& ctx, long n, long k) {
  if (k < 0 || k > n) throw IndexOutOfRange("q_falling_factorial requires 0 <= k <= n");
  Rational poch = q_pochhammer_rational(ctx, ctx.q_pow(-n), k);
  Rational scale = rational_pow(ctx.q() - Rational(1), -k) * ctx.q_pow(k * n - k * (k - 1) / 2);
  return ctx.scalar(poch * scale);
}

/* Terminating r+1 phi r sum:
 *   sum_{k=0}^{kmax} prod(u;q)_k / [prod(l;q)_k (q;q)_k] z^k,
 * the balanced case where the (-1)^k q^{C(k,2)} factor is absent. A zero
 * upper parameter entry is allowed (absent lower entries count as (0;q)_k = 1).
 */
inline Scalar phi_terminating(const QContext& ctx, const std::vector<Scalar>& upper,
                              const std::vector<Scalar>& lower, const Scalar& z, long kmax) {
  Scalar one = Scalar::one_like(z);
  Scalar term = one;
  Scalar acc = one;
  Scalar qk = Scalar::one_like(z);  // q^k
  for (long k = 0; k < kmax; ++k) {
    Scalar ratio = z;
    for (const Scalar& u : upper) ratio = ratio * (one - u * qk);
    for (const Scalar& l : lower) ratio = ratio / (one - l * qk);
    ratio = ratio / (one - ctx.q_scalar() * qk);  // (1 - q^{k+1})
    term = term * ratio;
    if (term.is_zero()) break;
    acc = acc + term;
    qk = qk * ctx.q_scalar();
  }
  return acc;
}

/* Numeric Jackson integral of a polynomial against the (unnormalised)
 * Al-Salam-Carlitz I weight on [a,1]:
 *
 *   I(f) = (1-q) sum_{k>=0} q^k [ f(q^k)  (q;q)oo (a^{-1}q;q)oo / ((q;q)_k (a^{-1}q;q)_k)
 *                               - a f(aq^k) (q;q)oo (aq;q)oo   / ((q;q)_k (aq;q)_k) ].
 *
 * With this normalisation I(U_n U_m) = Z h_n delta_{nm}. Truncation uses the
 * explicit geometric tail bound
 *   (F_1 W_1 + |a| F_a W_2) q^{N+1} < tol,
 * where F_1, F_a bound |f| on the two lattices by coefficient sums and
 * W_1 = (a^{-1}q;q)oo, W_2 = (aq;q)oo bound the weight ratios (both lattices
 * have nonpositive bases, so the finite Pochhammer factors are >= 1 and
 * (q;q)_k >= (q;q)oo).
 */
inline BigFloat jackson_integral_numeric(const QContext& ctx, const PolyX& f, double tol) {
  if (!(tol > 0)) throw ToleranceNotPositive();
  if (ctx.backend() != Backend::approx) throw BackendMismatch();

  const BigFloat q = bigfloat(ctx.q());
  const BigFloat a = bigfloat(ctx.a());
  const double ptol = ctx.approx_tolerance();
  const BigFloat qq_inf = detail::pochhammer_inf_numeric(q, q, ptol);
  const BigFloat aiq_inf = detail::pochhammer_inf_numeric(q / a, q, ptol);
  const BigFloat aq_inf = detail::pochhammer_inf_numeric(a * q, q, ptol);

  BigFloat f_bound_1 = bigfloat(0L);
  BigFloat f_bound_a = bigfloat(0L);
  BigFloat apow = bigfloat(1L);
  for (const Scalar& c : f.coeffs()) {
    f_bound_1 += bf_abs(c.real());
    f_bound_a += bf_abs(c.real()) * apow;
    apow *= bf_abs(a);
  }
  const BigFloat tail_scale = f_bound_1 * aiq_inf + bf_abs(a) * f_bound_a * aq_inf;
  const BigFloat tol_bf = bigfloat(tol);

  BigFloat sum = bigfloat(0L);
  BigFloat qk = bigfloat(1L);        // q^k
  BigFloat poch_q = bigfloat(1L);    // (q;q)_k
  BigFloat poch_aiq = bigfloat(1L);  // (a^{-1}q;q)_k
  BigFloat poch_aq = bigfloat(1L);   // (aq;q)_k
  for (long k = 0;; ++k) {
    BigFloat x1 = qk;
    BigFloat x2 = a * qk;
    BigFloat f1 = f.eval(Scalar::approx(x1)).real();
    BigFloat f2 = f.eval(Scalar::approx(x2)).real();
    BigFloat w1 = qq_inf * aiq_inf / (poch_q * poch_aiq);
    BigFloat w2 = qq_inf * aq_inf / (poch_q * poch_aq);
    sum += qk * (f1 * w1 - a * f2 * w2);
    poch_q *= (bigfloat(1L) - q * qk);
    poch_aiq *= (bigfloat(1L) - (q / a) * qk);
    poch_aq *= (bigfloat(1L) - (a * q) * qk);
    qk *= q;
    if (tail_scale * qk < tol_bf) break;
  }
  return (bigfloat(1L) - q) * sum;
}

}  // namespace qsobolev

#endif
