#ifndef QSOBOLEV_ASC_HPP
#define QSOBOLEV_ASC_HPP

/* The classical Al-Salam-Carlitz I family U_n^{(a)}(x;q):
 *
 *   x U_n = U_{n+1} + beta_n U_n + gamma_n U_{n-1},
 *       beta_n = (a+1) q^n, gamma_n = -a q^{n-1} (1 - q^n),
 *
 * plus the terminating 2phi1 construction, squared norms Z h_n with
 *   h_n = (-a)^n (1-q) (q;q)_n q^{C(n,2)},
 * the structure relation, forward shift, the classical second-order
 * q-difference equation, Christoffel-Darboux kernels with their partial
 * q-derivatives, and the rational coefficients A_n, B_n that express the
 * kernel K_{n-1}^{(0,j)}(x, y0) through U_n and U_{n-1}.
 *
 * The polynomial cache is append-only; concurrent reads are safe and cache
 * extension is serialized by an internal mutex.
 */

#include <mutex>
#include <utility>
#include <vector>

#include "qsobolev/qcore.hpp"

namespace qsobolev {

/* U(x) V(y) as a nested polynomial (outer x, inner y). */
inline PolyXY tensor_product(const PolyX& ux, const PolyX& vy) {
  if (ux.is_zero() || vy.is_zero()) return PolyXY();
  std::vector<PolyX> out;
  out.reserve(ux.coeffs().size());
  for (const Scalar& c : ux.coeffs()) out.push_back(vy.scaled(c));
  return PolyXY(std::move(out));
}

inline PolyX bipoly_eval_y(const PolyXY& p, const Scalar& y0) {
  std::vector<Scalar> out;
  out.reserve(p.coeffs().size());
  for (const PolyX& c : p.coeffs()) out.push_back(c.eval(y0));
  return PolyX(std::move(out));
}

inline PolyX bipoly_eval_x(const PolyXY& p, const Scalar& x0) {
  if (p.is_zero()) return PolyX();
  PolyX acc = p.leading();
  for (std::size_t i = p.coeffs().size() - 1; i-- > 0;) acc = acc.scaled(x0) + p[i];
  return acc;
}

inline PolyXY bipoly_derivative_y(const QContext& ctx, const PolyXY& p, int ell) {
  std::vector<PolyX> out;
  out.reserve(p.coeffs().size());
  for (const PolyX& c : p.coeffs()) out.push_back(q_derivative(ctx, c, ell));
  return PolyXY(std::move(out));
}

inline PolyXY bipoly_transpose(const PolyXY& p) {
  int dx = p.degree();
  int dy = -1;
  for (const PolyX& c : p.coeffs()) dy = std::max(dy, c.degree());
  if (dx < 0 || dy < 0) return PolyXY();
  Scalar zero = Scalar::zero_like(p.leading().leading());
  std::vector<PolyX> out;
  out.reserve(dy + 1);
  for (int j = 0; j <= dy; ++j) {
    std::vector<Scalar> row;
    row.reserve(dx + 1);
    for (int i = 0; i <= dx; ++i) {
      const PolyX& c = p[i];
      row.push_back(j <= c.degree() ? c[j] : zero);
    }
    out.push_back(PolyX(std::move(row)));
  }
  return PolyXY(std::move(out));
}

class ASCFamily {
 public:
  explicit ASCFamily(const QContext& ctx) : ctx_(&ctx) {}

  ASCFamily(const ASCFamily&) = delete;
  ASCFamily& operator=(const ASCFamily&) = delete;

  const QContext& ctx() const { return *ctx_; }

  Rational beta_rational(int n) const { return (ctx_->a() + 1) * ctx_->q_pow(n); }
  Rational gamma_rational(int n) const {
    return -ctx_->a() * ctx_->q_pow(n - 1) * (Rational(1) - ctx_->q_pow(n));
  }
  Scalar beta(int n) const { return ctx_->scalar(beta_rational(n)); }
  Scalar gamma(int n) const { return ctx_->scalar(gamma_rational(n)); }

  /* Monic U_n by the three-term recurrence, cached. */
  PolyX poly(int n) const {
    if (n < 0) return PolyX();
    std::lock_guard<std::mutex> lock(mutex_);
    while (static_cast<int>(polys_.size()) <= n) {
      int m = static_cast<int>(polys_.size());
      if (m == 0) {
        polys_.push_back(PolyX::constant(ctx_->one()));
      } else {
        const PolyX& um = polys_[m - 1];
        PolyX next = um.shifted_up(1) - um.scaled(beta(m - 1));
        if (m >= 2) next = next - polys_[m - 2].scaled(gamma(m - 1));
        polys_.push_back(std::move(next));
      }
    }
    return polys_[n];
  }

  /* Same polynomial from the terminating basic hypergeometric sum
   *   U_n = (-a)^n q^{C(n,2)} sum_k (q^{-n};q)_k / (q;q)_k (a^{-1}q)^k prod_{i<k}(x - q^i),
   * where x^k (x^{-1};q)_k was expanded to keep everything polynomial. */
  PolyX hypergeometric_poly(int n) const {
    Rational pref = rational_pow(-ctx_->a(), n) * ctx_->q_pow(static_cast<long>(n) * (n - 1) / 2);
    PolyX sum;
    PolyX basis = PolyX::constant(ctx_->one());  // prod_{i<k} (x - q^i)
    Rational coeff(1);
    for (int k = 0; k <= n; ++k) {
      if (k > 0) {
        Rational ratio = (Rational(1) - ctx_->q_pow(-n + k - 1)) / (Rational(1) - ctx_->q_pow(k));
        coeff *= ratio * ctx_->q() / ctx_->a();
        basis = basis * PolyX(std::vector<Scalar>{-ctx_->scalar(ctx_->q_pow(k - 1)), ctx_->one()});
      }
      sum = sum + basis.scaled(ctx_->scalar(coeff));
    }
    return sum.scaled(ctx_->scalar(pref));
  }

  /* h_n with ||U_n||^2 = Z h_n. */
  Scalar reduced_norm(int n) const {
    Rational h = rational_pow(-ctx_->a(), n) * (Rational(1) - ctx_->q()) *
                 q_pochhammer_rational(*ctx_, ctx_->q(), n) *
                 ctx_->q_pow(static_cast<long>(n) * (n - 1) / 2);
    return ctx_->scalar(h);
  }

  Scalar norm_squared(int n) const { return ctx_->z() * reduced_norm(n); }

  /* sigma(x) = (x-1)(x-a) */
  PolyX sigma() const {
    return PolyX(std::vector<Scalar>{ctx_->a_scalar(), -(ctx_->one() + ctx_->a_scalar()), ctx_->one()});
  }

  /* tau(x) = (x - a - 1)/(1 - q) */
  PolyX tau() const {
    Scalar s = ctx_->scalar(Rational(1) / (Rational(1) - ctx_->q()));
    return PolyX(std::vector<Scalar>{-(ctx_->one() + ctx_->a_scalar()), ctx_->one()}).scaled(s);
  }

  Rational alpha_bar_rational(int n) const { return ctx_->q_pow(1 - n) * q_int_rational(*ctx_, n); }
  Rational beta_bar_rational(int n) const {
    return (ctx_->a() + 1) * ctx_->q() * q_int_rational(*ctx_, n);
  }
  Rational gamma_bar_rational(int n) const { return ctx_->a() * ctx_->q_pow(n) * q_int_rational(*ctx_, n); }
  Scalar alpha_bar(int n) const { return ctx_->scalar(alpha_bar_rational(n)); }
  Scalar beta_bar(int n) const { return ctx_->scalar(beta_bar_rational(n)); }
  Scalar gamma_bar(int n) const { return ctx_->scalar(gamma_bar_rational(n)); }

  /* sigma D_{q^{-1}} U_n - (alpha_bar_n U_{n+1} + beta_bar_n U_n + gamma_bar_n U_{n-1}) */
  PolyX structure_residual(int n) const {
    PolyX lhs = sigma() * q_derivative(*ctx_, poly(n), -1);
    PolyX rhs = poly(n + 1).scaled(alpha_bar(n)) + poly(n).scaled(beta_bar(n));
    if (n >= 1) rhs = rhs + poly(n - 1).scaled(gamma_bar(n));
    return lhs - rhs;
  }

  /* D_q^k U_n = [n]_q^{(k)} U_{n-k}, returned as the right-hand side. */
  PolyX forward_shift(int n, int k) const {
    if (k < 0 || k > n) throw IndexOutOfRange("forward shift requires 0 <= k <= n");
    return poly(n - k).scaled(q_falling_factorial(*ctx_, n, k));
  }

  Scalar eigenvalue(int n) const {
    // lambda_{n,q} = [n]_q ([1-n]_q sigma''/2 - tau') with sigma''/2 = 1, tau' = 1/(1-q)
    Rational lam = q_int_rational(*ctx_, n) *
                   (q_int_rational(*ctx_, 1 - n) - Rational(1) / (Rational(1) - ctx_->q()));
    return ctx_->scalar(lam);
  }

  /* sigma D_q D_{q^{-1}} U_n + tau D_q U_n + lambda_{n,q} U_n; zero for every n. */
  PolyX second_order_residual(int n) const {
    const PolyX& un = poly(n);
    PolyX term1 = sigma() * q_derivative(*ctx_, q_derivative(*ctx_, un, -1), 1);
    PolyX term2 = tau() * q_derivative(*ctx_, un, 1);
    return term1 + term2 + un.scaled(eigenvalue(n));
  }

  /* K_n(x,y) = sum_{k<=n} U_k(x) U_k(y) / (Z h_k); the Christoffel-Darboux
   * quotient form is computed alongside and must match exactly. */
  PolyXY cd_kernel_sum(int n) const {
    PolyXY acc;
    for (int k = 0; k <= n; ++k) {
      Scalar w = norm_squared(k).inverse();
      acc = acc + coeff_scale(tensor_product(poly(k), poly(k)), w);
    }
    return acc;
  }

  PolyXY cd_kernel_quotient(int n) const {
    PolyXY numer =
        tensor_product(poly(n + 1), poly(n)) - tensor_product(poly(n), poly(n + 1));
    PolyXY x_minus_y(std::vector<PolyX>{-PolyX::monomial(ctx_->one(), 1), PolyX::constant(ctx_->one())});
    PolyXY quot = divide_exact(numer, x_minus_y);
    return coeff_scale(quot, norm_squared(n).inverse());
  }

  PolyXY cd_kernel(int n) const {
    PolyXY sum = cd_kernel_sum(n);
    if (sum != cd_kernel_quotient(n))
      throw ExactDivisionFailed("Christoffel-Darboux forms disagree at n=" + std::to_string(n));
    return sum;
  }

  /* K_n^{(i,j')}(x,y) = sum_k D^i U_k(x) D^{j'} U_k(y) / (Z h_k). */
  PolyXY kernel_partial(int n, int i, int jp) const {
    PolyXY acc;
    for (int k = 0; k <= n; ++k) {
      PolyX dx = q_derivative_iter(*ctx_, poly(k), 1, i);
      PolyX dy = q_derivative_iter(*ctx_, poly(k), 1, jp);
      if (dx.is_zero() || dy.is_zero()) continue;
      acc = acc + coeff_scale(tensor_product(dx, dy), norm_squared(k).inverse());
    }
    return acc;
  }

  /* K_n^{(0,j')}(x, y0) as a polynomial in x. */
  PolyX kernel_eval_y(int n, int jp, const Scalar& y0) const {
    PolyX acc;
    for (int k = 0; k <= n; ++k) {
      Scalar dy = q_derivative_at(*ctx_, poly(k), 1, jp, y0);
      if (dy.is_zero()) continue;
      acc = acc + poly(k).scaled(dy / norm_squared(k));
    }
    return acc;
  }

  Scalar kernel_eval_xy(int n, int i, int jp, const Scalar& x0, const Scalar& y0) const {
    Scalar acc = ctx_->zero();
    for (int k = 0; k <= n; ++k) {
      Scalar dx = q_derivative_at(*ctx_, poly(k), 1, i, x0);
      Scalar dy = q_derivative_at(*ctx_, poly(k), 1, jp, y0);
      acc = acc + dx * dy / norm_squared(k);
    }
    return acc;
  }

  /* Coefficients with K_{n-1}^{(0,j)}(x,y0) = A_n(x,y0) U_n + B_n(x,y0) U_{n-1}:
   *
   *   A_n = [j]_q! / (Z h_{n-1} (x [-]_q y0)^{j+1}) sum_{k<=j} D^k U_{n-1}(y0)/[k]_q! (x [-]_q y0)^k
   *
   * and B_n the same with -U_n in place of U_{n-1}. The (x [-]_q y0)^{j+1}
   * denominators live in RatFunX and cancel against the numerators when the
   * combination A_n U_n + B_n U_{n-1} is formed; that reduction is verified,
   * not assumed. */
  std::pair<RatFunX, RatFunX> kernel_ab_coeffs(int n, const Scalar& y0) const {
    if (n < 1) throw IndexOutOfRange("kernel coefficients need n >= 1");
    const int j = ctx_->j();
    PolyX den = boxminus_pow(*ctx_, y0, j + 1);
    Scalar pref = q_factorial(*ctx_, j) / norm_squared(n - 1);
    auto taylor_sum = [&](const PolyX& u) {
      PolyX acc;
      for (int k = 0; k <= j; ++k) {
        Scalar c = q_derivative_at(*ctx_, u, 1, k, y0) / q_factorial(*ctx_, k);
        if (c.is_zero()) continue;
        acc = acc + boxminus_pow(*ctx_, y0, k).scaled(c);
      }
      return acc;
    };
    PolyX a_num = taylor_sum(poly(n - 1)).scaled(pref);
    PolyX b_num = taylor_sum(poly(n)).scaled(-pref);
    RatFunX a = a_num.is_zero() ? RatFunX::zero_like(ctx_->one()) : RatFunX(a_num, den);
    RatFunX b = b_num.is_zero() ? RatFunX::zero_like(ctx_->one()) : RatFunX(b_num, den);
    return {a, b};
  }

 private:
  const QContext* ctx_;
  mutable std::mutex mutex_;
  mutable std::vector<PolyX> polys_;
};

}  // namespace qsobolev

#endif
