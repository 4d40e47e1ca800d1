#ifndef QSOBOLEV_SOBOLEV_HPP
#define QSOBOLEV_SOBOLEV_HPP

/* Monic polynomials orthogonal with respect to the Sobolev-type inner product
 *
 *   <f,g> = int_a^1 f g (qx, a^{-1}qx; q)oo d_q x
 *           + lambda (D_q^j f)(a) (D_q^j g)(a) + mu (D_q^j f)(1) (D_q^j g)(1).
 *
 * The integral part is evaluated exactly by expanding both factors in the
 * Al-Salam-Carlitz basis and summing coefficient products against the norms
 * Z h_k; numeric quadrature is used only as an oracle elsewhere.
 *
 * Construction routes, all cross-checked by the test suite:
 *   - kernel form: S_n = U_n - lambda K^{(0,j)}_{n-1}(x,a) d1 - mu K^{(0,j)}_{n-1}(x,1) d2,
 *     with (d1, d2) solving the 2x2 system tying the j-th q-derivatives of
 *     S_n at the two boundary points to those of U_n;
 *   - connection form: S_n = C_{1,n} U_n + D_{1,n} U_{n-1} with rational
 *     coefficients assembled from the kernel coefficients A_n, B_n;
 *   - Gram-Schmidt against the inner product (independent oracle).
 */

#include <optional>
#include <utility>
#include <vector>

#include "qsobolev/asc.hpp"

namespace qsobolev {

struct GramSystem {
  Scalar a11, a12, a21, a22;  // matrix of the 2x2 system
  Scalar b1, b2;              // right-hand side: (D^j U_n)(a), (D^j U_n)(1)
  Scalar det;
  Scalar delta1, delta2;  // Cramer solutions: the j-th derivatives of S_n at a and 1
};

struct ConnectionCoeffs {
  RatFunX c1, d1;  //   S_n   = c1 U_n + d1 U_{n-1}
  RatFunX c2, d2;  //  S_{n-1} = c2 U_n + d2 U_{n-1}
  RatFunX det_b;   //  c1 d2 - c2 d1, nonzero as a rational function
};

class SobolevFamily {
 public:
  explicit SobolevFamily(const QContext& ctx) : ctx_(&ctx), asc_(ctx) {}

  SobolevFamily(const SobolevFamily&) = delete;
  SobolevFamily& operator=(const SobolevFamily&) = delete;

  const QContext& ctx() const { return *ctx_; }
  const ASCFamily& asc() const { return asc_; }

  /* Coefficients c_k with p = sum c_k U_k, by peeling leading terms (the
   * U_k are monic, so the expansion is triangular). */
  std::vector<Scalar> expand_in_asc(const PolyX& p) const {
    if (p.is_zero()) return {};
    PolyX rest = p;
    std::vector<Scalar> out;
    for (int k = p.degree(); k >= 0; --k) {
      Scalar ck = rest.is_zero() || rest.degree() < k ? ctx_->zero() : rest.leading();
      if (!ck.is_zero()) rest = rest - asc_.poly(k).scaled(ck);
      out.push_back(ck);
    }
    return {out.rbegin(), out.rend()};
  }

  Scalar inner_product(const PolyX& f, const PolyX& g) const {
    std::vector<Scalar> cf = expand_in_asc(f);
    std::vector<Scalar> cg = expand_in_asc(g);
    Scalar acc = ctx_->zero();
    const std::size_t m = std::min(cf.size(), cg.size());
    for (std::size_t k = 0; k < m; ++k)
      acc = acc + cf[k] * cg[k] * asc_.norm_squared(static_cast<int>(k));
    const int j = ctx_->j();
    Scalar fa = q_derivative_at(*ctx_, f, 1, j, ctx_->a_scalar());
    Scalar ga = q_derivative_at(*ctx_, g, 1, j, ctx_->a_scalar());
    Scalar f1 = q_derivative_at(*ctx_, f, 1, j, ctx_->one());
    Scalar g1 = q_derivative_at(*ctx_, g, 1, j, ctx_->one());
    return acc + ctx_->scalar(ctx_->lambda()) * fa * ga + ctx_->scalar(ctx_->mu()) * f1 * g1;
  }

  GramSystem gram(int n) const {
    if (n < 1) throw IndexOutOfRange("gram system needs n >= 1");
    const int j = ctx_->j();
    const Scalar a_pt = ctx_->a_scalar();
    const Scalar one_pt = ctx_->one();
    const Scalar lam = ctx_->scalar(ctx_->lambda());
    const Scalar mu = ctx_->scalar(ctx_->mu());
    Scalar kaa = asc_.kernel_eval_xy(n - 1, j, j, a_pt, a_pt);
    Scalar ka1 = asc_.kernel_eval_xy(n - 1, j, j, a_pt, one_pt);
    Scalar k1a = asc_.kernel_eval_xy(n - 1, j, j, one_pt, a_pt);
    Scalar k11 = asc_.kernel_eval_xy(n - 1, j, j, one_pt, one_pt);
    GramSystem g{one_pt + lam * kaa, mu * ka1,
                 lam * k1a,          one_pt + mu * k11,
                 q_derivative_at(*ctx_, asc_.poly(n), 1, j, a_pt),
                 q_derivative_at(*ctx_, asc_.poly(n), 1, j, one_pt),
                 ctx_->zero(), ctx_->zero(), ctx_->zero()};
    g.det = g.a11 * g.a22 - g.a12 * g.a21;
    if (g.det.is_zero()) throw SingularGram("singular system at n=" + std::to_string(n));
    g.delta1 = (g.b1 * g.a22 - g.a12 * g.b2) / g.det;
    g.delta2 = (g.a11 * g.b2 - g.b1 * g.a21) / g.det;
    return g;
  }

  /* S_n by the kernel representation; monic of degree n, cached. */
  PolyX poly(int n) const {
    if (n < 0) return PolyX();
    std::lock_guard<std::mutex> lock(mutex_);
    while (static_cast<int>(polys_.size()) <= n) {
      int m = static_cast<int>(polys_.size());
      polys_.push_back(build_poly(m));
    }
    return polys_[n];
  }

  /* Independent oracle: monic orthogonalization of {1, x, ..., x^n} under
   * the inner product, by Gaussian elimination on the moment system. */
  PolyX poly_gs(int n) const {
    if (n <= 0) return PolyX::constant(ctx_->one());
    std::vector<PolyX> monos;
    for (int i = 0; i <= n; ++i) monos.push_back(PolyX::monomial(ctx_->one(), i));
    // unknown coefficients c_0..c_{n-1}: sum_i c_i <x^i, x^k> = -<x^n, x^k>
    std::vector<std::vector<Scalar>> m(n, std::vector<Scalar>());
    std::vector<Scalar> rhs;
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < n; ++i) m[k].push_back(inner_product(monos[i], monos[k]));
      rhs.push_back(-inner_product(monos[n], monos[k]));
    }
    // elimination with exact pivot search
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int col = 0; col < n; ++col) {
      int pivot = -1;
      for (int row = col; row < n; ++row) {
        if (!m[row][col].is_zero()) {
          pivot = row;
          break;
        }
      }
      if (pivot < 0) throw SingularGram("degenerate moment matrix");
      std::swap(m[col], m[pivot]);
      std::swap(rhs[col], rhs[pivot]);
      for (int row = col + 1; row < n; ++row) {
        if (m[row][col].is_zero()) continue;
        Scalar f = m[row][col] / m[col][col];
        for (int cc = col; cc < n; ++cc) m[row][cc] = m[row][cc] - f * m[col][cc];
        rhs[row] = rhs[row] - f * rhs[col];
      }
    }
    std::vector<Scalar> coef(n, ctx_->zero());
    for (int row = n - 1; row >= 0; --row) {
      Scalar acc = rhs[row];
      for (int cc = row + 1; cc < n; ++cc) acc = acc - m[row][cc] * coef[cc];
      coef[row] = acc / m[row][row];
    }
    PolyX p = monos[n];
    for (int i = 0; i < n; ++i) p = p + monos[i].scaled(coef[i]);
    return p;
  }

  /* Fourier coefficient of S_n along U_k (k < n), straight from the defining
   * orthogonality: a_{n,k} = -(lambda D^j S_n(a) D^j U_k(a) + mu D^j S_n(1) D^j U_k(1)) / (Z h_k). */
  Scalar fourier_coefficient(int n, int k) const {
    const int j = ctx_->j();
    PolyX sn = poly(n);
    Scalar sa = q_derivative_at(*ctx_, sn, 1, j, ctx_->a_scalar());
    Scalar s1 = q_derivative_at(*ctx_, sn, 1, j, ctx_->one());
    Scalar ua = q_derivative_at(*ctx_, asc_.poly(k), 1, j, ctx_->a_scalar());
    Scalar u1 = q_derivative_at(*ctx_, asc_.poly(k), 1, j, ctx_->one());
    Scalar num = ctx_->scalar(ctx_->lambda()) * sa * ua + ctx_->scalar(ctx_->mu()) * s1 * u1;
    return -(num / asc_.norm_squared(k));
  }

  const ConnectionCoeffs& connection(int n) const {
    if (n < 1) throw IndexOutOfRange("connection coefficients need n >= 1");
    std::lock_guard<std::mutex> lock(conn_mutex_);
    while (static_cast<int>(conn_.size()) < n) {
      int m = static_cast<int>(conn_.size()) + 1;
      conn_.push_back(build_connection(m));  // uses conn_[m-2], already present
    }
    return conn_[n - 1];
  }

  /* Recover (U_n, U_{n-1}) from (S_n, S_{n-1}) through the inverse of the
   * connection matrix. */
  std::pair<PolyX, PolyX> inverse_connection(int n) const {
    const ConnectionCoeffs& c = connection(n);
    if (c.det_b.is_zero()) throw DegenerateConnection("det B vanishes at n=" + std::to_string(n));
    RatFunX sn = RatFunX::from_poly(poly(n));
    RatFunX snm1 = RatFunX::from_poly(poly(n - 1));
    RatFunX un = (c.d2 * sn - c.d1 * snm1) / c.det_b;
    RatFunX unm1 = (c.c1 * snm1 - c.c2 * sn) / c.det_b;
    if (!un.is_polynomial() || !unm1.is_polynomial())
      throw DegenerateConnection("inverse connection did not reduce to polynomials");
    return {un.num(), unm1.num()};
  }

  Scalar sobolev_norm(int n) const { return inner_product(poly(n), poly(n)); }

  /* Terminating 3phi2 representation evaluated at a point. Undefined where
   * the auxiliary quantities degenerate (D_{1,n}(x0) = 0, psi poles, x0 = 0);
   * callers sample a different point in that case. */
  Scalar hypergeom_eval(int n, const Scalar& x0) const {
    if (n == 0) return ctx_->one();
    if (x0.is_zero()) throw UndefinedAuxiliary("x0 must be nonzero");
    const ConnectionCoeffs& conn = connection(n);
    Scalar c1, d1;
    try {
      c1 = conn.c1.eval(x0);
      d1 = conn.d1.eval(x0);
    } catch (const DivisionByZero&) {
      throw UndefinedAuxiliary("connection coefficient has a pole at the sample point");
    }
    if (d1.is_zero()) throw UndefinedAuxiliary("D_{1,n}(x0) = 0");

    const Scalar one = ctx_->one();
    const Scalar q = ctx_->q_scalar();
    Scalar qn = ctx_->scalar(q_int_rational(*ctx_, n));
    Scalar theta = ctx_->a_scalar() * ctx_->scalar(ctx_->q_pow(n - 2)) * qn * c1 / d1 -
                   ctx_->scalar(q_int_rational(*ctx_, n - 1));
    Scalar psi_den = (one - q) * theta + one;
    if (psi_den.is_zero()) throw UndefinedAuxiliary("psi undefined at the sample point");
    Scalar psi = psi_den.inverse();

    Scalar z = x0 * q / ctx_->a_scalar();
    std::vector<Scalar> upper{ctx_->scalar(ctx_->q_pow(-n)), x0.inverse(), psi};
    std::vector<Scalar> lower{psi / q};
    Scalar series;
    try {
      series = phi_terminating(*ctx_, upper, lower, z, n);
    } catch (const DivisionByZero&) {
      throw UndefinedAuxiliary("vanishing lower Pochhammer factor in the 3phi2 sum");
    }

    Scalar pref = ctx_->scalar(rational_pow(-ctx_->a(), n)) * d1 * (one - psi / q) *
                  ctx_->scalar(ctx_->q_pow(static_cast<long>(n) * (n - 1) / 2 - n + 2)) /
                  (ctx_->a_scalar() * qn * psi * (one - q));
    return pref * series;
  }

 private:
  PolyX build_poly(int n) const {
    if (n == 0) return asc_.poly(0);
    GramSystem g = gram(n);
    const int j = ctx_->j();
    PolyX result = asc_.poly(n);
    Scalar ca = ctx_->scalar(ctx_->lambda()) * g.delta1;
    Scalar c1 = ctx_->scalar(ctx_->mu()) * g.delta2;
    if (!ca.is_zero()) result = result - asc_.kernel_eval_y(n - 1, j, ctx_->a_scalar()).scaled(ca);
    if (!c1.is_zero()) result = result - asc_.kernel_eval_y(n - 1, j, ctx_->one()).scaled(c1);
    return result;
  }

  ConnectionCoeffs build_connection(int n) const {
    GramSystem g = gram(n);
    const Scalar lam = ctx_->scalar(ctx_->lambda());
    const Scalar mu = ctx_->scalar(ctx_->mu());
    auto [a_at_a, b_at_a] = asc_.kernel_ab_coeffs(n, ctx_->a_scalar());
    auto [a_at_1, b_at_1] = asc_.kernel_ab_coeffs(n, ctx_->one());
    RatFunX one = RatFunX::one_like(ctx_->one());
    RatFunX lam_d1 = RatFunX::from_scalar(lam * g.delta1);
    RatFunX mu_d2 = RatFunX::from_scalar(mu * g.delta2);
    ConnectionCoeffs c{one - lam_d1 * a_at_a - mu_d2 * a_at_1,
                       RatFunX::zero_like(ctx_->one()) - lam_d1 * b_at_a - mu_d2 * b_at_1,
                       RatFunX::zero_like(ctx_->one()), RatFunX::zero_like(ctx_->one()),
                       RatFunX::zero_like(ctx_->one())};
    if (n == 1) {
      // S_0 = 1 = 0 * U_1 + 1 * U_0
      c.c2 = RatFunX::zero_like(ctx_->one());
      c.d2 = one;
    } else {
      const ConnectionCoeffs& prev = connection_nolock(n - 1);
      RatFunX x = RatFunX::from_poly(PolyX::monomial(ctx_->one(), 1));
      c.c2 = RatFunX::zero_like(ctx_->one()) - prev.d1 / RatFunX::from_scalar(asc_.gamma(n - 1));
      c.d2 = prev.c1 + c.c2 * (RatFunX::from_scalar(asc_.beta(n - 1)) - x);
    }
    c.det_b = c.c1 * c.d2 - c.c2 * c.d1;
    if (c.det_b.is_zero()) throw DegenerateConnection("det B vanishes identically at n=" + std::to_string(n));
    return c;
  }

  const ConnectionCoeffs& connection_nolock(int n) const { return conn_[n - 1]; }

  const QContext* ctx_;
  ASCFamily asc_;
  mutable std::mutex mutex_;
  mutable std::vector<PolyX> polys_;
  mutable std::mutex conn_mutex_;
  mutable std::vector<ConnectionCoeffs> conn_;
};

}  // namespace qsobolev

#endif
