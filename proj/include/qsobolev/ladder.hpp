#ifndef QSOBOLEV_LADDER_HPP
#define QSOBOLEV_LADDER_HPP

/* Structure relations, ladder operators, the rational-coefficient three-term
 * recurrence and the four holonomic second-order q-difference equations of
 * the Sobolev-type family. Both derivative directions are covered throughout:
 * ell = -1 works with the dilation derivative D_{q^{-1}} (weighted by
 * sigma(x) = (x-1)(x-a)), ell = +1 with the contraction derivative D_q.
 *
 * Every coefficient formula here is assembled verbatim and then *verified*
 * by reducing the corresponding residual to zero; a nonzero residual fails
 * loudly with its (n, ell) witness. lemma() can deliberately corrupt one
 * coefficient (fault injection) so the verification layer can prove it is
 * not vacuous.
 *
 * Indexing of the Lemma/Theorem coefficients follows the delta = [ell = 1]
 * convention: the pair (E_k, F_k) with k = 1 + 2 delta describes
 * sigma_ell D_{q^ell} S_n, and k = 2 + 2 delta describes the same for
 * S_{n-1}; Xi_{i,k} = (-1)^i det [[E_k, C_i], [F_k, D_i]].
 *
 * Instances memoize per (n, ell); they are meant for single-threaded use
 * (use one Ladder per worker).
 */

#include <map>
#include <utility>

#include "qsobolev/sobolev.hpp"

namespace qsobolev {

struct LemmaCoeffs {
  int ell;
  int k_first;              // 1 + 2 delta_{ell,1}
  std::map<int, RatFunX> e;  // keys: k_first and k_first + 1
  std::map<int, RatFunX> f;
  PolyX sigma_ell;
};

struct XiTheta {
  RatFunX theta;                               // sigma_ell(x) det B_n(x)
  std::map<std::pair<int, int>, RatFunX> xi;   // (i, k) -> Xi_{i,k,n}
};

struct TTRRCoeffs {
  RatFunX alpha, beta, gamma;
};

struct HolonomicCoeffs {
  RatFunX r, s, t;
};

enum class LadderKind { annihilate, create };

class Ladder {
 public:
  explicit Ladder(const SobolevFamily& fam, bool inject_fault = false)
      : fam_(&fam), ctx_(&fam.ctx()), inject_fault_(inject_fault) {}

  Ladder(const Ladder&) = delete;
  Ladder& operator=(const Ladder&) = delete;

  const SobolevFamily& family() const { return *fam_; }

  static int delta(int ell) { return ell == 1 ? 1 : 0; }

  const LemmaCoeffs& lemma(int n, int ell) {
    auto it = lemma_.find({n, ell});
    if (it == lemma_.end()) it = lemma_.emplace(std::make_pair(n, ell), build_lemma(n, ell)).first;
    return it->second;
  }

  /* Residuals of the two weighted-derivative connection relations:
   *   sigma_ell D_{q^ell} S_n     - E_{k1} U_n - F_{k1} U_{n-1}
   *   sigma_ell D_{q^ell} S_{n-1} - E_{k2} U_n - F_{k2} U_{n-1}
   */
  std::pair<RatFunX, RatFunX> cfd_residuals(int n, int ell) {
    const LemmaCoeffs& lc = lemma(n, ell);
    const int k1 = lc.k_first;
    RatFunX one = RatFunX::one_like(ctx_->one());
    const PolyX& un = fam_->asc().poly(n);
    const PolyX un1 = fam_->asc().poly(n - 1);
    RatFunX first = combine_linear({{one, lc.sigma_ell * q_derivative(*ctx_, fam_->poly(n), ell)},
                                    {-lc.e.at(k1), un},
                                    {-lc.f.at(k1), un1}});
    RatFunX second =
        combine_linear({{one, lc.sigma_ell * q_derivative(*ctx_, fam_->poly(n - 1), ell)},
                        {-lc.e.at(k1 + 1), un},
                        {-lc.f.at(k1 + 1), un1}});
    return {first, second};
  }

  const XiTheta& xi_theta(int n, int ell) {
    auto it = xi_.find({n, ell});
    if (it == xi_.end()) it = xi_.emplace(std::make_pair(n, ell), build_xi(n, ell)).first;
    return it->second;
  }

  /* Residuals of the structure relations
   *   Theta D_{q^ell} S_n     = Xi_{2,k1} S_n + Xi_{1,k1} S_{n-1}
   *   Theta D_{q^ell} S_{n-1} = Xi_{2,k2} S_n + Xi_{1,k2} S_{n-1}
   */
  std::pair<RatFunX, RatFunX> structure_residuals(int n, int ell) {
    const XiTheta& xt = xi_theta(n, ell);
    const int k1 = 1 + 2 * delta(ell);
    const PolyX sn = fam_->poly(n);
    const PolyX sn1 = fam_->poly(n - 1);
    RatFunX first = combine_linear({{xt.theta, q_derivative(*ctx_, sn, ell)},
                                    {-xt.xi.at({2, k1}), sn},
                                    {-xt.xi.at({1, k1}), sn1}});
    RatFunX second = combine_linear({{xt.theta, q_derivative(*ctx_, sn1, ell)},
                                     {-xt.xi.at({2, k1 + 1}), sn},
                                     {-xt.xi.at({1, k1 + 1}), sn1}});
    return {first, second};
  }

  /* Ladder action minus its stated image; zero when the operators do lower
   * and raise as claimed. */
  RatFunX ladder_residual(int n, int ell, LadderKind which) {
    const XiTheta& xt = xi_theta(n, ell);
    const int k1 = 1 + 2 * delta(ell);
    const int k2 = k1 + 1;
    if (which == LadderKind::annihilate) {
      return combine_linear({{xt.theta, q_derivative(*ctx_, fam_->poly(n), ell)},
                             {-xt.xi.at({2, k1}), fam_->poly(n)},
                             {-xt.xi.at({1, k1}), fam_->poly(n - 1)}});
    }
    return combine_linear({{xt.theta, q_derivative(*ctx_, fam_->poly(n - 1), ell)},
                           {-xt.xi.at({1, k2}), fam_->poly(n - 1)},
                           {-xt.xi.at({2, k2}), fam_->poly(n)}});
  }

  /* a_ell^dagger (a_ell S_n) computed by operator application on both sides
   * of the lowering identity; zero certifies the composition step the
   * holonomic derivation rests on. */
  RatFunX composition_residual(int n, int ell) {
    const XiTheta& xt = xi_theta(n, ell);
    const int k1 = 1 + 2 * delta(ell);
    const int k2 = k1 + 1;
    RatFunX lowered = apply_annihilation(xt, k1, ratfun_of(fam_->poly(n)), n, ell);
    RatFunX lhs = apply_creation(xt, k2, lowered, n, ell);
    RatFunX rhs = apply_creation(xt, k2, xt.xi.at({1, k1}) * ratfun_of(fam_->poly(n - 1)), n, ell);
    return lhs - rhs;
  }

  /* Three-term recurrence with rational coefficients:
   *   alpha_n S_{n+1} = beta_n S_n + gamma_n S_{n-1}.
   * The n = 0 row is the convention (1, S_1, 0): S_1 = (x - beta_0) S_0 holds
   * for every admissible parameter choice and S_{-1} = 0 leaves gamma free.
   */
  TTRRCoeffs ttrr_coeffs(int n, int ell) {
    if (n == 0) {
      return {RatFunX::one_like(ctx_->one()), ratfun_of(fam_->poly(1)),
              RatFunX::zero_like(ctx_->one())};
    }
    const XiTheta& xt_n = xi_theta(n, ell);
    const XiTheta& xt_n1 = xi_theta(n + 1, ell);
    const int k1 = 1 + 2 * delta(ell);
    const int k2 = k1 + 1;
    TTRRCoeffs c{xt_n.theta * xt_n1.xi.at({2, k2}),
                 xt_n1.theta * xt_n.xi.at({2, k1}) - xt_n.theta * xt_n1.xi.at({1, k2}),
                 xt_n1.theta * xt_n.xi.at({1, k1})};
    if (c.alpha.is_zero()) throw DegenerateTTRR("alpha vanishes at n=" + std::to_string(n));
    return c;
  }

  RatFunX ttrr_residual(int n, int ell) {
    TTRRCoeffs c = ttrr_coeffs(n, ell);
    return combine_linear({{c.alpha, fam_->poly(n + 1)},
                           {-c.beta, fam_->poly(n)},
                           {-c.gamma, fam_->poly(n - 1)}});
  }

  /* First holonomic equation R D^2_{q^ell} + S D_{q^ell} + T. */
  HolonomicCoeffs holonomic1_coeffs(int n, int ell) {
    const XiTheta& xt = xi_theta(n, ell);
    const int k1 = 1 + 2 * delta(ell);
    const int k2 = k1 + 1;
    const RatFunX& theta = xt.theta;
    const RatFunX& xi_2k1 = xt.xi.at({2, k1});
    const RatFunX& xi_1k2 = xt.xi.at({1, k2});
    const RatFunX& xi_1k1 = xt.xi.at({1, k1});
    const RatFunX& xi_2k2 = xt.xi.at({2, k2});
    if (xi_1k1.is_zero())
      throw DegenerateXi("Xi_{1," + std::to_string(k1) + "} vanishes at n=" + std::to_string(n));

    RatFunX d_theta = q_derivative_rat(*ctx_, theta, ell);
    RatFunX d_xi_2k1 = q_derivative_rat(*ctx_, xi_2k1, ell);
    RatFunX d_xi_1k1 = q_derivative_rat(*ctx_, xi_1k1, ell);
    RatFunX qlx_factor = ratfun_of(
        PolyX::monomial(ctx_->scalar(ctx_->q_pow(ell) - Rational(1)), 1));  // (q^ell - 1) x
    RatFunX bracket = theta + qlx_factor * xi_1k2;

    HolonomicCoeffs h{theta * ratfun_dilate(*ctx_, theta, ell),
                      theta * (d_theta - ratfun_dilate(*ctx_, xi_2k1, ell) - xi_1k2) -
                          theta * bracket * d_xi_1k1 / xi_1k1,
                      xi_1k2 * xi_2k1 - theta * d_xi_2k1 +
                          xi_2k1 * bracket * d_xi_1k1 / xi_1k1 -
                          ratfun_dilate(*ctx_, xi_1k1, ell) * xi_2k2};
    return h;
  }

  RatFunX holonomic1_residual(int n, int ell) {
    HolonomicCoeffs h = holonomic1_coeffs(n, ell);
    PolyX sn = fam_->poly(n);
    return combine_linear({{h.r, q_derivative_iter(*ctx_, sn, ell, 2)},
                           {h.s, q_derivative(*ctx_, sn, ell)},
                           {h.t, sn}});
  }

  /* Second holonomic equation, in terms of the mixed operator
   * D_{q^{-ell}} D_{q^ell} and the opposite-direction first derivative:
   * coefficients are the previous ones dilated by q^{-ell}, with the
   * (q^{-ell}-1) x T correction on the middle term. */
  HolonomicCoeffs holonomic2_coeffs(int n, int ell) {
    HolonomicCoeffs h = holonomic1_coeffs(n, ell);
    RatFunX r_bar = ratfun_dilate(*ctx_, h.r, -ell);
    RatFunX t_shift = ratfun_dilate(*ctx_, h.t, -ell);
    RatFunX corr = ratfun_of(PolyX::monomial(ctx_->scalar(ctx_->q_pow(-ell) - Rational(1)), 1));
    RatFunX s_bar = ratfun_dilate(*ctx_, h.s, -ell) + corr * t_shift;
    return {r_bar, s_bar, t_shift};
  }

  RatFunX holonomic2_residual(int n, int ell) {
    HolonomicCoeffs h = holonomic2_coeffs(n, ell);
    PolyX sn = fam_->poly(n);
    PolyX mixed = q_derivative(*ctx_, q_derivative(*ctx_, sn, ell), -ell);
    return combine_linear(
        {{h.r, mixed}, {h.s, q_derivative(*ctx_, sn, -ell)}, {h.t, sn}});
  }

 private:
  RatFunX ratfun_of(const PolyX& p) const {
    if (p.is_zero()) return RatFunX::zero_like(ctx_->one());
    return RatFunX::from_poly(p);
  }

  /* sum_i coeff_i * poly_i, assembled over the plain product denominator.
   * Residuals of valid identities have zero numerator there, so the gcd
   * machinery only ever runs on the (rare) nonzero outcome that needs a
   * reduced witness. */
  RatFunX combine_linear(const std::vector<std::pair<RatFunX, PolyX>>& terms) const {
    std::vector<const RatFunX*> live;
    std::vector<const PolyX*> polys;
    for (const auto& [c, p] : terms) {
      if (c.is_zero() || p.is_zero()) continue;
      live.push_back(&c);
      polys.push_back(&p);
    }
    if (live.empty()) return RatFunX::zero_like(ctx_->one());
    const std::size_t m = live.size();
    PolyX one = PolyX::constant(ctx_->one());
    std::vector<PolyX> prefix(m + 1, one), suffix(m + 1, one);
    for (std::size_t i = 0; i < m; ++i) prefix[i + 1] = prefix[i] * live[i]->den();
    for (std::size_t i = m; i-- > 0;) suffix[i] = suffix[i + 1] * live[i]->den();
    PolyX num;
    for (std::size_t i = 0; i < m; ++i)
      num = num + live[i]->num() * (*polys[i]) * prefix[i] * suffix[i + 1];
    if (num.is_zero()) return RatFunX::zero_like(ctx_->one());
    return RatFunX(std::move(num), prefix[m]);
  }

  RatFunX apply_annihilation(const XiTheta& xt, int k1, const RatFunX& v, int, int ell) {
    return xt.theta * q_derivative_rat(*ctx_, v, ell) - xt.xi.at({2, k1}) * v;
  }

  RatFunX apply_creation(const XiTheta& xt, int k2, const RatFunX& v, int, int ell) {
    return xt.theta * q_derivative_rat(*ctx_, v, ell) - xt.xi.at({1, k2}) * v;
  }

  LemmaCoeffs build_lemma(int n, int ell) {
    if (n < 1) throw IndexOutOfRange("lemma coefficients need n >= 1");
    const ASCFamily& asc = fam_->asc();
    const ConnectionCoeffs& conn = fam_->connection(n);
    const int d = delta(ell);
    LemmaCoeffs lc{ell, 1 + 2 * d, {}, {}, PolyX::constant(ctx_->one())};
    RatFunX x = ratfun_of(PolyX::monomial(ctx_->one(), 1));

    RatFunX e_first = RatFunX::zero_like(ctx_->one());
    RatFunX f_first = RatFunX::zero_like(ctx_->one());
    if (ell == -1) {
      lc.sigma_ell = asc.sigma();
      RatFunX sig = RatFunX::from_poly(asc.sigma());
      RatFunX c1_shift = ratfun_dilate(*ctx_, conn.c1, -1);
      RatFunX d1_shift = ratfun_dilate(*ctx_, conn.d1, -1);
      RatFunX lead = (RatFunX::from_scalar(asc.alpha_bar(n)) * (x - RatFunX::from_scalar(asc.beta(n))) +
                      RatFunX::from_scalar(asc.beta_bar(n)));
      e_first = lead * c1_shift + sig * q_derivative_rat(*ctx_, conn.c1, -1);
      f_first = RatFunX::from_scalar(asc.gamma_bar(n) - asc.alpha_bar(n) * asc.gamma(n)) * c1_shift +
                sig * q_derivative_rat(*ctx_, conn.d1, -1);
      if (n >= 2) {
        // coefficients of U_{n-2} fold back through the recurrence; at n = 1
        // the U_{n-2} contribution is absent (U_{-1} = 0)
        Scalar ratio = asc.gamma_bar(n - 1) / asc.gamma(n - 1);
        e_first = e_first + RatFunX::from_scalar(asc.alpha_bar(n - 1) - ratio) * d1_shift;
        f_first = f_first +
                  (RatFunX::from_scalar(asc.beta_bar(n - 1)) +
                   RatFunX::from_scalar(ratio) * (x - RatFunX::from_scalar(asc.beta(n - 1)))) *
                      d1_shift;
      } else {
        e_first = e_first + RatFunX::from_scalar(asc.alpha_bar(0)) * d1_shift;
        f_first = f_first + RatFunX::from_scalar(asc.beta_bar(0)) * d1_shift;
      }
    } else {
      RatFunX c1_shift = ratfun_dilate(*ctx_, conn.c1, 1);
      RatFunX d1_shift = ratfun_dilate(*ctx_, conn.d1, 1);
      e_first = q_derivative_rat(*ctx_, conn.c1, 1);
      f_first = RatFunX::from_scalar(q_number(*ctx_, n)) * c1_shift +
                q_derivative_rat(*ctx_, conn.d1, 1);
      if (n >= 2) {
        Scalar ratio = q_number(*ctx_, n - 1) / asc.gamma(n - 1);
        e_first = e_first - RatFunX::from_scalar(ratio) * d1_shift;
        f_first = f_first +
                  RatFunX::from_scalar(ratio) * (x - RatFunX::from_scalar(asc.beta(n - 1))) * d1_shift;
      }
    }
    if (inject_fault_) e_first = e_first + RatFunX::one_like(ctx_->one());

    RatFunX e_second = RatFunX::zero_like(ctx_->one());
    RatFunX f_second = RatFunX::zero_like(ctx_->one());
    if (n >= 2) {
      const LemmaCoeffs& prev = lemma(n - 1, ell);
      e_second = RatFunX::zero_like(ctx_->one()) -
                 prev.f.at(lc.k_first) / RatFunX::from_scalar(asc.gamma(n - 1));
      f_second = prev.e.at(lc.k_first) +
                 e_second * (RatFunX::from_scalar(asc.beta(n - 1)) - x);
    }
    // n = 1: sigma_ell D S_0 = 0 = 0 * U_1 + 0 * U_0

    lc.e.emplace(lc.k_first, std::move(e_first));
    lc.f.emplace(lc.k_first, std::move(f_first));
    lc.e.emplace(lc.k_first + 1, std::move(e_second));
    lc.f.emplace(lc.k_first + 1, std::move(f_second));
    return lc;
  }

  XiTheta build_xi(int n, int ell) {
    const LemmaCoeffs& lc = lemma(n, ell);
    const ConnectionCoeffs& conn = fam_->connection(n);
    XiTheta xt{RatFunX::from_poly(lc.sigma_ell) * conn.det_b, {}};
    if (xt.theta.is_zero()) throw DegenerateConnection("Theta vanishes at n=" + std::to_string(n));
    for (int k : {lc.k_first, lc.k_first + 1}) {
      const RatFunX& e = lc.e.at(k);
      const RatFunX& f = lc.f.at(k);
      xt.xi.emplace(std::make_pair(1, k), conn.c1 * f - conn.d1 * e);
      xt.xi.emplace(std::make_pair(2, k), e * conn.d2 - conn.c2 * f);
    }
    return xt;
  }

  const SobolevFamily* fam_;
  const QContext* ctx_;
  bool inject_fault_;
  std::map<std::pair<int, int>, LemmaCoeffs> lemma_;
  std::map<std::pair<int, int>, XiTheta> xi_;
};

}  // namespace qsobolev

#endif
