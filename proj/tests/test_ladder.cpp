#include <catch2/catch_amalgamated.hpp>

#include "qsobolev/ladder.hpp"

using namespace qsobolev;

namespace {

QContext ctx_default(int j = 2) {
  return QContext(make_rational(1, 2), make_rational(-1), Rational(1), Rational(1), j);
}
QContext ctx_alt(int j = 2) {
  return QContext(make_rational(1, 3), make_rational(-2), make_rational(1, 2), Rational(2), j);
}
QContext ctx_classical() {
  return QContext(make_rational(1, 2), make_rational(-1), Rational(0), Rational(0), 2);
}

}  // namespace

TEST_CASE("weighted-derivative connection relations") {
  for (int j : {1, 2, 3}) {
    QContext ctx = ctx_default(j);
    SobolevFamily fam(ctx);
    Ladder lad(fam);
    int n_max = j == 2 ? 6 : 4;
    for (int ell : {-1, 1}) {
      for (int n = 1; n <= n_max; ++n) {
        auto [r1, r2] = lad.cfd_residuals(n, ell);
        INFO("n=" << n << " ell=" << ell << " j=" << j);
        CHECK(r1.is_zero());
        CHECK(r2.is_zero());
      }
    }
  }

  QContext ctx2 = ctx_alt(2);
  SobolevFamily fam2(ctx2);
  Ladder lad2(fam2);
  for (int ell : {-1, 1})
    for (int n = 1; n <= 5; ++n) {
      auto [r1, r2] = lad2.cfd_residuals(n, ell);
      CHECK(r1.is_zero());
      CHECK(r2.is_zero());
    }
}

TEST_CASE("classical limit of the first relation") {
  // lambda = mu = 0: C_1 = 1, D_1 = 0, so E_1 collapses to the structure
  // relation composed with the recurrence
  QContext ctx = ctx_classical();
  SobolevFamily fam(ctx);
  ASCFamily asc(ctx);
  Ladder lad(fam);
  for (int n = 1; n <= 5; ++n) {
    const LemmaCoeffs& lc = lad.lemma(n, -1);
    RatFunX x = RatFunX::from_poly(PolyX::monomial(ctx.one(), 1));
    RatFunX expect_e = RatFunX::from_scalar(asc.alpha_bar(n)) * (x - RatFunX::from_scalar(asc.beta(n))) +
                       RatFunX::from_scalar(asc.beta_bar(n));
    RatFunX expect_f = RatFunX::from_scalar(asc.gamma_bar(n) - asc.alpha_bar(n) * asc.gamma(n));
    CHECK(lc.e.at(1) == expect_e);
    CHECK(lc.f.at(1) == expect_f);
    auto [r1, r2] = lad.cfd_residuals(n, -1);
    CHECK(r1.is_zero());
    CHECK(r2.is_zero());
  }
}

TEST_CASE("structure relations for the Sobolev family") {
  for (const QContext& ctx : {ctx_default(2), ctx_alt(2)}) {
    SobolevFamily fam(ctx);
    Ladder lad(fam);
    for (int ell : {-1, 1}) {
      for (int n = 1; n <= 6; ++n) {
        auto [r1, r2] = lad.structure_residuals(n, ell);
        INFO("n=" << n << " ell=" << ell);
        CHECK(r1.is_zero());
        CHECK(r2.is_zero());
      }
    }
  }
  QContext ctx3 = ctx_default(3);
  SobolevFamily fam3(ctx3);
  Ladder lad3(fam3);
  for (int ell : {-1, 1})
    for (int n = 1; n <= 4; ++n) {
      auto [r1, r2] = lad3.structure_residuals(n, ell);
      CHECK(r1.is_zero());
      CHECK(r2.is_zero());
    }
}

TEST_CASE("ladder operators lower and raise") {
  QContext ctx = ctx_default(2);
  SobolevFamily fam(ctx);
  Ladder lad(fam);
  for (int ell : {-1, 1}) {
    for (int n = 1; n <= 5; ++n) {
      INFO("n=" << n << " ell=" << ell);
      CHECK(lad.ladder_residual(n, ell, LadderKind::annihilate).is_zero());
      CHECK(lad.ladder_residual(n, ell, LadderKind::create).is_zero());
    }
  }

  // classical lowering via the structure relation
  QContext ctx0 = ctx_classical();
  SobolevFamily fam0(ctx0);
  Ladder lad0(fam0);
  for (int n = 1; n <= 4; ++n) CHECK(lad0.ladder_residual(n, -1, LadderKind::annihilate).is_zero());
}

TEST_CASE("composing the ladder pair") {
  QContext ctx = ctx_default(2);
  SobolevFamily fam(ctx);
  Ladder lad(fam);
  for (int ell : {-1, 1})
    for (int n = 1; n <= 3; ++n) CHECK(lad.composition_residual(n, ell).is_zero());
}

TEST_CASE("three-term recurrence with rational coefficients") {
  for (const QContext& ctx : {ctx_default(2), ctx_alt(2)}) {
    SobolevFamily fam(ctx);
    Ladder lad(fam);
    for (int ell : {-1, 1}) {
      for (int n = 1; n <= 6; ++n) {
        INFO("n=" << n << " ell=" << ell);
        CHECK(lad.ttrr_residual(n, ell).is_zero());
      }
    }
  }
  QContext ctx3 = ctx_default(3);
  SobolevFamily fam3(ctx3);
  Ladder lad3(fam3);
  for (int ell : {-1, 1})
    for (int n = 1; n <= 4; ++n) CHECK(lad3.ttrr_residual(n, ell).is_zero());
}

TEST_CASE("recurrence coefficients degenerate to the classical ones") {
  QContext ctx = ctx_classical();
  SobolevFamily fam(ctx);
  ASCFamily asc(ctx);
  Ladder lad(fam);
  for (int ell : {-1, 1}) {
    for (int n = 1; n <= 5; ++n) {
      TTRRCoeffs c = lad.ttrr_coeffs(n, ell);
      CHECK(!c.alpha.is_zero());
      RatFunX x_minus_beta =
          RatFunX::from_poly(PolyX(std::vector<Scalar>{-asc.beta(n), ctx.one()}));
      CHECK(c.beta == c.alpha * x_minus_beta);
      CHECK(c.gamma == c.alpha * RatFunX::from_scalar(-asc.gamma(n)));
    }
  }
}

TEST_CASE("first holonomic q-difference equation") {
  QContext ctx = ctx_default(2);
  SobolevFamily fam(ctx);
  Ladder lad(fam);
  for (int ell : {-1, 1})
    for (int n = 1; n <= 4; ++n) {
      INFO("n=" << n << " ell=" << ell);
      CHECK(lad.holonomic1_residual(n, ell).is_zero());
    }

  QContext ctx2 = ctx_alt(3);
  SobolevFamily fam2(ctx2);
  Ladder lad2(fam2);
  for (int ell : {-1, 1})
    for (int n = 1; n <= 3; ++n) CHECK(lad2.holonomic1_residual(n, ell).is_zero());
}

TEST_CASE("second holonomic q-difference equation") {
  QContext ctx = ctx_default(2);
  SobolevFamily fam(ctx);
  Ladder lad(fam);
  for (int ell : {-1, 1})
    for (int n = 1; n <= 4; ++n) {
      INFO("n=" << n << " ell=" << ell);
      CHECK(lad.holonomic2_residual(n, ell).is_zero());
    }
}

TEST_CASE("mixed-operator equation recovers the classical one") {
  // with lambda = mu = 0 and ell = -1 the mixed operator D_q D_{q^{-1}} is
  // the classical one, and (R, S, T) become a common rational multiple of
  // (sigma, tau, lambda_n)
  QContext ctx = ctx_classical();
  SobolevFamily fam(ctx);
  ASCFamily asc(ctx);
  Ladder lad(fam);
  RatFunX sig = RatFunX::from_poly(asc.sigma());
  RatFunX tau = RatFunX::from_poly(asc.tau());
  for (int n = 1; n <= 5; ++n) {
    HolonomicCoeffs h = lad.holonomic2_coeffs(n, -1);
    RatFunX lam = RatFunX::from_scalar(asc.eigenvalue(n));
    CHECK(h.s * sig == h.r * tau);
    CHECK(h.t * sig == h.r * lam);
    CHECK(lad.holonomic2_residual(n, -1).is_zero());
  }
}

TEST_CASE("fault injection breaks the residuals") {
  QContext ctx = ctx_default(2);
  SobolevFamily fam(ctx);
  Ladder broken(fam, /*inject_fault=*/true);
  auto [r1, r2] = broken.cfd_residuals(3, -1);
  CHECK(!r1.is_zero());
  auto [s1, s2] = broken.structure_residuals(3, 1);
  CHECK(!s1.is_zero());
  CHECK(!broken.ttrr_residual(2, -1).is_zero());
}
