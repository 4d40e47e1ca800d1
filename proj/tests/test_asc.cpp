#include <catch2/catch_amalgamated.hpp>

#include "qsobolev/asc.hpp"

using namespace qsobolev;

namespace {

QContext ctx_default(int j = 1, Backend b = Backend::exact) {
  return QContext(make_rational(1, 2), make_rational(-1), Rational(1), Rational(1), j, b);
}

QContext ctx_alt(int j = 1) {
  return QContext(make_rational(1, 3), make_rational(-2), make_rational(1, 2), Rational(2), j);
}

PolyX from_rationals(const QContext& ctx, std::vector<Rational> cs) {
  std::vector<Scalar> v;
  for (auto& c : cs) v.push_back(ctx.scalar(c));
  return PolyX(std::move(v));
}

}  // namespace

TEST_CASE("first members of the family") {
  for (const QContext& ctx : {ctx_default(), ctx_alt()}) {
    ASCFamily fam(ctx);
    const Rational a = ctx.a();
    const Rational q = ctx.q();
    CHECK(fam.poly(0) == PolyX::constant(ctx.one()));
    CHECK(fam.poly(1) == from_rationals(ctx, {-a - 1, Rational(1)}));
    CHECK(fam.poly(2) ==
          from_rationals(ctx, {a * a * q + a * q + a + q, -a * q - a - q - 1, Rational(1)}));
  }
}

TEST_CASE("monic of exact degree") {
  ASCFamily fam(ctx_alt());
  for (int n = 0; n <= 10; ++n) {
    CHECK(fam.poly(n).degree() == n);
    CHECK(fam.poly(n).leading().is_one());
  }
}

TEST_CASE("recurrence and hypergeometric constructions coincide") {
  for (const QContext& ctx : {ctx_default(), ctx_alt()}) {
    ASCFamily fam(ctx);
    for (int n = 0; n <= 10; ++n) CHECK(fam.hypergeometric_poly(n) == fam.poly(n));
  }
}

TEST_CASE("forward shift operator") {
  QContext ctx = ctx_default();
  ASCFamily fam(ctx);

  CHECK(fam.forward_shift(3, 0) == fam.poly(3));
  CHECK(fam.forward_shift(2, 1) == from_rationals(ctx, {Rational(0), make_rational(3, 2)}));
  CHECK(fam.forward_shift(4, 4) == PolyX::constant(q_factorial(ctx, 4)));
  CHECK_THROWS_AS(fam.forward_shift(2, 3), IndexOutOfRange);

  for (const QContext& c : {ctx_default(), ctx_alt()}) {
    ASCFamily f(c);
    for (int n = 0; n <= 8; ++n)
      for (int k = 0; k <= n; ++k)
        CHECK(q_derivative_iter(c, f.poly(n), 1, k) == f.forward_shift(n, k));
  }
}

TEST_CASE("structure relation") {
  for (const QContext& ctx : {ctx_default(), ctx_alt()}) {
    ASCFamily fam(ctx);
    for (int n = 0; n <= 8; ++n) CHECK(fam.structure_residual(n).is_zero());
  }
}

TEST_CASE("second-order q-difference equation") {
  for (const QContext& ctx : {ctx_default(), ctx_alt()}) {
    ASCFamily fam(ctx);
    CHECK(fam.eigenvalue(0).is_zero());
    for (int n = 0; n <= 8; ++n) CHECK(fam.second_order_residual(n).is_zero());
  }
}

TEST_CASE("Christoffel-Darboux kernel") {
  QContext ctx = ctx_default();
  ASCFamily fam(ctx);

  // n = 0: single term 1/(Z h_0) = 1/((1-q) Z)
  PolyXY k0 = fam.cd_kernel(0);
  CHECK(k0.degree() == 0);
  CHECK(k0[0] == PolyX::constant((ctx.z() * ctx.scalar(make_rational(1, 2))).inverse()));

  for (int n = 0; n <= 6; ++n) {
    PolyXY sum = fam.cd_kernel_sum(n);
    CHECK(sum == fam.cd_kernel_quotient(n));
    CHECK(sum == bipoly_transpose(sum));  // symmetry
  }
}

TEST_CASE("kernel partial derivatives") {
  QContext ctx = ctx_default();
  ASCFamily fam(ctx);

  for (int n = 0; n <= 4; ++n) CHECK(fam.kernel_partial(n, 0, 0) == fam.cd_kernel_sum(n));

  // all D^{j'} U_k vanish for k <= n < j'
  CHECK(fam.kernel_partial(2, 0, 3).is_zero());
  CHECK(fam.kernel_eval_y(2, 3, ctx.one()).is_zero());

  // n = 1, i = j' = 1: (D U_1)^2 / (Z h_1) = 1/(Z h_1)
  PolyXY k11 = fam.kernel_partial(1, 1, 1);
  CHECK(k11.degree() == 0);
  CHECK(k11[0] == PolyX::constant(fam.norm_squared(1).inverse()));

  // the operator form D^i_y D^j_x applied to the kernel matches the sum form
  // with the index roles swapped
  for (int n = 1; n <= 3; ++n) {
    PolyXY kernel = fam.cd_kernel_sum(n);
    for (int i = 0; i <= 2; ++i) {
      for (int jp = 0; jp <= 2; ++jp) {
        PolyXY op = kernel;
        for (int t = 0; t < jp; ++t) op = q_derivative(ctx, op, 1);  // x-derivatives
        for (int t = 0; t < i; ++t) op = bipoly_derivative_y(ctx, op, 1);
        CHECK(op == fam.kernel_partial(n, jp, i));
      }
    }
  }
}

TEST_CASE("kernel eval helpers agree with the bivariate form") {
  QContext ctx = ctx_alt();
  ASCFamily fam(ctx);
  Scalar y0 = ctx.scalar(make_rational(2, 3));
  Scalar x0 = ctx.scalar(make_rational(-1, 3));
  for (int n = 0; n <= 4; ++n) {
    for (int jp = 0; jp <= 2; ++jp) {
      PolyXY full = fam.kernel_partial(n, 0, jp);
      PolyX via_bipoly = full.is_zero() ? PolyX() : bipoly_eval_y(full, y0);
      CHECK(via_bipoly == fam.kernel_eval_y(n, jp, y0));
      Scalar xy = fam.kernel_eval_xy(n, 0, jp, x0, y0);
      CHECK(xy == (via_bipoly.is_zero() ? ctx.zero() : via_bipoly.eval(x0)));
    }
  }
}

TEST_CASE("kernel connection coefficients reduce to the kernel") {
  for (int j : {1, 2, 3}) {
    for (const QContext& ctx : {ctx_default(j), ctx_alt(j)}) {
      ASCFamily fam(ctx);
      for (int n = 1; n <= 6; ++n) {
        for (const Scalar& y0 : {ctx.a_scalar(), ctx.one()}) {
          auto [A, B] = fam.kernel_ab_coeffs(n, y0);
          RatFunX combo = A * RatFunX::from_poly(fam.poly(n)) + B * RatFunX::from_poly(fam.poly(n - 1));
          PolyX expect = fam.kernel_eval_y(n - 1, j, y0);
          if (expect.is_zero()) {
            CHECK(combo.is_zero());
          } else {
            CHECK(combo.is_polynomial());
            CHECK(combo.num() == expect);
          }
        }
      }
    }
  }
}

TEST_CASE("degenerate kernel cases") {
  // j exceeding the kernel degree: every derivative dies, combination is zero
  QContext ctx = ctx_default(4);
  ASCFamily fam(ctx);
  auto [A, B] = fam.kernel_ab_coeffs(2, ctx.one());
  RatFunX combo = A * RatFunX::from_poly(fam.poly(2)) + B * RatFunX::from_poly(fam.poly(1));
  CHECK(combo.is_zero());

  // n = 1, j = 1, y0 = a: K_0^{(0,1)}(x,a) = 0 because D U_0 = 0
  QContext ctx1 = ctx_default(1);
  ASCFamily fam1(ctx1);
  auto [A1, B1] = fam1.kernel_ab_coeffs(1, ctx1.a_scalar());
  RatFunX combo1 = A1 * RatFunX::from_poly(fam1.poly(1)) + B1 * RatFunX::from_poly(fam1.poly(0));
  CHECK(combo1.is_zero());
}

TEST_CASE("numeric orthogonality and norms") {
  QContext ctx = ctx_default(1, Backend::approx);
  ASCFamily fam(ctx);
  BigFloat z = ctx.z().real();
  double tol = 1e-12;

  for (int n = 0; n <= 6; ++n) {
    BigFloat integral = jackson_integral_numeric(ctx, fam.poly(n) * fam.poly(n), tol);
    BigFloat expect = fam.reduced_norm(n).real() * z;
    CHECK(bf_abs(integral - expect) / bf_abs(expect) < bigfloat(1e-8));
    for (int m = 0; m < n; ++m) {
      BigFloat cross = jackson_integral_numeric(ctx, fam.poly(m) * fam.poly(n), tol);
      CHECK(bf_abs(cross) < bigfloat(1e-8));
    }
  }
}
