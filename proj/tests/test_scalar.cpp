#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qsobolev/scalar.hpp"

using namespace qsobolev;

namespace {

ZRat zr(const char* text) { return ZRat::parse(text); }

/* Small random rational functions in Z for the property checks. */
struct ZRatGen {
  std::mt19937 rng{20240615};

  Rational rational() {
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 5);
    return make_rational(num(rng), den(rng));
  }

  detail::QQPoly poly(int max_deg, bool nonzero = false) {
    std::uniform_int_distribution<int> deg(0, max_deg);
    detail::QQPoly p;
    int d = deg(rng);
    for (int i = 0; i <= d; ++i) p.push_back(rational());
    detail::qq_trim(p);
    if (nonzero && p.empty()) p.push_back(Rational(1));
    return p;
  }

  ZRat value() { return ZRat(poly(3), poly(3, true)); }
  ZRat nonzero_value() {
    for (;;) {
      ZRat v = value();
      if (!v.is_zero()) return v;
    }
  }
};

}  // namespace

TEST_CASE("rational arithmetic stays canonical") {
  Scalar half = Scalar::exact(make_rational(1, 2));
  Scalar third = Scalar::exact(make_rational(1, 3));
  CHECK((half + third) == Scalar::exact(make_rational(5, 6)));
  CHECK(parse_rational(" -3/6 ") == make_rational(-1, 2));
  CHECK(rational_str(make_rational(10, -4)) == "-5/2");
  CHECK(rational_pow(make_rational(2, 3), -2) == make_rational(9, 4));
}

TEST_CASE("multiplicative inverse in Q(Z)") {
  ZRat z = ZRat::generator();
  ZRat one(Rational(1));
  ZRat lhs = (z + one) / z;
  ZRat rhs = z / (z + one);
  CHECK(lhs * rhs == one);
}

TEST_CASE("gcd cancellation gives canonical form") {
  // (Z^2 - 1)/(Z - 1) -> Z + 1
  ZRat v(detail::QQPoly{Rational(-1), Rational(0), Rational(1)},
         detail::QQPoly{Rational(-1), Rational(1)});
  CHECK(v == zr("[1, 1] / [1]"));
  CHECK(v.num() == detail::QQPoly{Rational(1), Rational(1)});
  CHECK(v.den() == detail::QQPoly{Rational(1)});
}

TEST_CASE("canonical-form equality matches cross multiplication") {
  ZRatGen gen;
  for (int i = 0; i < 200; ++i) {
    ZRat a = gen.value();
    ZRat b = gen.nonzero_value();
    ZRat c = gen.value();
    ZRat d = gen.nonzero_value();
    bool eq = (a / b) == (c / d);
    bool cross = (a * d) == (c * b);
    CHECK(eq == cross);
  }
}

TEST_CASE("field axioms on random exact inputs") {
  ZRatGen gen;
  for (int i = 0; i < 100; ++i) {
    ZRat a = gen.value();
    ZRat b = gen.value();
    ZRat c = gen.value();
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + (-a) == ZRat());
    if (!a.is_zero()) CHECK(a * a.inverse() == ZRat(Rational(1)));
  }
}

TEST_CASE("numeric substitution of Z") {
  Scalar z = Scalar::exact(ZRat::generator());
  CHECK(z.eval_z(bigfloat(0.25)) == bigfloat(0.25));

  // (2Z + 1)/3 at Z = 1
  Scalar s = Scalar::exact(zr("[1, 2] / [3]"));
  CHECK(bf_abs(s.eval_z(bigfloat(1L)) - bigfloat(1L)) < bigfloat(1e-70));

  // 1/(1 - Z) has a pole at Z = 1
  Scalar pole = Scalar::exact(zr("[1] / [1, -1]"));
  CHECK_THROWS_AS(pole.eval_z(bigfloat(1L)), PoleAtZ);
}

TEST_CASE("evaluation is a field homomorphism") {
  ZRatGen gen;
  BigFloat z = bigfloat(make_rational(13, 64));
  BigFloat eps = bigfloat(1e-60);
  for (int i = 0; i < 50; ++i) {
    ZRat a = gen.value();
    ZRat b = gen.value();
    CHECK(bf_abs((a + b).eval(z) - (a.eval(z) + b.eval(z))) < eps);
    CHECK(bf_abs((a * b).eval(z) - (a.eval(z) * b.eval(z))) < eps);
  }
}

TEST_CASE("backends never mix") {
  Scalar e = Scalar::exact(make_rational(1, 2));
  Scalar x = Scalar::approx(bigfloat(0.5));
  CHECK_THROWS_AS(e + x, BackendMismatch);
  CHECK_THROWS_AS(x * e, BackendMismatch);
  CHECK_THROWS_AS(x.zrat(), BackendMismatch);
  CHECK_THROWS_AS(e.real(), BackendMismatch);
}

TEST_CASE("division by zero is rejected") {
  Scalar one = Scalar::exact(make_rational(1, 1));
  Scalar zero = Scalar::exact(make_rational(0, 1));
  CHECK_THROWS_AS(one / zero, DivisionByZero);
  CHECK_THROWS_AS(zero.inverse(), DivisionByZero);
}

TEST_CASE("textual form round-trips") {
  ZRat v = zr("[-1/2, 3] / [1]");
  CHECK(v.str() == "[-1/2, 3] / [1]");
  CHECK(ZRat::parse(v.str()) == v);

  ZRatGen gen;
  for (int i = 0; i < 50; ++i) {
    ZRat a = gen.value();
    CHECK(ZRat::parse(a.str()) == a);
  }
}
