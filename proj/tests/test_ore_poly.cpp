#include <doctest.h>

#include "support.hpp"

using namespace skewps;
using namespace skewps::testing;

TEST_SUITE("ore-poly") {

TEST_CASE("x r = sigma(r) x + delta(r)") {
  F4Fixture fx;
  Rng g(21);
  OrePoly X = OrePoly::x_pow(fx.d, 1);
  for (int i = 0; i < 30; ++i) {
    QElem r = fx.R.random(g, -1);
    OrePoly lhs = ore_mul(X, OrePoly::constant(fx.d, r));
    CHECK(lhs.degree() <= 1);
    CHECK((lhs.coeff(1) - fx.d->apply_sigma(r)).is_zero());
    CHECK((lhs.coeff(0) - fx.d->delta(r)).is_zero());
  }
}

TEST_CASE("f * 1 = f") {
  F4Fixture fx;
  Rng g(22);
  OrePoly f = random_poly(fx.d, g, 4);
  CHECK(ore_mul(f, OrePoly::constant(fx.d, fx.R.one())).equals(f));
  CHECK(ore_mul(OrePoly::constant(fx.d, fx.R.one()), f).equals(f));
}

TEST_CASE("(x x) r = x (x r)") {
  F4Fixture fx;
  Rng g(23);
  OrePoly X = OrePoly::x_pow(fx.d, 1);
  for (int i = 0; i < 100; ++i) {
    OrePoly r = OrePoly::constant(fx.d, fx.R.random(g));
    CHECK(ore_mul(ore_mul(X, X), r).equals(ore_mul(X, ore_mul(X, r))));
  }
}

TEST_CASE("associativity and distributivity") {
  F4Fixture fx;
  Rng g(24);
  for (int i = 0; i < 30; ++i) {
    OrePoly a = random_poly(fx.d, g, static_cast<long>(uniform(g, 6)));
    OrePoly b = random_poly(fx.d, g, static_cast<long>(uniform(g, 6)));
    OrePoly c = random_poly(fx.d, g, static_cast<long>(uniform(g, 6)));
    CHECK(poly_residual((a * b) * c - a * (b * c)) >= fx.R.N);
    CHECK(poly_residual(a * (b + c) - (a * b + a * c)) >= fx.R.N);
    CHECK(poly_residual((a + b) * c - (a * c + b * c)) >= fx.R.N);
  }
}

TEST_CASE("degree of products") {
  FieldPtr F = FiniteField::make(3, 1);
  QRing R{F, 1, 8};
  DatumPtr d = make_datum(R, Auto::identity(), R.one().scale(F->neg(1)));
  Rng g(25);
  for (int i = 0; i < 20; ++i) {
    OrePoly a = random_poly(d, g, 3), b = random_poly(d, g, 2);
    if (a.coeff(a.degree()).u() == 0 && b.coeff(b.degree()).u() == 0) CHECK((a * b).degree() == a.degree() + b.degree());
    CHECK((a * b).degree() <= a.degree() + b.degree());
  }
}

TEST_CASE("right coefficients") {
  F4Fixture fx;
  Rng g(26);
  QElem r = fx.R.random(g);
  OrePoly f = OrePoly::from_right_coefficients(fx.d, {fx.R.zero(), r});
  CHECK(f.equals(ore_mul(OrePoly::x_pow(fx.d, 1), OrePoly::constant(fx.d, r))));
}

TEST_CASE("frobenius_power_relation") {
  F4Fixture fx;
  Rng g(27);
  for (long n = 0; n <= 2; ++n)
    for (int i = 0; i < 10; ++i) {
      FrobeniusRelation fr = frobenius_power_relation(fx.d, fx.R.random(g), n);
      CHECK(fr.only_two_positions);
      CHECK(fr.equal);
    }
}

TEST_CASE("x^2 s in characteristic 2 with t = 1") {
  FieldPtr F = FiniteField::make(2, 2);
  QRing R{F, 2, 8};
  DatumPtr d = make_datum(R, Auto::frobenius(1), R.one());
  Rng g(28);
  for (int i = 0; i < 20; ++i) {
    QElem s = R.random(g);
    FrobeniusRelation fr = frobenius_power_relation(d, s, 1);
    QElem sm = d->apply_sigma(s) - s;
    QElem smm = d->apply_sigma(sm) - sm;
    CHECK((fr.lhs.coeff(2) - d->apply_sigma_pow(s, 2)).is_zero());
    CHECK((fr.lhs.coeff(0) - smm).is_zero());
  }
}

TEST_CASE("central sigma-fixed s commutes with x^{p^n}") {
  F4Fixture fx;
  QElem s = fx.R.pi_pow(1) + fx.R.one();
  FrobeniusRelation fr = frobenius_power_relation(fx.d, s, 2);
  CHECK(fr.lhs.equals(OrePoly::x_pow(fx.d, 4).scale_left(s)));
}

TEST_CASE("text form") {
  FieldPtr F = FiniteField::make(2, 1);
  QRing R{F, 1, 8};
  DatumPtr d = make_datum(R, Auto::identity(), R.one());
  OrePoly f(d, {R.one(), R.zero(), R.pi_pow(1)});
  CHECK(f.str() == "(pi)*x^2 + (1)");
}

}
