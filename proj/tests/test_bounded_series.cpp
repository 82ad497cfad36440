#include <doctest.h>

#include "support.hpp"

using namespace skewps;
using namespace skewps::testing;

namespace {

QElem scal(const QRing& R, long v) { return R.one().scale(R.F->from_int(v)); }

}  // namespace

TEST_SUITE("bounded-series") {

TEST_CASE("binomials mod p") {
  CHECK(binom_mod_p(4, 2, 2) == 0);
  CHECK(binom_mod_p(5, 1, 2) == 1);
  CHECK(binom_mod_p(6, 3, 5) == 0);
  CHECK(binom_mod_p(7, 3, 5) == 0);
  CHECK(binom_mod_p(7, 2, 5) == 1);
  CHECK(binom_mod_p(9, 3, 3) == 3 % 3);
}

TEST_CASE("constant term of a product") {
  F4Fixture fx;
  Rng g(31);
  OrePoly f = random_poly(fx.d, g, 4);
  QElem b0 = fx.R.random(g);
  BoundedSeries prod = series_mul(BoundedSeries::from_poly(f), BoundedSeries::constant(fx.d, b0));
  QElem expect = fx.R.zero();
  for (long i = 0; i <= f.degree(); ++i) expect = expect + f.coeff(i) * fx.d->delta_pow(b0, i);
  CHECK((prod.coeff(0) - expect).is_zero());
}

TEST_CASE("series_mul agrees with ore_mul on polynomials") {
  F4Fixture fx;
  Rng g(32);
  for (int i = 0; i < 20; ++i) {
    OrePoly a = random_poly(fx.d, g, 5), b = random_poly(fx.d, g, 5);
    BoundedSeries s = series_mul(BoundedSeries::from_poly(a), BoundedSeries::from_poly(b));
    CHECK((s - BoundedSeries::from_poly(ore_mul(a, b))).is_zero());
  }
}

TEST_CASE("f * 1 keeps precision") {
  F4Fixture fx;
  Rng g(33);
  BoundedSeries f = random_series(fx.d, g, 6);
  BoundedSeries h = series_mul(f, BoundedSeries::one(fx.d));
  CHECK((h - f).is_zero());
  for (long n = 0; n <= std::min(f.M(), h.M()); ++n) CHECK(h.cprec(n) == f.cprec(n));
}

TEST_CASE("associativity modulo truncation and f_Q is a filtration") {
  F4Fixture fx(8, 12);
  Rng g(34);
  for (int i = 0; i < 10; ++i) {
    BoundedSeries a = random_series(fx.d, g, 3), b = random_series(fx.d, g, 3), c = random_series(fx.d, g, 3);
    BoundedSeries lhs = series_mul(series_mul(a, b), c), rhs = series_mul(a, series_mul(b, c));
    CHECK((lhs - rhs).residual() >= fx.R.N);
    CHECK(series_mul(a, b).fQ() >= vadd(a.fQ(), b.fQ()));
  }
}

TEST_CASE("extend_map_to_series") {
  F4Fixture fx;
  Rng g(35);
  auto smp = samples(fx.R, g, 4);
  BoundedSeries f = random_series(fx.d, g, 5);
  CHECK((extend_map_to_series(FiltMap::identity(), f, smp) - f).is_zero());

  BoundedSeries x = BoundedSeries::x_pow(fx.d, 1);
  BoundedSeries gx = g_element(fx.d);
  CHECK((extend_map_to_series(fx.d->sigma_map(), x, smp) - x).is_zero());
  CHECK((extend_map_to_series(fx.d->sigma_map(), gx, smp) - gx).is_zero());
  CHECK(extend_map_to_series(fx.d->delta_map(), x, smp).is_zero());

  QRing R = fx.R;
  QElem V = diag2(mono(R.F, 0), mono(R.F, 1) + mono(R.F, 0));
  FiltMap bad = FiltMap::inner(V, invert_in_O(V.with_prec(16), 16));
  CHECK_THROWS_AS(extend_map_to_series(bad, f, smp), CommutationFail);
}

TEST_CASE("sigma~ is multiplicative and delta~ is a sigma~-derivation") {
  F4Fixture fx;
  Rng g(36);
  auto smp = samples(fx.R, g, 4);
  for (int i = 0; i < 8; ++i) {
    BoundedSeries a = random_series(fx.d, g, 3), b = random_series(fx.d, g, 3);
    auto S = [&](const BoundedSeries& h) { return extend_map_to_series(fx.d->sigma_map(), h, smp); };
    auto D = [&](const BoundedSeries& h) { return extend_map_to_series(fx.d->delta_map(), h, smp); };
    BoundedSeries ab = series_mul(a, b);
    CHECK((S(ab) - series_mul(S(a), S(b))).residual() >= fx.R.N);
    CHECK((D(ab) - (series_mul(D(a), b) + series_mul(S(a), D(b)))).residual() >= fx.R.N);
  }
}

TEST_CASE("x^{p^n}-subring closure") {
  F4Fixture fx;
  Rng g(37);
  DatumPtr d = fx.d;
  auto sparse = [&](long P) {
    std::vector<QElem> c(9, d->ring().zero());
    for (long n = 0; n <= 8; n += P) c[n] = d->ring().random(g);
    return BoundedSeries(d, c, true, kInf);
  };
  for (long P : {2L, 4L}) {
    BoundedSeries prod = series_mul(sparse(P), sparse(P));
    for (long n = 0; n <= prod.M(); ++n)
      if (n % P) CHECK(prod.coeff(n).is_zero());
  }
}

TEST_CASE("invert_unit_series") {
  FieldPtr F2 = FiniteField::make(2, 1);
  QRing R{F2, 1, 8};
  DatumPtr d = make_datum(R, Auto::identity(), R.one(), 8);
  CHECK((invert_unit_series(BoundedSeries::one(d)) - BoundedSeries::one(d)).is_zero());

  // (x + 1)^{-1} = sum x^n in characteristic 2
  BoundedSeries h = invert_unit_series(g_element(d));
  for (long n = 0; n <= std::min<long>(h.M(), 8); ++n) CHECK((h.coeff(n) - R.one()).is_zero());

  FieldPtr F3 = FiniteField::make(3, 1);
  QRing R3{F3, 1, 8};
  DatumPtr d3 = make_datum(R3, Auto::identity(), scal(R3, -1), 8);
  BoundedSeries h3 = invert_unit_series(g_element(d3));
  for (long n = 0; n <= std::min<long>(h3.M(), 8); ++n) CHECK((h3.coeff(n) - scal(R3, n % 2 ? -1 : 1)).is_zero());

  F4Fixture fx(8, 8);
  BoundedSeries gg = g_element(fx.d);
  BoundedSeries hh = invert_unit_series(gg);
  CHECK((series_mul(gg, hh) - BoundedSeries::one(fx.d)).residual() >= 8);
  CHECK((series_mul(hh, gg) - BoundedSeries::one(fx.d)).residual() >= 8);

  BoundedSeries nonunit = BoundedSeries::x_pow(d, 1);
  CHECK_THROWS_AS(invert_unit_series(nonunit), NotAUnit);
}

TEST_CASE("change_variable") {
  F4Fixture fx;
  Rng g(38);
  auto smp = samples(fx.R, g, 3);
  BoundedSeries f = random_series(fx.d, g, 4);
  VariableChange same = change_variable(f, BoundedSeries::x_pow(fx.d, 1), fx.d, smp);
  CHECK(same.relation_holds);
  CHECK((same.series - f).is_zero());

  BoundedSeries bad(fx.d, {fx.R.one(), fx.R.pi_pow(1)}, true, kInf);
  CHECK_THROWS_AS(change_variable(f, bad, fx.d, smp), NotTriangular);
}

TEST_CASE("change_variable round trip over a commutative datum") {
  FieldPtr F = FiniteField::make(3, 1);
  QRing R{F, 1, 10};
  DatumPtr d = make_datum(R, Auto::identity(), scal(R, -1), 12);
  Rng g(39);
  BoundedSeries f = random_series(d, g, 5);
  QElem c0 = R.random(g), c1 = R.random_unit(g);
  VariableChange fw = change_variable(f, BoundedSeries(d, {c0, c1}, true, kInf), d, {});
  QElem c1i = invert_in_O(c1, R.N);
  VariableChange bw = change_variable(fw.series, BoundedSeries(d, {-(c1i * c0), c1i}, true, kInf), d, {});
  CHECK((bw.series - f).residual() >= R.N);
}

TEST_CASE("untwisting makes the new variable central") {
  // sigma = conj_V with V = diag(1, 1 + pi) and t central; sigma^2 = conj_a with a = V^2
  FieldPtr F = FiniteField::make(2, 2);
  QRing R{F, 2, 10};
  QElem V = diag2(mono(F, 0), mono(F, 0) + mono(F, 1));
  Value cap = 3 * R.N;
  Auto sigma = Auto::inner(V, V.inv(cap));
  QElem t = diag2(LaurentElem::constant(F, F->gen()), LaurentElem::constant(F, F->gen()) * (mono(F, 0) + mono(F, 1)));
  DatumPtr d = make_datum(R, sigma, t, 12);
  DatumPtr S = std::make_shared<const SkewDatum>(d->iterate(1));
  QElem a = V * V;
  QElem ainv = invert_in_O(a.with_prec(cap), cap);
  DatumPtr central = make_datum(R, Auto::identity(), R.one(), 12);
  Rng g(40);
  std::vector<QElem> smp;
  for (int i = 0; i < 50; ++i) smp.push_back(R.random(g));
  BoundedSeries X(S, {-(ainv * S->t()), ainv}, true, kInf);
  VariableChange vc = change_variable(BoundedSeries::x_pow(S, 1), X, central, smp);
  CHECK(vc.relation_holds);
  CHECK(vc.relation_residual >= R.N);
}

}
