#include <doctest.h>

#include "support.hpp"

using namespace skewps;
using namespace skewps::testing;

TEST_SUITE("skew-datum") {

TEST_CASE("iterate") {
  F4Fixture fx;
  Rng g(1);
  auto smp = samples(fx.R, g, 10);
  SkewDatum d0 = fx.d->iterate(0);
  for (const auto& q : smp) {
    CHECK((d0.apply_sigma(q) - fx.d->apply_sigma(q)).is_zero());
    CHECK((d0.delta(q) - fx.d->delta(q)).is_zero());
  }

  FieldPtr F = FiniteField::make(3, 1);
  QRing R{F, 2, 8};
  SkewDatum triv(R, Auto::identity(), R.one().scale(F->neg(1)));
  for (const auto& q : samples(R, g, 5)) {
    CHECK(triv.delta(q).is_zero());
    CHECK(triv.iterate(1).delta(q).is_zero());
  }
}

TEST_CASE("second iterate of delta in characteristic 2") {
  F4Fixture fx;
  Rng g(2);
  SkewDatum d1 = fx.d->iterate(1);
  QElem t2 = fx.t * fx.t;
  for (int i = 0; i < 100; ++i) {
    QElem s = fx.R.random(g);
    QElem dd = fx.d->delta(fx.d->delta(s));
    CHECK((dd - d1.delta(s)).is_zero());
    CHECK((dd - (t2 * s - fx.d->apply_sigma_pow(s, 2) * t2)).is_zero());
  }
}

TEST_CASE("certify_compatibility") {
  FieldPtr F2 = FiniteField::make(2, 1);
  QRing R1{F2, 1, 8};
  QElem U = R1.one() + R1.pi_pow(1);
  CHECK(certify_compatibility(R1, Auto::inner(U, invert_in_O(U.with_prec(16), 16)), R1.one()).kind ==
        Compat::Compatible);

  FieldPtr F4 = FiniteField::make(2, 2);
  QRing R{F4, 2, 8};
  CompatResult fr = certify_compatibility(R, Auto::frobenius(1), R.one());
  CHECK(fr.kind == Compat::QuasiCompatible);
  CHECK(fr.m == 1);
  CHECK(fr.str() == "quasi-compatible-with(1)");

  CHECK(certify_compatibility(R, Auto::identity(), R.one()).kind == Compat::Compatible);
}

TEST_CASE("order_on_centre") {
  FieldPtr F4 = FiniteField::make(2, 2);
  QRing R{F4, 2, 8};
  QElem U = R.one() + R.unit_matrix(0, 1, 1, 1);
  CHECK(order_on_centre(SkewDatum(R, Auto::inner(U, U.inv(16)), R.one())) == 1);
  CHECK(order_on_centre(SkewDatum(R, Auto::identity(), R.one())) == 1);
  FieldPtr F27 = FiniteField::make(3, 3);
  QRing R3{F27, 1, 6};
  CHECK(order_on_centre(SkewDatum(R3, Auto::frobenius(1), R3.one().scale(F27->neg(1)))) == 3);
}

TEST_CASE("check_sigma_fixes_conjugator") {
  FieldPtr F2 = FiniteField::make(2, 1);
  QRing R{F2, 2, 8};
  Rng g(4);
  auto smp = samples(R, g, 6);
  SkewDatum id(R, Auto::identity(), R.one());
  CHECK(check_sigma_fixes_conjugator(id, R.one(), 0, smp));

  F4Fixture fx;
  auto smp4 = samples(fx.R, g, 6);
  // sigma^2 = conj_{t^2} fails here (sigma is not inner), but sigma fixes every power of t
  CHECK((fx.d->apply_sigma(fx.t.pow(2, kInf)) - fx.t.pow(2, kInf)).is_zero());

  // U = 1 + pi e01 has U^2 = 1, so sigma = conj_U satisfies sigma^{2^0} = conj_{U (1+pi)}
  QElem U = R.one() + R.unit_matrix(0, 1, 1, 1);
  SkewDatum d(R, Auto::inner(U, U), R.one());
  QElem a = U * (R.one() + R.pi_pow(1));
  CHECK(check_sigma_fixes_conjugator(d, a, 0, smp));
}

TEST_CASE("skew Leibniz and commuting on random pairs") {
  F4Fixture fx;
  Rng g(6);
  for (int i = 0; i < 60; ++i) {
    QElem a = fx.R.random(g, -1), b = fx.R.random(g);
    CHECK((fx.d->delta(a * b) - (fx.d->delta(a) * b + fx.d->apply_sigma(a) * fx.d->delta(b))).is_zero());
    CHECK((fx.d->apply_sigma(fx.d->delta(a)) - fx.d->delta(fx.d->apply_sigma(a))).is_zero());
  }
}

TEST_CASE("iteration coherence") {
  F4Fixture fx;
  Rng g(8);
  SkewDatum a = fx.d->iterate(1).iterate(1);
  SkewDatum b = fx.d->iterate(2);
  for (const auto& q : samples(fx.R, g, 8)) {
    CHECK((a.apply_sigma(q) - b.apply_sigma(q)).is_zero());
    CHECK((a.delta(q) - b.delta(q)).is_zero());
  }
}

TEST_CASE("characteristic p degree collapse") {
  FieldPtr F4 = FiniteField::make(2, 2);
  QRing R{F4, 2, 12};
  QElem U = diag2(mono(F4, 0), mono(F4, 0) + mono(F4, 1));
  Auto sigma = Auto::inner(U, U.inv(24));
  for (long m = 0; m <= 2; ++m) {
    FiltMap a = FiltMap::sigma_minus_id(FiltMap::automorphism(sigma.pow(ipow(2, m))));
    FiltMap b = FiltMap::sigma_minus_id(FiltMap::automorphism(sigma.pow(ipow(2, m + 1))));
    Value da = degree_of_map(a, R).degree, db = degree_of_map(b, R).degree;
    REQUIRE(da == ipow(2, m));
    CHECK(db >= 2 * da);
  }
}

}
