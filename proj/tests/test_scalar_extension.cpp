#include <doctest.h>

#include "skewps/scalar_extension.hpp"
#include "support.hpp"

using namespace skewps;
using namespace skewps::testing;

namespace {

// sigma = conj_U o Frob on M_2(F_4((pi))), the F4-ramified fixture
struct Ramified {
  FieldPtr F = FiniteField::make(2, 2);
  QRing R{F, 2, 12};
  Auto sigma;
  QElem t;
  Ramified() {
    QElem U = QElem::from_rows({{mono(F, 0, 0), mono(F, 0)}, {mono(F, 1), mono(F, 1)}});
    sigma = Auto::inner(U, U.inv(3 * R.N)).compose(Auto::frobenius(1));
    t = QElem::from_rows({{mono(F, 0), mono(F, 0)}, {mono(F, 1), mono(F, 0) + mono(F, 1)}});
  }
};

DatumPtr centre_trivial(Value N = 10) {
  FieldPtr F = FiniteField::make(2, 2);
  QRing R{F, 2, N};
  QElem V = diag2(mono(F, 0), mono(F, 0) + mono(F, 1));
  QElem t = diag2(LaurentElem::constant(F, F->gen()), LaurentElem::constant(F, F->gen()) * (mono(F, 0) + mono(F, 1)));
  return make_datum(R, Auto::inner(V, V.inv(3 * N)), t, 12);
}

}  // namespace

TEST_SUITE("scalar-extension") {

TEST_CASE("tensor filtration of basis tensors") {
  FieldPtr F = FiniteField::make(2, 1);
  QRing R{F, 2, 10};
  Rng g(61);
  FiltBasis triv = FiltBasis::trivial(F);
  for (int i = 0; i < 10; ++i) {
    QElem q = random_exact(R, g, -2, 4);
    CHECK(tensor_filtration(triv, {q}) == q.u());
  }
  Adjunction A = adjoin_root_of_unit_power(mono(F, 1), 2, 40);
  REQUIRE(A.basis.elements.size() == 2);
  std::size_t rho = A.basis.elements[0].second == 1 ? 0 : 1;
  std::vector<QElem> parts(2, R.zero());
  parts[rho] = R.one();
  CHECK(tensor_filtration(A.basis, parts) == 1);
  CHECK(tensor_to_QK(A.basis, parts).u() == 1);
}

TEST_CASE("tensor filtration against random representations") {
  FieldPtr F = FiniteField::make(2, 1);
  QRing R{F, 2, 10};
  Rng g(62);
  for (const FiltBasis& B : {adjoin_root_of_unit_power(mono(F, 1), 2, 40).basis, unramified_extension(F, 2)}) {
    for (int i = 0; i < 10; ++i) {
      std::vector<QElem> parts;
      for (std::size_t k = 0; k < B.elements.size(); ++k) parts.push_back(random_exact(R, g, -2, 3));
      Value formula = tensor_filtration(B, parts);
      QElem x = tensor_to_QK(B, parts);
      CHECK(formula == x.u());
      auto back = decompose_tensor(B, x);
      for (std::size_t k = 0; k < parts.size(); ++k) CHECK((back[k] - parts[k]).is_zero());
      for (int j = 0; j < 20; ++j) {
        TensorRep rep = random_representation(B, parts, R, g, 3);
        CHECK(representation_value(B, rep) <= formula);
        CHECK((representation_to_QK(B, rep) - x).is_zero());
      }
    }
  }
}

TEST_CASE("centre of the tensor product") {
  FieldPtr F = FiniteField::make(2, 1);
  QRing R{F, 2, 10};
  FiltBasis B = adjoin_root_of_unit_power(mono(F, 1), 2, 40).basis;
  Rng g(63);
  QRing QK{B.ext, 2, 20};
  for (int i = 0; i < 10; ++i) {
    LaurentElem lam = QK.random_scalar(g, -1);
    auto parts = decompose_tensor(B, QK.one().scale(lam));
    for (const QElem& q : parts) {
      CHECK(q(0, 1).is_zero());
      CHECK(q(1, 0).is_zero());
      CHECK((q(0, 0) - q(1, 1)).is_zero());
    }
  }
  // a non-scalar element of Q_K is not central
  QElem e01 = QK.unit_matrix(0, 1);
  CHECK_FALSE((e01 * QK.unit_matrix(1, 1) - QK.unit_matrix(1, 1) * e01).is_zero());
}

TEST_CASE("composed filt-bases") {
  FieldPtr F = FiniteField::make(2, 1);
  FiltBasis K1 = adjoin_root_of_unit_power(mono(F, 1), 2, 40).basis;
  FiltBasis K2 = unramified_extension(K1.ext, 2);
  ComposedBasis C = compose_filt_bases(K1, K2);
  CHECK(C.elements.size() == 4);
  CHECK(C.e == 2);
  Rng g(64);
  QRing R{F, 1, 10};
  for (int i = 0; i < 50; ++i) {
    std::vector<LaurentElem> z;
    for (int k = 0; k < 4; ++k) z.push_back(random_exact(R, g, -2, 3)(0, 0));
    CHECK(C.combine(z).val() == C.formula(z));
  }
}

TEST_CASE("build_extended_datum") {
  DatumPtr d = centre_trivial();
  ExtendedDatum triv = build_extended_datum(d, FiltBasis::trivial(d->ring().F));
  CHECK(triv.cert.ae1);
  CHECK(triv.cert.ae2);
  CHECK(triv.cert.c1 == 0);
  CHECK(triv.cert.c2 == 0);

  ExtendedDatum ram = build_extended_datum(d, adjoin_root_of_unit_power(mono(d->ring().F, 1), 2, 64).basis);
  CHECK(ram.cert.ae1);
  CHECK(ram.cert.ae2);
  CHECK(ram.cert.c1 >= 0);
  CHECK(ram.cert.c2 >= 0);
  CHECK(ram.cert.c2 <= ram.K.e - 1);
  CHECK(ram.QK.N == 2 * d->ring().N);

  ExtendedDatum unr = build_extended_datum(d, unramified_extension(d->ring().F, 2));
  CHECK(unr.datumK->m() == d->m());
  CHECK(unr.datumK->compat().kind == d->compat().kind);

  Ramified fx;
  DatumPtr moving = make_datum(fx.R, fx.sigma, fx.t);
  CHECK_THROWS_AS(build_extended_datum(moving, FiltBasis::trivial(fx.F)), CertificationFail);
}

TEST_CASE("theta_map") {
  DatumPtr d = centre_trivial();
  ExtendedDatum E = build_extended_datum(d, adjoin_root_of_unit_power(mono(d->ring().F, 1), 2, 64).basis);
  CHECK((theta_map(BoundedSeries::one(d), E) - BoundedSeries::one(E.datumK)).is_zero());
  Rng g(65);
  BoundedSeries y = BoundedSeries::x_pow(E.datumK, 1);
  for (int i = 0; i < 50; ++i) {
    QElem r = d->ring().random(g);
    BoundedSeries lhs = theta_map(series_mul(BoundedSeries::x_pow(d, 1), BoundedSeries::constant(d, r)), E);
    BoundedSeries rhs = series_mul(y, theta_map(BoundedSeries::constant(d, r), E));
    CHECK((lhs - rhs).residual() >= E.QK.N);
  }
  for (int i = 0; i < 10; ++i) {
    BoundedSeries f = random_series(d, g, 3), h = random_series(d, g, 3);
    BoundedSeries diff = theta_map(series_mul(f, h), E) - series_mul(theta_map(f, E), theta_map(h, E));
    CHECK(diff.residual() >= E.QK.N);
    BoundedSeries tf = theta_map(f, E);
    CHECK((theta_inverse(tf, E) - f).is_zero());
    if (!f.is_zero()) CHECK_FALSE(tf.is_zero());
  }
  CHECK(theta_map(BoundedSeries::zero(d), E).is_zero());
}

TEST_CASE("central_scale") {
  DatumPtr d = centre_trivial();
  const QRing& R = d->ring();
  Rng g(66);
  QElem a = R.random_unit(g);
  CentralScale u = central_scale(a, d);
  CHECK(u.ext.K.e == 1);
  CHECK(u.ext.K.f == 1);
  CHECK(u.zeta.equals(LaurentElem::constant(R.F, 1)));
  CHECK((u.c - a.pow(ipow(2, u.ell), kInf)).certified() >= R.N);
  CHECK(u.unit_verified);

  FieldPtr F2 = FiniteField::make(2, 1);
  QRing R1{F2, 1, 10};
  DatumPtr d1 = make_datum(R1, Auto::identity(), R1.one());
  CentralScale pi = central_scale(R1.pi_pow(1), d1);
  CHECK(pi.C == 1);
  CHECK(pi.zeta.equals(mono(F2, pi.v)));
  CHECK(pi.unit_verified);

  QRing R2{F2, 2, 10};
  DatumPtr d2 = make_datum(R2, Auto::identity(), R2.one());
  QElem api = (R2.one() + R2.pi_pow(1)).shift(1);
  CentralScale q = central_scale(api, d2, mono(F2, 2) + mono(F2, 3));
  CHECK(q.C == 2);
  CHECK(q.ext.K.e == 2);
  CHECK(q.unit_verified);
  CHECK(q.uc == 0);
  CHECK(q.uc_inv == 0);
  invert_in_O(q.c, q.ext.QK.N);

  CHECK_THROWS_AS(central_scale(api, d2, LaurentElem::constant(F2, 1)), NoCentralElement);
}

TEST_CASE("u_K(c^n) = n u_K(c) for produced units") {
  FieldPtr F2 = FiniteField::make(2, 1);
  QRing R2{F2, 2, 10};
  DatumPtr d2 = make_datum(R2, Auto::identity(), R2.one());
  CentralScale q = central_scale((R2.one() + R2.pi_pow(1)).shift(1), d2, mono(F2, 2) + mono(F2, 3));
  for (long n = -8; n <= 8; ++n) {
    QElem cn = n >= 0 ? q.c.pow(n, q.ext.QK.N) : q.c_inv.pow(-n, q.ext.QK.N);
    CHECK(cn.u() == 0);
  }
  LaurentElem z = q.zeta;
  for (long n = -8; n <= 8; ++n) CHECK(z.pow(n, 4 * q.ext.QK.N).val() == n * z.val());
}

TEST_CASE("frobenius_twist_lift") {
  FieldPtr F2 = FiniteField::make(2, 1);
  FieldPtr F4 = FiniteField::make(2, 2);
  QRing R{F4, 1, 10};
  FieldEmbedding em(F2, F4);

  QElem b1 = (R.one() + R.pi_pow(1)).with_prec(R.N);
  TwistLift t1 = frobenius_twist_lift(b1, minimal_polynomial_over(em, 1), em, 3);
  CHECK(t1.root == 1);
  CHECK(t1.residual >= 1);

  FieldPtr F3 = FiniteField::make(3, 1);
  QRing R3{F3, 1, 10};
  QElem b2 = (R3.one() + R3.pi_pow(1)).scale(2).with_prec(R3.N);
  FieldEmbedding id3 = FieldEmbedding::identity(F3);
  TwistLift t2 = frobenius_twist_lift(b2, minimal_polynomial_over(id3, 2), id3, 0);
  CHECK(t2.root == 2);
  CHECK(t2.residual >= 1);

  Elem w = F4->gen();
  FPoly f = minimal_polynomial_over(em, w);
  CHECK(f == FPoly{1, 1, 1});
  QElem bw = (R.one().scale(w) + R.pi_pow(2)).with_prec(R.N);
  TwistLift t3 = frobenius_twist_lift(bw, f, em, 1);
  CHECK(t3.root == F4->mul(w, w));
  CHECK(t3.residual >= 1);

  QRing RM{F4, 2, 10};
  QElem notc = (RM.one() + RM.unit_matrix(0, 1)).with_prec(RM.N);
  CHECK_THROWS_AS(frobenius_twist_lift(notc, FPoly{1, 1}, em, 0), NotCentralModJ);
  CHECK_THROWS_AS(frobenius_twist_lift(bw, FPoly{1, 1}, em, 0), RootNotFound);
}

TEST_CASE("converge_inner") {
  FieldPtr F2 = FiniteField::make(2, 1);
  QRing R{F2, 1, 16};
  QElem c1 = (R.one() + R.pi_pow(1)).with_prec(R.N);
  ConvergenceRun run = converge_inner(c1, 3, Auto::identity(), R);
  CHECK(run.r == 2);
  CHECK(run.s == 1);
  REQUIRE(run.sj.size() >= 3);
  CHECK(run.sj[0] == 1);
  CHECK(run.sj[1] == 5);
  CHECK(run.sj[2] == 21);
  for (std::size_t j = 0; j + 1 < run.sj.size(); ++j) CHECK(run.sj[j + 1] == 4 * run.sj[j] + 1);
  REQUIRE(run.diffs.size() >= 2);
  CHECK(run.diffs[0] >= 4);
  CHECK(run.diffs[1] >= 16);
  CHECK(run.ok);
  CHECK(run.c_minus_one >= 1);

  ConvergenceRun one = converge_inner(c1, 1, Auto::identity(), R);
  CHECK(one.r == 1);
  CHECK(one.s == 1);
  CHECK(one.ok);

  CHECK_THROWS_AS(converge_inner(c1, 2, Auto::identity(), R), NotCoprime);

  QRing R2{F2, 2, 16};
  QElem cm = R2.one() + R2.unit_matrix(0, 1, 1, 1);
  Auto tau = Auto::inner(cm, invert_in_O(cm.with_prec(R2.N), R2.N));
  ConvergenceRun m = converge_inner(cm.pow(3, kInf).with_prec(R2.N), 3, tau, R2);
  CHECK(m.ok);
  CHECK(m.tau_residual >= R2.N);
}

TEST_CASE("reduce_to_sfoh") {
  FieldPtr F4 = FiniteField::make(2, 2);
  QRing R{F4, 2, 10};
  QElem U = R.one() + R.unit_matrix(0, 1, 1, 1);
  SfohReport sc = reduce_to_sfoh(R, Auto::inner(U, U.inv(30)), R.one().scale(F4->neg(1)));
  CHECK(sc.short_circuit);
  CHECK(sc.ell == 0);
  CHECK(sc.ok);

  Ramified fx;
  SfohReport full = reduce_to_sfoh(fx.R, fx.sigma, fx.t);
  CHECK(full.ok);
  CHECK(full.uc == 0);
  CHECK(full.uc_inv == 0);
  CHECK(full.witness_residual >= fx.R.N);
  CHECK(full.original_residual >= fx.R.N);
  CHECK((full.c - QElem::identity(full.c.field(), 2)).certified() >= 0);
  SfohReport again = reduce_to_sfoh(fx.R, fx.sigma, fx.t);
  CHECK(again.c.str() == full.c.str());

  QElem broken = R.unit_matrix(0, 1);
  try {
    reduce_to_sfoh(R, Auto::inner(U, U.inv(30)).compose(Auto::frobenius(1)), broken.scale(F4->gen()));
    FAIL("expected a stage 0 failure");
  } catch (const Error& e) {
    CHECK(e.kind() == "HypothesisFail");
    CHECK(std::string(e.what()).find("stage 0") != std::string::npos);
  }
}

TEST_CASE("describe_extension") {
  FieldPtr F2 = FiniteField::make(2, 1);
  CHECK(describe_extension(FiltBasis::trivial(F2)) == "K = Z");
  CHECK(describe_extension(adjoin_root_of_unit_power(mono(F2, 1), 2, 32).basis).find("e = 2") != std::string::npos);
}

}
