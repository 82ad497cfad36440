#pragma once

#include <memory>
#include <vector>

#include "skewps/crossed_series.hpp"
#include "skewps/errors.hpp"
#include "skewps/skew_datum.hpp"

namespace skewps::testing {

inline LaurentElem mono(const FieldPtr& F, long n, Elem c = 1) { return LaurentElem::monomial(F, c, n); }

inline QElem diag2(const LaurentElem& a, const LaurentElem& b) {
  const FieldPtr& F = a.field();
  return QElem::from_rows({{a, LaurentElem::zero(F)}, {LaurentElem::zero(F), b}});
}

inline DatumPtr make_datum(const QRing& R, const Auto& sigma, const QElem& t, long jmax = 16) {
  return std::make_shared<const SkewDatum>(R, sigma, t, jmax);
}

// M_2(F_4((pi))) mod pi^N, sigma = conj_U o Frob with U = [[1,1],[0,1]], t = (1+pi) I + e_01
struct F4Fixture {
  FieldPtr F = FiniteField::make(2, 2);
  QRing R{F, 2, 8};
  Auto sigma;
  QElem t;
  DatumPtr d;
  explicit F4Fixture(Value N = 8, long jmax = 16) {
    R.N = N;
    QElem U = R.one() + R.unit_matrix(0, 1);
    sigma = Auto::inner(U, U).compose(Auto::frobenius(1));
    t = R.one() + R.pi_pow(1) + R.unit_matrix(0, 1);
    d = make_datum(R, sigma, t, jmax);
  }
};

inline std::vector<QElem> samples(const QRing& R, Rng& g, int extra) {
  std::vector<QElem> out = R.residue_basis();
  for (int i = 0; i < extra; ++i) out.push_back(R.random(g, static_cast<long>(uniform(g, 3))));
  return out;
}

inline OrePoly random_poly(const DatumPtr& d, Rng& g, long deg) {
  std::vector<QElem> c;
  for (long i = 0; i <= deg; ++i) c.push_back(d->ring().random(g));
  return OrePoly(d, c);
}

inline BoundedSeries random_series(const DatumPtr& d, Rng& g, long deg) {
  return BoundedSeries::from_poly(random_poly(d, g, deg));
}

inline Value poly_residual(const OrePoly& f) {
  Value v = kInf;
  for (const auto& q : f.coeffs()) v = vmin(v, q.certified());
  return v;
}

}  // namespace skewps::testing
