#include "skewps/skew_datum.hpp"

#include <numeric>

#include "skewps/errors.hpp"

namespace skewps {

long ipow(long b, long e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::string CompatResult::str() const {
  switch (kind) {
    case Compat::Compatible:
      return "compatible";
    case Compat::QuasiCompatible:
      return "quasi-compatible-with(" + std::to_string(m) + ")";
    case Compat::Uncertified:
      return "uncertified";
  }
  return "?";
}

namespace {

// conjugators of huge p-powers are truncated; the precision loss shows up in certified values
Auto power_of(const Auto& a, long e, Value cap) {
  Auto r = a.pow(e);
  return is_inf(cap) ? r : r.with_prec(cap);
}

Value min_basis_value(const QRing& R, const std::function<QElem(const QElem&)>& f) {
  Value v = kInf;
  for (const auto& b : R.residue_basis()) v = vmin(v, f(b).certified());
  return v;
}

}  // namespace

CompatResult certify_compatibility(const QRing& R, const Auto& sigma, const QElem& t) {
  if (R.N < 2) throw PrecisionTooLow("J(O)^2 membership needs precision >= 2");
  CompatResult res;
  FiltMap sm = FiltMap::automorphism(sigma);
  Value ds = degree_of_map(FiltMap::sigma_minus_id(sm), R).degree;
  Value dd = degree_of_map(FiltMap::inner_derivation(t, sm), R).degree;
  if (ds >= 1 && dd >= 1) {
    res.kind = Compat::Compatible;
    return res;
  }
  const long p = R.F->p();
  for (long m = 1; m <= SkewDatum::kMaxM; ++m) {
    long P = ipow(p, m);
    Value cap = P <= 64 ? kInf : 4 * R.N;
    Auto sP = power_of(sigma, P, cap);
    QElem tP = t.pow(P, cap);
    Value a = min_basis_value(R, [&](const QElem& q) { return sP(q) - q; });
    Value b = min_basis_value(R, [&](const QElem& q) { return tP * q - sP(q) * tP; });
    if (a >= 2 && b >= 2) {
      res.kind = Compat::QuasiCompatible;
      res.m = m;
      return res;
    }
  }
  return res;
}

SkewDatum::SkewDatum(QRing R, Auto sigma, QElem t, long jmax)
    : R_(std::move(R)), sigma_(std::move(sigma)), t_(std::move(t)), jmax_(jmax) {
  if (!(sigma_(t_) - t_).is_zero()) throw HypothesisFail("sigma(t) != t");
  compat_ = certify_compatibility(R_, sigma_, t_);
  build_tables();
}

long SkewDatum::P() const { return ipow(p(), m()); }

QElem SkewDatum::apply_sigma_pow(const QElem& q, long e) const {
  QElem x = q;
  for (long i = 0; i < e; ++i) x = sigma_(x);
  return x;
}

QElem SkewDatum::delta_pow(const QElem& q, long j) const {
  QElem x = q;
  for (long i = 0; i < j; ++i) x = delta(x);
  return x;
}

void SkewDatum::build_tables() {
  auto basis = R_.residue_basis();
  const long P = ipow(p(), m());
  const long top = std::max(jmax_, P);
  delta_deg_.assign(top + 1, kInf);
  sigma_deg_.assign(top + 1, kInf);
  std::vector<QElem> cur = basis;
  for (long j = 0; j <= top; ++j) {
    Value v = kInf;
    for (auto& b : cur) {
      v = vmin(v, b.certified());
    }
    delta_deg_[j] = v;
    if (j < top)
      for (auto& b : cur) b = delta(b);
  }
  cur = basis;
  for (long e = 0; e <= top; ++e) {
    Value v = kInf;
    for (auto& b : cur) v = vmin(v, b.certified());
    sigma_deg_[e] = v;
    if (e < top)
      for (auto& b : cur) b = sigma_(b);
  }
  if (!certified()) {
    B_ = -kInf;
    return;
  }
  Value ms = kInf, md = kInf;
  for (long e = 0; e < P; ++e) ms = vmin(ms, sigma_deg_[e]);
  for (long j = 0; j < P; ++j) md = vmin(md, delta_deg_[j]);
  B_ = vadd(ms, md);
}

Value SkewDatum::delta_deg(long j) const {
  if (j < static_cast<long>(delta_deg_.size())) return delta_deg_[j];
  if (!certified()) return -kInf;
  // delta^j = (delta^P)^q delta^r
  const long P = this->P();
  Value dP = delta_deg_[P];
  return vadd(delta_deg_[j % P], is_inf(dP) ? kInf : (j / P) * dP);
}

Value SkewDatum::sigma_deg(long e) const {
  if (e < static_cast<long>(sigma_deg_.size())) return sigma_deg_[e];
  if (!certified()) return -kInf;
  return sigma_deg_[e % P()];
}

SkewDatum SkewDatum::iterate(long n, long jmax) const {
  if (jmax < 0) jmax = jmax_;
  if (n == 0 && jmax == jmax_) return *this;
  const long P = ipow(p(), n);
  Value cap = P <= 64 ? kInf : 4 * R_.N;
  return SkewDatum(R_, power_of(sigma_, P, cap), t_.pow(P, cap), jmax);
}

long order_on_centre(const SkewDatum& d) {
  const FiniteField& F = *d.ring().F;
  const Elem w = F.gen();
  const long r = d.sigma().frob();
  long n = 1;
  for (Elem x = F.frob(w, r); x != w; x = F.frob(x, r)) ++n;
  long q = n;
  while (q % d.p() == 0) q /= d.p();
  if (q != 1) throw NotPPower("order of sigma on the centre is " + std::to_string(n));
  return n;
}

bool check_sigma_fixes_conjugator(const SkewDatum& d, const QElem& a, long k, const std::vector<QElem>& samples) {
  const QRing& R = d.ring();
  const FiniteField& F = *R.F;
  if (F.frob(F.gen(), d.sigma().frob()) != F.gen()) throw HypothesisFail("sigma is not trivial on the centre");
  QElem ainv = a.inv(R.N);
  Auto sk = d.sigma().pow(ipow(d.p(), k));
  for (const auto& q : samples) {
    QElem lhs = sk(q), rhs = a * q * ainv;
    Value pr = vmin(lhs.prec(), rhs.prec());
    if (!(lhs - rhs).with_prec(pr).is_zero()) throw HypothesisFail("sigma^{p^k} is not conjugation by a");
  }
  return (d.apply_sigma(a) - a).is_zero();
}

}  // namespace skewps
