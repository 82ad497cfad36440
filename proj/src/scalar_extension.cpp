#include "skewps/scalar_extension.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "skewps/errors.hpp"
#include "skewps/fqlinalg.hpp"

namespace skewps {

namespace {

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long ceil_div(long a, long b) { return -floor_div(-a, b); }

// Coordinates of c in k' over k with respect to 1, gamma, ..., gamma^{f-1}.
class ResidueCoords {
 public:
  explicit ResidueCoords(const FiltBasis& B) : B_(B) {
    const FiniteField& k = *B.base;
    const FiniteField& kp = *B.ext;
    const unsigned kk = k.k(), n = kp.k();
    // column (i, t) = digits of iota(w^t) gamma^i
    FqMat cols;
    Elem wt = 1;
    std::vector<Elem> wpow;
    for (unsigned t = 0; t < kk; ++t) {
      wpow.push_back(wt);
      wt = k.mul(wt, k.gen());
    }
    for (long i = 0; i < B.f; ++i) {
      Elem gi = kp.pow(B.gamma, i);
      for (unsigned t = 0; t < kk; ++t) {
        auto d = kp.digits(kp.mul(B.iota(wpow[t]), gi));
        d.resize(n, 0);
        cols.push_back(FqVec(d.begin(), d.end()));
      }
    }
    if (cols.size() != n) throw InstanceError("basis of k' over k has the wrong size");
    FqMat M(n, FqVec(n, 0));
    for (unsigned r = 0; r < n; ++r)
      for (unsigned c = 0; c < n; ++c) M[r][c] = cols[c][r];
    Fp_ = FiniteField::make(kp.p(), 1);
    auto inv = mat_inverse(*Fp_, M);
    if (!inv) throw InstanceError("powers of gamma do not span k' over k");
    Minv_ = *inv;
    wpow_ = wpow;
  }

  std::vector<Elem> operator()(Elem c) const {
    const FiniteField& k = *B_.base;
    const FiniteField& kp = *B_.ext;
    const unsigned kk = k.k(), n = kp.k();
    auto d = kp.digits(c);
    d.resize(n, 0);
    std::vector<Elem> out(static_cast<std::size_t>(B_.f), 0);
    for (unsigned r = 0; r < n; ++r) {
      unsigned acc = 0;
      for (unsigned j = 0; j < n; ++j) acc = (acc + Minv_[r][j] * d[j]) % kp.p();
      if (!acc) continue;
      const long i = r / kk;
      const unsigned t = r % kk;
      out[i] = k.add(out[i], k.mul(k.from_int(acc), wpow_[t]));
    }
    return out;
  }

 private:
  const FiltBasis& B_;
  FieldPtr Fp_;
  FqMat Minv_;
  std::vector<Elem> wpow_;
};

std::vector<LaurentElem> decompose_with(const FiltBasis& B, const ResidueCoords& rc, const LaurentElem& y) {
  const std::size_t nb = B.elements.size();
  std::map<std::pair<long, long>, std::size_t> where;
  for (std::size_t idx = 0; idx < nb; ++idx) where[B.elements[idx]] = idx;
  std::vector<std::map<long, Elem>> acc(nb);
  for (std::size_t t = 0; t < y.coeffs().size(); ++t) {
    Elem c = y.coeffs()[t];
    if (!c) continue;
    long n = y.start() + static_cast<long>(t);
    long j = ((n % B.e) + B.e) % B.e;
    long m = (n - j) / B.e;
    auto d = rc(c);
    for (long i = 0; i < B.f; ++i) {
      if (!d[i]) continue;
      auto it = where.find({i, j});
      if (it == where.end()) throw InstanceError("coordinate outside the basis");
      acc[it->second][m] = d[i];
    }
  }
  std::vector<LaurentElem> out;
  for (std::size_t idx = 0; idx < nb; ++idx) {
    long j = B.elements[idx].second;
    Value prec = y.exact() ? kInf : ceil_div(static_cast<long>(y.prec()) - j, B.e);
    if (acc[idx].empty()) {
      out.push_back(LaurentElem::zero(B.base, prec));
      continue;
    }
    long lo = acc[idx].begin()->first, hi = acc[idx].rbegin()->first;
    std::vector<Elem> c(static_cast<std::size_t>(hi - lo + 1), 0);
    for (auto& [m, v] : acc[idx]) c[m - lo] = v;
    out.push_back(LaurentElem::from_coeffs(B.base, lo, std::move(c), prec));
  }
  return out;
}

LaurentElem random_K(const FiltBasis& B, Rng& g, long lo, long len) {
  std::vector<Elem> c(static_cast<std::size_t>(len));
  for (auto& x : c) x = static_cast<Elem>(uniform(g, B.ext->order()));
  return LaurentElem::from_coeffs(B.ext, lo, std::move(c), kInf);
}

LaurentElem random_Z(const FieldPtr& k, Rng& g, long lo, long len) {
  std::vector<Elem> c(static_cast<std::size_t>(len));
  for (auto& x : c) x = static_cast<Elem>(uniform(g, k->order()));
  return LaurentElem::from_coeffs(k, lo, std::move(c), kInf);
}

// min over the residue basis of u(f(q) - g(q)), each compared at their common precision
Value basis_residual(const QRing& R, const std::function<QElem(const QElem&)>& f,
                     const std::function<QElem(const QElem&)>& g) {
  Value v = kInf;
  for (const auto& q : R.residue_basis()) {
    QElem a = f(q), b = g(q);
    v = vmin(v, (a - b).certified());
  }
  return v;
}

std::string strip_kind(const Error& e) {
  std::string w = e.what();
  const std::string pre = e.kind() + ": ";
  if (w.compare(0, pre.size(), pre) == 0) w = w.substr(pre.size());
  return w;
}

}  // namespace

// ---- tensor filtration

std::vector<LaurentElem> decompose_scalar(const FiltBasis& B, const LaurentElem& y) {
  ResidueCoords rc(B);
  return decompose_with(B, rc, y);
}

std::vector<QElem> decompose_tensor(const FiltBasis& B, const QElem& x) {
  ResidueCoords rc(B);
  const int s = x.size();
  const std::size_t nb = B.elements.size();
  std::vector<QElem> parts(nb, QElem::zero(B.base, s));
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      auto z = decompose_with(B, rc, x(i, j));
      for (std::size_t idx = 0; idx < nb; ++idx) parts[idx](i, j) = z[idx];
    }
  return parts;
}

QElem tensor_to_QK(const FiltBasis& B, const std::vector<QElem>& parts) {
  QElem acc;
  for (std::size_t idx = 0; idx < parts.size(); ++idx) {
    QElem term = B.embed(parts[idx]).scale(B.basis_element(idx));
    acc = acc.valid() ? acc + term : term;
  }
  return acc;
}

Value tensor_filtration(const FiltBasis& B, const std::vector<QElem>& parts) {
  Value v = kInf;
  for (std::size_t idx = 0; idx < parts.size(); ++idx) {
    Value c = parts[idx].certified();
    if (is_inf(c)) continue;
    v = vmin(v, B.values[idx] + B.e * c);
  }
  return v;
}

Value representation_value(const FiltBasis& B, const TensorRep& rep) {
  Value v = kInf;
  for (const auto& [beta, q] : rep.terms) {
    Value bq = beta.certified(), qq = q.certified();
    if (is_inf(bq) || is_inf(qq)) continue;
    v = vmin(v, bq + B.e * qq);
  }
  return v;
}

QElem representation_to_QK(const FiltBasis& B, const TensorRep& rep) {
  QElem acc;
  for (const auto& [beta, q] : rep.terms) {
    QElem term = B.embed(q).scale(beta);
    acc = acc.valid() ? acc + term : term;
  }
  return acc;
}

TensorRep random_representation(const FiltBasis& B, const std::vector<QElem>& parts, const QRing& R, Rng& g,
                                int extra) {
  TensorRep rep;
  for (std::size_t idx = 0; idx < parts.size(); ++idx)
    if (!parts[idx].is_zero()) rep.terms.push_back({B.basis_element(idx), parts[idx]});
  for (int n = 0; n < extra; ++n) {
    if (rep.terms.empty() || uniform(g, 2) == 0) {
      LaurentElem beta = random_K(B, g, static_cast<long>(uniform(g, 5)) - 2, 2);
      LaurentElem z = random_Z(B.base, g, static_cast<long>(uniform(g, 3)) - 1, 2);
      QElem r = random_exact(R, g, -1, 2);
      rep.terms.push_back({beta * B.embed(z), r});
      rep.terms.push_back({-beta, r.scale(z)});
    } else {
      std::size_t t = uniform(g, rep.terms.size());
      QElem q1 = random_exact(R, g, -2, 2);
      auto [beta, q] = rep.terms[t];
      rep.terms[t] = {beta, q1};
      rep.terms.push_back({beta, q - q1});
    }
  }
  return rep;
}

FiltBasis unramified_extension(const FieldPtr& k, long f) {
  if (f < 1) throw BadDegree("inertial degree must be positive");
  if (f == 1) return FiltBasis::trivial(k);
  FiltBasis B;
  B.base = k;
  B.ext = FiniteField::make(k->p(), k->k() * static_cast<unsigned>(f));
  B.iota = FieldEmbedding(k, B.ext);
  B.e = 1;
  B.f = f;
  B.gamma = B.ext->gen();
  for (long i = 0; i < f; ++i) {
    B.elements.push_back({i, 0});
    B.values.push_back(0);
  }
  return B;
}

Value ComposedBasis::formula(const std::vector<LaurentElem>& z) const {
  Value v = kInf;
  for (std::size_t idx = 0; idx < elements.size(); ++idx) {
    Value zv = z[idx].val();
    if (is_inf(zv)) continue;
    v = vmin(v, e * zv + values[idx]);
  }
  return v;
}

LaurentElem ComposedBasis::combine(const std::vector<LaurentElem>& z) const {
  LaurentElem acc = LaurentElem::zero(outer.ext);
  for (std::size_t idx = 0; idx < elements.size(); ++idx) acc = acc + embed(z[idx]) * elements[idx];
  return acc;
}

ComposedBasis compose_filt_bases(const FiltBasis& inner, const FiltBasis& outer) {
  if (!same_field(inner.ext, outer.base)) throw InstanceError("outer extension is not over the inner one");
  ComposedBasis C;
  C.inner = inner;
  C.outer = outer;
  C.e = inner.e * outer.e;
  for (std::size_t a = 0; a < inner.elements.size(); ++a)
    for (std::size_t b = 0; b < outer.elements.size(); ++b) {
      C.elements.push_back(outer.embed(inner.basis_element(a)) * outer.basis_element(b));
      C.values.push_back(inner.values[a] * outer.e + outer.values[b]);
    }
  return C;
}

QElem random_exact(const QRing& R, Rng& g, long lo, long hi) {
  QElem q = QElem::zero(R.F, R.s);
  for (int i = 0; i < R.s; ++i)
    for (int j = 0; j < R.s; ++j) q(i, j) = random_Z(R.F, g, lo, std::max(1L, hi - lo));
  return q;
}

// ---- extended datum

ExtendedDatum build_extended_datum(const DatumPtr& d, const FiltBasis& K, std::uint64_t seed) {
  const QRing& R = d->ring();
  if (!same_field(K.base, R.F)) throw CertificationFail("AD3: extension is not over the centre of Q");
  const FiniteField& F = *R.F;
  const Auto& sg = d->sigma();
  if (F.frob(F.gen(), sg.frob()) != F.gen()) throw CertificationFail("AD3: sigma moves the centre");

  ExtendedDatum E;
  E.K = K;
  E.base = d;
  E.QK = QRing{K.ext, R.s, R.N * K.e};
  Auto sK = sg.has_conjugator() ? Auto::inner(K.embed(sg.conjugator()), K.embed(sg.conjugator_inv()))
                                : Auto::identity();
  E.datumK = std::make_shared<SkewDatum>(E.QK, sK, K.embed(d->t()), d->jmax());

  Rng g(seed ? seed : 0x5eedULL);
  std::vector<QElem> samples = R.residue_basis();
  for (int i = 0; i < 8; ++i) samples.push_back(R.random(g, static_cast<long>(uniform(g, 3)) - 1));

  AECert& c = E.cert;
  c.ae1 = true;
  for (const auto& q : samples) {
    QElem iq = K.embed(q);
    if (!(E.datumK->apply_sigma(iq) - K.embed(d->apply_sigma(q))).is_zero()) c.ae1 = false;
    if (!(E.datumK->delta(iq) - K.embed(d->delta(q))).is_zero()) c.ae1 = false;
  }
  if (!c.ae1) throw CertificationFail("AE1: id (x) sigma or id (x) delta disagrees with the embedding");

  c.ae2 = true;
  for (const auto& q : samples)
    if (q.certified() >= 0 && K.embed(q).certified() < 0) c.ae2 = false;
  if (!c.ae2) throw CertificationFail("AE2: embedding does not preserve the valuation ring");

  const long W = std::max<long>(2, static_cast<long>(R.N));
  c.window = W;
  Value over = 0, under = 0;
  auto compare = [&](const std::vector<QElem>& parts) {
    Value ut = tensor_filtration(K, parts);
    Value uk = tensor_to_QK(K, parts).certified();
    if (is_inf(ut) && is_inf(uk)) return;
    if (is_inf(ut) != is_inf(uk)) {
      over = under = kInf;
      return;
    }
    over = std::max(over, ut - uk);
    under = std::max(under, uk - ut);
  };
  const std::size_t nb = K.elements.size();
  for (std::size_t idx = 0; idx < nb; ++idx)
    for (int a = 0; a < R.s; ++a)
      for (int b = 0; b < R.s; ++b)
        for (long j = -W; j <= W; ++j) {
          std::vector<QElem> parts(nb, QElem::zero(R.F, R.s));
          parts[idx] = R.unit_matrix(a, b, 1, j);
          compare(parts);
        }
  for (int n = 0; n < 24; ++n) {
    std::vector<QElem> parts;
    for (std::size_t idx = 0; idx < nb; ++idx) parts.push_back(random_exact(R, g, -W / 2, W / 2));
    compare(parts);
  }
  c.c1 = over;
  c.c2 = under;
  c.ae3_strong = !is_inf(over) && !is_inf(under);
  if (!c.ae3_strong) throw CertificationFail("AE3': tensor filtration and u_K disagree on a zero");
  std::ostringstream os;
  os << "tensor and rho-adic filtrations agree up to (" << c.c1 << ", " << c.c2 << ") on |j| <= " << W;
  c.achieved = os.str();
  return E;
}

BoundedSeries theta_map(const BoundedSeries& f, const ExtendedDatum& E) {
  if (f.datum() != E.base) throw DatumMismatch("series is not over the base datum");
  std::vector<QElem> cs;
  for (const auto& q : f.coeffs()) cs.push_back(E.embed(q));
  Value tl = f.tail_lb();
  if (!is_inf(tl) && tl > -kInf) tl *= E.K.e;
  return BoundedSeries(E.datumK, std::move(cs), f.poly_tail(), tl);
}

BoundedSeries theta_inverse(const BoundedSeries& F, const ExtendedDatum& E) {
  if (F.datum() != E.datumK) throw DatumMismatch("series is not over the extended datum");
  std::size_t one = E.K.elements.size();
  for (std::size_t idx = 0; idx < E.K.elements.size(); ++idx)
    if (E.K.elements[idx] == std::pair<long, long>{0, 0}) one = idx;
  if (one == E.K.elements.size()) throw InstanceError("basis lacks the element 1");
  std::vector<QElem> cs;
  for (long n = 0; n <= F.M(); ++n) {
    auto parts = decompose_tensor(E.K, F.coeff(n));
    for (std::size_t idx = 0; idx < parts.size(); ++idx)
      if (idx != one && !parts[idx].is_zero())
        throw InstanceError("coefficient " + std::to_string(n) + " does not lie in 1 (x) Q");
    cs.push_back(parts[one]);
  }
  Value tl = F.tail_lb();
  if (!is_inf(tl) && tl > -kInf) tl = floor_div(static_cast<long>(tl), E.K.e);
  return BoundedSeries(E.base, std::move(cs), F.poly_tail(), tl);
}

// ---- central scaling

CentralScale central_scale(const QElem& a, const DatumPtr& d, std::optional<LaurentElem> z, std::optional<long> ell) {
  const QRing& R = d->ring();
  const long p = d->p();
  CentralScale out;
  long l = ell ? *ell : d->m();
  QElem b;
  for (int attempt = 0; attempt < 4; ++attempt) {
    out.ell = l;
    const long P = ipow(p, l);
    b = a.pow(P, kInf);
    Value v = b.u();
    if (is_inf(v)) throw PrecisionTooLow("a^{p^ell} vanishes at precision");
    out.v = v;
    if (v == 0) {
      out.ext = build_extended_datum(d, FiltBasis::trivial(R.F));
      out.C = 1;
      out.zeta0 = LaurentElem::constant(R.F, 1);
      out.zeta = out.zeta0;
    } else {
      LaurentElem zz = z ? *z : LaurentElem::monomial(R.F, 1, 1);
      Value cz = zz.val();
      if (is_inf(cz) || cz <= 0) throw NoCentralElement("no central element of positive value");
      Adjunction A = adjoin_root_of_unit_power(zz, cz, R.N * 4 + 8);
      out.ext = build_extended_datum(d, A.basis);
      out.C = cz;
      out.zeta0 = A.zeta0;
      // zeta0 carries value e in rho units; v counts pi units
      out.zeta = A.zeta0.pow(v, out.ext.QK.N + std::abs(v) * A.basis.e);
    }
    long mK = out.ext.datumK->m();
    if (ell || mK <= l) break;
    l = mK;
  }
  const QRing& QK = out.ext.QK;
  out.b = out.ext.embed(b);
  LaurentElem zinv = out.zeta.inv(QK.N + std::abs(out.v) * out.ext.K.e);
  out.c = out.b.scale(zinv).with_prec(QK.N);
  out.uc = out.c.u();
  out.c_inv = invert_in_O(out.c, QK.N);
  out.uc_inv = out.c_inv.u();
  QElem check = out.c * out.c_inv - QK.one();
  out.unit_verified = out.uc == 0 && out.uc_inv == 0 && check.certified() >= QK.N;
  return out;
}

// ---- Frobenius-twisted lifting

FPoly minimal_polynomial_over(const FieldEmbedding& em, Elem x) {
  const FiniteField& A = *em.to();
  const unsigned base = em.from()->k();
  auto orbit = frobenius_orbit(A, x, base);
  FPoly f{1};
  for (Elem r : orbit) {
    FPoly g(f.size() + 1, 0);
    for (std::size_t i = 0; i < f.size(); ++i) {
      g[i + 1] = A.add(g[i + 1], f[i]);
      g[i] = A.sub(g[i], A.mul(r, f[i]));
    }
    f = std::move(g);
  }
  FPoly out;
  for (Elem c : f) {
    if (!em.in_image(c)) throw InstanceError("minimal polynomial leaves the subfield");
    out.push_back(em.preimage(c));
  }
  return out;
}

TwistLift frobenius_twist_lift(const QElem& b, const FPoly& fbar, const FieldEmbedding& em, long T) {
  const FieldPtr& A = b.field();
  if (!same_field(em.to(), A)) throw InstanceError("embedding does not land in the residue field of b");
  const int s = b.size();
  const unsigned p = A->p();
  Value cap = b.exact() ? 16 : b.prec();
  if (b.certified() < 0) throw NotAUnit("b does not lie in O");
  QElem binv = invert_in_O(b, cap);
  QRing R{A, s, cap};
  for (const auto& q : R.residue_basis())
    if ((b * q * binv - q).certified() < 1) throw NotCentralModJ("conjugation by b moves the residue ring");
  QElem bt = b.pow(ipow(p, T), cap);
  auto res = bt.residue();
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j)
      if ((i == j && res[i][j] != res[0][0]) || (i != j && res[i][j]))
        throw NotCentralModJ("residue of b^{p^T} is not scalar");
  Elem lambda = res[0][0];
  TwistLift out;
  for (Elem c : fbar) out.twisted_poly.push_back(A->frob(em(c), T));
  auto roots = poly_roots(*A, out.twisted_poly);
  if (std::find(roots.begin(), roots.end(), lambda) == roots.end())
    throw RootNotFound("residue of b^{p^T} is not a root of the twisted polynomial");
  out.root = lambda;
  out.zeta = LaurentElem::constant(A, lambda);
  out.residual = (bt - QElem::scalar(out.zeta, s)).certified();
  return out;
}

// ---- convergence of inner automorphisms

ConvergenceRun converge_inner(const QElem& c1, long d, const Auto& tau, const QRing& R, long terms) {
  const long p = R.F->p();
  if (d <= 0 || d % p == 0) throw NotCoprime("d = " + std::to_string(d) + " is not prime to p");
  ConvergenceRun run;
  run.d = d;
  long r = 1, pr = p % d;
  while (pr != 1 % d) {
    pr = (pr * p) % d;
    ++r;
  }
  run.r = r;
  const long Pr = ipow(p, r);
  run.s = (Pr - 1) / d;
  const Value N = R.N;
  if ((c1 - R.one()).certified() < 1) throw HypothesisFail("c1 is not congruent to 1 mod J");

  long need = 1;
  for (long pj = Pr; pj < N; pj *= Pr) ++need;
  const long count = std::max(need, terms) + 1;
  long sj = run.s;
  for (long j = 1; j <= count; ++j) {
    run.sj.push_back(sj);
    run.bj.push_back(c1.pow(sj, N));
    sj = Pr * sj + run.s;
  }
  run.ok = true;
  for (std::size_t j = 0; j + 1 < run.bj.size(); ++j) {
    Value diff = (run.bj[j + 1] - run.bj[j]).certified();
    long req = 1;
    for (std::size_t i = 0; i <= j && req < N; ++i) req *= Pr;
    run.diffs.push_back(diff);
    run.required.push_back(req);
    if (diff < std::min<Value>(req, N)) {
      run.ok = false;
      throw NoContraction("u(b_" + std::to_string(j + 2) + " - b_" + std::to_string(j + 1) + ") = " + vstr(diff) +
                          " < " + std::to_string(req));
    }
  }
  run.limit = run.bj.back();
  run.c = invert_in_O(run.limit, N);
  run.c_minus_one = (run.c - R.one()).certified();
  run.tau_residual = basis_residual(
      R, [&](const QElem& q) { return tau(q); }, [&](const QElem& q) { return run.c * q * run.limit; });
  run.ok = run.tau_residual >= N && run.c_minus_one >= 1;
  return run;
}

// ---- pipeline

std::string describe_extension(const FiltBasis& K) {
  std::ostringstream os;
  if (K.e == 1 && K.f == 1) return "K = Z";
  os << "K = F_" << K.ext->order() << "((rho)), rho^" << K.e << " = pi, e = " << K.e << ", f = " << K.f;
  return os.str();
}

namespace {

template <class Fn>
auto run_stage(int idx, const std::string& name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.kind(), "stage " + std::to_string(idx) + " (" + name + "): " + strip_kind(e));
  }
}

std::string qstr(const QElem& q) { return q.str(); }

}  // namespace

SfohReport reduce_to_sfoh(const QRing& R, const Auto& sigma, const QElem& t, const SfohOptions& opt) {
  SfohReport rep;

  DatumPtr d = run_stage(0, "hypotheses", [&] {
    return std::make_shared<const SkewDatum>(R, sigma, t, opt.jmax);
  });
  {
    StageRecord st{"hypotheses", "admissible datum", "", "", {}, true};
    st.residuals["sigma(t) - t"] = (d->apply_sigma(t) - t).certified();
    st.unit = d->compat().str();
    rep.stages.push_back(st);
  }

  DatumPtr d1 = run_stage(1, "centre-order", [&] {
    long n = order_on_centre(*d);
    long s = 0;
    while (n > 1) {
      n /= d->p();
      ++s;
    }
    rep.s = s;
    return std::make_shared<const SkewDatum>(d->iterate(s));
  });
  {
    StageRecord st{"centre-order", "reduction to an automorphism trivial on the centre", "K = Z", "", {}, true};
    st.residuals["s"] = rep.s;
    rep.stages.push_back(st);
  }

  // sigma^{p^s} already inner by a unit of O
  const Auto& s1 = d1->sigma();
  bool unit_inner = !s1.has_conjugator();
  if (s1.has_conjugator()) unit_inner = s1.conjugator().certified() >= 0 && s1.conjugator_inv().certified() >= 0;
  if (unit_inner) {
    rep.short_circuit = true;
    rep.ell = 0;
    rep.extension = "K = Z";
    QElem U = s1.conjugator_or_one(R.F, R.s), Ui = s1.conjugator_inv_or_one(R.F, R.s);
    rep.c = U;
    rep.a_original = U;
    rep.witness_residual = basis_residual(
        R, [&](const QElem& q) { return s1(q); }, [&](const QElem& q) { return U * q * Ui; });
    rep.original_residual = rep.witness_residual;
    rep.uc = U.u();
    rep.uc_inv = Ui.u();
    rep.ok = rep.uc == 0 && rep.uc_inv == 0 && rep.witness_residual >= R.N;
    return rep;
  }

  IwasawaCert iw = run_stage(2, "iwasawa", [&] {
    (void)invert_in_O(d1->t(), R.N);
    std::vector<QElem> samples = R.residue_basis();
    return iwasawa_normalize(d1, samples);
  });
  {
    StageRecord st{"iwasawa", "Iwasawa normalization", "K = Z", qstr(iw.unit), {}, iw.ok};
    st.residuals["relation"] = iw.relation_residual;
    st.residuals["delta"] = iw.delta_residual;
    st.residuals["power"] = iw.power_residual;
    st.residuals["t-fixed"] = iw.t_fixed_residual;
    rep.stages.push_back(st);
  }
  const DatumPtr& d0 = iw.datum0;

  CentralScale cs = run_stage(3, "central-scale", [&] {
    QElem a0 = d0->sigma().conjugator_or_one(R.F, R.s);
    return central_scale(a0, d0, opt.central_element);
  });
  rep.extension = describe_extension(cs.ext.K);
  {
    StageRecord st{"central-scale", "central scaling", rep.extension, qstr(cs.c), {}, cs.unit_verified};
    st.residuals["u(c)"] = cs.uc;
    st.residuals["u(c^-1)"] = cs.uc_inv;
    st.residuals["ell"] = cs.ell;
    rep.stages.push_back(st);
  }
  const QRing& QK = cs.ext.QK;

  QElem cprime;
  run_stage(4, "twist-lift", [&] {
    auto res = cs.c.residue();
    FPoly fbar = minimal_polynomial_over(cs.ext.K.iota, res[0][0]);
    TwistLift tl = frobenius_twist_lift(cs.c, fbar, cs.ext.K.iota, 0);
    cprime = cs.c.scale(tl.zeta.inv(QK.N)).with_prec(QK.N);
    StageRecord st{"twist-lift", "Frobenius-twisted lift", rep.extension, qstr(cprime), {}, tl.residual >= 1};
    st.residuals["u(b - zeta)"] = tl.residual;
    rep.stages.push_back(st);
    return 0;
  });

  const long L = cs.ell;
  const long PL = ipow(d->p(), L);
  const Auto tau = cs.ext.datumK->sigma().pow(PL);
  ConvergenceRun run = run_stage(5, "convergence", [&] { return converge_inner(cprime, 1, tau, QK); });
  {
    StageRecord st{"convergence", "convergence of inner automorphisms", rep.extension, qstr(run.c), {}, run.ok};
    st.residuals["tau residual"] = run.tau_residual;
    st.residuals["u(c - 1)"] = run.c_minus_one;
    rep.stages.push_back(st);
  }

  rep.ell = L;
  rep.c = run.c;
  QElem cinv = run.limit;
  rep.uc = rep.c.u();
  rep.uc_inv = cinv.u();
  rep.witness_residual = basis_residual(
      QK, [&](const QElem& q) { return tau(q); }, [&](const QElem& q) { return rep.c * q * cinv; });

  // sigma^{p^s} = conj_{t'} o sigma_0, and conj_{t'} commutes with sigma_0
  ExtendedDatum E1 = build_extended_datum(d1, cs.ext.K, opt.seed);
  QElem tK = cs.ext.embed(d1->t());
  QElem tP = tK.pow(PL, QK.N);
  rep.a_original = (tP * rep.c).with_prec(QK.N);
  QElem ainv = (cinv * invert_in_O(tK, QK.N).pow(PL, QK.N)).with_prec(QK.N);
  const Auto tau1 = E1.datumK->sigma().pow(PL);
  rep.original_residual = basis_residual(
      QK, [&](const QElem& q) { return tau1(q); }, [&](const QElem& q) { return rep.a_original * q * ainv; });

  bool stages_ok = true;
  for (const auto& st : rep.stages) stages_ok = stages_ok && st.ok;
  rep.ok = stages_ok && rep.uc == 0 && rep.uc_inv == 0 && rep.witness_residual >= QK.N &&
           rep.original_residual >= QK.N;
  return rep;
}

}  // namespace skewps
