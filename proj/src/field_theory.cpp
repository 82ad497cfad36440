#include "skewps/field_theory.hpp"

#include <numeric>

#include "skewps/errors.hpp"

namespace skewps {

std::vector<Elem> frobenius_orbit(const FiniteField& F, Elem x, unsigned base_degree) {
  if (base_degree == 0 || F.k() % base_degree != 0) throw BadDegree("base degree must divide the field degree");
  std::vector<Elem> orbit{x};
  for (Elem y = F.frob(x, base_degree); y != x; y = F.frob(y, base_degree)) orbit.push_back(y);
  return orbit;
}

Subfield fixed_field_of_frobenius(const FieldPtr& F, long r) {
  const long k = F->k();
  long rr = ((r % k) + k) % k;
  unsigned d = static_cast<unsigned>(std::gcd(rr, k));
  if (d == 0) d = static_cast<unsigned>(k);
  Subfield out;
  out.field = d == F->k() ? F : FiniteField::make(F->p(), d);
  out.embedding = FieldEmbedding(out.field, F);
  out.order_of_map = static_cast<unsigned>(k / d);
  return out;
}

Subfield fixed_field(const FieldPtr& F, const std::function<Elem(Elem)>& map) {
  const Elem w = F->gen();
  long r = -1;
  for (long c = 0; c < static_cast<long>(F->k()); ++c)
    if (F->frob(w, c) == map(w)) {
      r = c;
      break;
    }
  if (r < 0) throw NotAnAutomorphism("map is not a power of Frobenius");
  // additivity and multiplicativity on a deterministic sample
  const Elem q = static_cast<Elem>(F->order());
  const Elem step = q > 64 ? q / 61 + 1 : 1;
  for (Elem a = 0; a < q; a += step)
    for (Elem b = 1; b < q; b += step) {
      if (map(F->mul(a, b)) != F->mul(map(a), map(b)) || map(F->add(a, b)) != F->add(map(a), map(b)))
        throw NotAnAutomorphism("map is not a ring homomorphism");
      if (map(a) != F->frob(a, r)) throw NotAnAutomorphism("map is not a power of Frobenius");
    }
  return fixed_field_of_frobenius(F, r);
}

ArtinSchreier artin_schreier_split(const FieldPtr& base, Elem a) {
  ArtinSchreier out;
  out.base = base;
  out.a = a;
  const unsigned p = base->p();
  auto poly = [&](const FiniteField& L, Elem aa) {
    FPoly f(p + 1, 0);
    f[p] = 1;
    f[1] = L.neg(1);
    f[0] = L.neg(aa);
    return f;
  };
  auto roots = poly_roots(*base, poly(*base, a));
  if (!roots.empty()) {
    out.splitting = base;
    out.embedding = FieldEmbedding::identity(base);
    out.roots = roots;
    out.splits_in_base = true;
    return out;
  }
  out.splitting = FiniteField::make(p, base->k() * p);
  out.embedding = FieldEmbedding(base, out.splitting);
  out.roots = poly_roots(*out.splitting, poly(*out.splitting, out.embedding(a)));
  return out;
}

LaurentElem FiltBasis::embed(const LaurentElem& z) const {
  const FieldEmbedding& em = iota;
  return z.inflate(e, ext, [&em](Elem c) { return em(c); });
}

QElem FiltBasis::embed(const QElem& q) const {
  QElem out = QElem::zero(ext, q.size());
  for (int i = 0; i < q.size(); ++i)
    for (int j = 0; j < q.size(); ++j) out(i, j) = embed(q(i, j));
  return out;
}

LaurentElem FiltBasis::basis_element(std::size_t idx) const {
  auto [i, j] = elements[idx];
  return LaurentElem::monomial(ext, ext->pow(gamma, i), j);
}

LaurentElem FiltBasis::combine(const std::vector<LaurentElem>& z) const {
  LaurentElem acc = LaurentElem::zero(ext);
  for (std::size_t idx = 0; idx < elements.size(); ++idx) acc = acc + embed(z[idx]) * basis_element(idx);
  return acc;
}

Value FiltBasis::formula(const std::vector<LaurentElem>& z) const {
  Value v = kInf;
  for (std::size_t idx = 0; idx < elements.size(); ++idx) {
    Value zv = z[idx].val();
    if (is_inf(zv)) continue;
    v = vmin(v, e * zv + values[idx]);
  }
  return v;
}

FiltBasis FiltBasis::trivial(const FieldPtr& k) {
  FiltBasis b;
  b.base = b.ext = k;
  b.iota = FieldEmbedding::identity(k);
  b.elements = {{0, 0}};
  b.values = {0};
  return b;
}

FieldPtr extension_with_root(const FieldPtr& k, Elem a, long c) {
  for (unsigned d = 1; d <= 12; ++d) {
    FieldPtr L = d == 1 ? k : FiniteField::make(k->p(), k->k() * d);
    FieldEmbedding em(k, L);
    Elem aa = em(a);
    // x^c = aa has a solution iff aa^{(q-1)/gcd(c, q-1)} = 1
    std::uint64_t q1 = L->order() - 1;
    std::uint64_t g = std::gcd(static_cast<std::uint64_t>(c), q1);
    if (aa == 0 || L->pow(aa, static_cast<std::int64_t>(q1 / g)) == 1) return L;
  }
  throw RootNotFound("no residue extension of degree <= 12 contains the root");
}

LaurentElem unit_root(const LaurentElem& u, long c, Elem r0, Value cap) {
  const FieldPtr& F = u.field();
  Value target = vmin(u.prec(), cap);
  if (c == 1) return u.with_prec(target);
  // Hensel, coefficient by coefficient: y = r0 + y_1 rho + ...
  Value L = target;
  std::vector<Elem> y(static_cast<std::size_t>(L), 0);
  y[0] = r0;
  Elem denom = F->inv(F->mul(F->from_int(c), F->pow(r0, c - 1)));
  for (Value n = 1; n < L; ++n) {
    LaurentElem cur = LaurentElem::from_coeffs(F, 0, y, n + 1);
    Elem have = cur.pow(c, n + 1).coeff(n);
    Elem want = u.coeff(n);
    y[n] = F->mul(F->sub(want, have), denom);
  }
  return LaurentElem::from_coeffs(F, 0, std::move(y), target);
}

Adjunction adjoin_root_of_unit_power(const LaurentElem& z, long C, Value cap) {
  if (C <= 0) throw BadDegree("C must be positive");
  Value n = z.val();
  if (is_inf(n) || n <= 0) throw BadDegree("v(z) must be positive");
  const FieldPtr& k = z.field();
  const unsigned p = k->p();
  long a = 0, cprime = C;
  while (cprime % p == 0) {
    cprime /= p;
    ++a;
  }
  long pa = 1;
  for (long i = 0; i < a; ++i) pa *= p;
  long g = std::gcd(static_cast<long>(n), C);
  long e = C / g;
  LaurentElem w = z.shift(-n);  // unit part, as a series in pi
  // exponents e*i of w(rho^e) must be divisible by p^a for the p-power root
  bool divisible = true;
  for (std::size_t i = 0; i < w.coeffs().size(); ++i)
    if (w.coeffs()[i] && (e * static_cast<long>(i)) % pa != 0) divisible = false;
  if (!divisible) e = std::lcm(e, pa);
  Elem w0 = w.coeff(0);
  Elem w0root_pa = k->frob(w0, -a);
  FieldPtr kp = extension_with_root(k, w0root_pa, cprime);
  FiltBasis B;
  B.base = k;
  B.ext = kp;
  B.iota = same_field(k, kp) ? FieldEmbedding::identity(k) : FieldEmbedding(k, kp);
  B.e = e;
  B.f = kp->k() / k->k();
  B.gamma = kp->gen();
  for (long i = 0; i < B.f; ++i)
    for (long j = 0; j < e; ++j) {
      B.elements.push_back({i, j});
      B.values.push_back(j);
    }
  // w(rho^e), then its p^a-th root by inverse Frobenius on coefficients
  LaurentElem we = B.embed(w);
  Value wprec = is_inf(we.prec()) ? cap * pa : we.prec();
  std::vector<Elem> rc;
  const auto& wc = we.coeffs();
  for (std::size_t i = 0; i < wc.size(); i += static_cast<std::size_t>(pa)) rc.push_back(kp->frob(wc[i], -a));
  Value rprec = is_inf(we.prec()) ? kInf : wprec / pa;
  LaurentElem root_pa = LaurentElem::from_coeffs(kp, 0, rc, rprec);
  Elem target0 = root_pa.coeff(0);
  Elem r0 = 0;
  for (Elem x = 1; x < kp->order(); ++x)
    if (kp->pow(x, cprime) == target0) {
      r0 = x;
      break;
    }
  if (!r0) throw RootNotFound("no residue root");
  LaurentElem unit = unit_root(root_pa, cprime, r0, cap);
  Adjunction out;
  out.basis = B;
  out.C = C;
  out.zeta0 = unit.shift(n * e / C);
  return out;
}

}  // namespace skewps
