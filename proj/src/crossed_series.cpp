#include "skewps/crossed_series.hpp"

#include "skewps/errors.hpp"

namespace skewps {

namespace {

QElem scalar_q(const QRing& R, Elem c) { return R.one().scale(c); }

Elem fp(const FiniteField& F, long n) { return F.from_int(n); }

}  // namespace

BoundedSeries g_element(const DatumPtr& d) { return BoundedSeries(d, {-d->t(), d->ring().one()}, true, kInf); }

BoundedSeries series_pow(const BoundedSeries& f, long n) {
  BoundedSeries r = BoundedSeries::one(f.datum());
  for (long i = 0; i < n; ++i) r = series_mul(r, f);
  return r;
}

BoundedSeries embed_subring(const BoundedSeries& s, const DatumPtr& d, long P) {
  const long M = d->jmax();
  std::vector<QElem> c(M + 1, d->ring().zero());
  bool poly = s.poly_tail();
  Value tl = s.tail_lb();
  for (long k = 0; k <= s.M(); ++k) {
    if (P * k <= M) {
      c[P * k] = s.coeff(k);
    } else if (!s.coeff(k).is_zero()) {
      poly = false;
      tl = vmin(tl, s.coeff(k).certified());
    }
  }
  return BoundedSeries(d, std::move(c), poly, tl);
}

CrossedDecomp decompose(const BoundedSeries& f, long m) {
  const DatumPtr& d = f.datum();
  const QRing& R = d->ring();
  const long P = ipow(d->p(), m);
  const long M = f.M();
  const long K = M / P;
  CrossedDecomp out;
  out.m = m;
  out.P = P;
  out.S = std::make_shared<SkewDatum>(d->iterate(m, K));
  std::vector<QElem> tp{R.one()};
  for (long r = 1; r < P; ++r) tp.push_back(tp.back() * d->t());
  Value tmin = kInf;
  for (const auto& x : tp) tmin = vmin(tmin, x.certified());
  const unsigned p = d->p();
  for (long j = 0; j < P; ++j) {
    std::vector<QElem> q(K + 1, R.zero());
    for (long k = 0; k <= K; ++k) {
      QElem acc = R.zero();
      Value cap = kInf;
      for (long i = j; i < P; ++i) {
        unsigned c = binom_mod_p(i, j, p);
        if (!c) continue;
        if (P * k + i <= M) {
          acc = acc + f.coeff(P * k + i).scale(static_cast<Elem>(c)) * tp[i - j];
        } else if (!f.poly_tail()) {
          cap = vmin(cap, vadd(f.tail_lb(), tp[i - j].certified()));
        }
      }
      if (!is_inf(cap)) {
        if (cap < f.lower_bound()) throw PrecisionExhausted("top block correction exceeds available precision");
        acc = acc.with_prec(cap);
      }
      q[k] = acc;
    }
    out.components.emplace_back(out.S, std::move(q), f.poly_tail(), vadd(f.tail_lb(), tmin));
  }
  out.g = g_element(d);
  out.gpowers.push_back(BoundedSeries::one(d));
  for (long i = 1; i < P; ++i) out.gpowers.push_back(series_mul(out.gpowers.back(), out.g));
  return out;
}

BoundedSeries recompose(const CrossedDecomp& c, const DatumPtr& d) {
  BoundedSeries acc = BoundedSeries::zero(d);
  for (long j = 0; j < c.P; ++j) acc = acc + series_mul(embed_subring(c.components[j], d, c.P), c.gpowers[j]);
  return acc;
}

GRelations check_g_relations(const DatumPtr& d, const std::vector<QElem>& samples) {
  GRelations r;
  BoundedSeries g = g_element(d), x = BoundedSeries::x_pow(d, 1);
  for (const auto& q : samples) {
    BoundedSeries Q = BoundedSeries::constant(d, q), SQ = BoundedSeries::constant(d, d->apply_sigma(q));
    r.sigma_residual = vmin(r.sigma_residual, (series_mul(g, Q) - series_mul(SQ, g)).residual());
  }
  r.x_residual = (series_mul(g, x) - series_mul(x, g)).residual();
  return r;
}

IwasawaCert iwasawa_normalize(const DatumPtr& d, const std::vector<QElem>& samples) {
  const QRing& R = d->ring();
  const QElem& t = d->t();
  QElem tinv = invert_in_O(t, R.N);
  IwasawaCert c;
  Auto sigma0 = Auto::inner(tinv, t).compose(d->sigma());
  c.datum0 = std::make_shared<SkewDatum>(R, sigma0, -R.one(), d->jmax());
  c.unit = -tinv;
  const SkewDatum& d0 = *c.datum0;
  BoundedSeries y(d, {R.zero(), c.unit}, true, kInf);
  for (const auto& q : samples) {
    BoundedSeries lhs = series_mul(y, BoundedSeries::constant(d, q));
    BoundedSeries rhs =
        series_mul(BoundedSeries::constant(d, d0.apply_sigma(q)), y) + BoundedSeries::constant(d, d0.delta(q));
    c.relation_residual = vmin(c.relation_residual, (lhs - rhs).residual());
    c.delta_residual = vmin(c.delta_residual, (d0.delta(q) - (d0.apply_sigma(q) - q)).certified());
  }
  c.t_fixed_residual = (d0.apply_sigma(t) - t).certified();
  BoundedSeries g = g_element(d);
  BoundedSeries h = g.scale_left(c.unit);
  BoundedSeries hp = BoundedSeries::one(d), gp = BoundedSeries::one(d);
  QElem up = R.one();
  const long top = std::min<long>(d->P() + 1, 4);
  for (long i = 1; i <= top; ++i) {
    hp = series_mul(hp, h);
    gp = series_mul(gp, g);
    up = (up * c.unit).with_prec(R.N);
    c.power_residual = vmin(c.power_residual, (hp - gp.scale_left(up)).residual());
  }
  c.ok = c.relation_residual >= R.N && c.delta_residual >= R.N && c.power_residual >= R.N &&
         c.t_fixed_residual >= R.N;
  return c;
}

BoundedSeries derivative_plain(const BoundedSeries& f) {
  const DatumPtr& d = f.datum();
  const FiniteField& F = *d->ring().F;
  const long M = f.M();
  std::vector<QElem> c(M + 1, d->ring().zero());
  for (long n = 1; n <= M; ++n) c[n - 1] = f.coeff(n).scale(fp(F, n));
  if (!f.poly_tail()) c[M] = QElem::zero(d->ring().F, d->ring().s, f.tail_lb());
  return BoundedSeries(d, std::move(c), f.poly_tail(), f.tail_lb());
}

LocalSeries formal_derivative(const LocalSeries& L) {
  const BoundedSeries& q = L.body;
  const DatumPtr& d = q.datum();
  const FiniteField& F = *d->ring().F;
  const QElem& t = d->t();
  const long M = q.M();
  std::vector<QElem> c(M + 1, d->ring().zero());
  for (long n = 0; n <= M; ++n) {
    QElem v = d->apply_sigma(q.coeff(n)).scale(fp(F, n)) - q.coeff(n).scale(fp(F, L.r));
    if (n < M) {
      v = v - d->apply_sigma(q.coeff(n + 1)).scale(fp(F, n + 1)) * t;
    } else if (!q.poly_tail()) {
      v = v.with_prec(vadd(vadd(q.tail_lb(), d->sigma_deg(1)), t.certified()));
    }
    c[n] = v;
  }
  Value shift = vmin(0, vmin(d->sigma_deg(1), vadd(d->sigma_deg(1), t.certified())));
  LocalSeries out;
  out.r = L.r + 1;
  out.body = BoundedSeries(d, std::move(c), q.poly_tail() && q.top_degree() < M, vadd(q.tail_lb(), shift));
  if (!q.poly_tail()) out.body = out.body.with_tail(false, vadd(q.tail_lb(), shift));
  return out;
}

LocalSeries minimize_local(const LocalSeries& L) {
  if (L.r == 0) return L;
  const DatumPtr& d = L.body.datum();
  BoundedSeries inv;
  try {
    inv = invert_unit_series(g_element(d));
  } catch (const NotAUnit&) {
    return L;
  }
  LocalSeries out;
  out.body = L.body;
  for (long i = 0; i < L.r; ++i) out.body = series_mul(inv, out.body);
  return out;
}

ArtinSchreierTestbed make_artin_schreier_testbed(unsigned p, Value N, long M) {
  ArtinSchreierTestbed tb;
  FieldPtr Fp = FiniteField::make(p, 1);
  tb.as = artin_schreier_split(Fp, 1);
  FieldPtr F = tb.as.splitting;
  QRing R{F, 1, N};
  tb.datum = std::make_shared<SkewDatum>(R, Auto::frobenius(1), -R.one(), M);
  tb.alpha = scalar_q(R, tb.as.roots.front());
  tb.i = 1;
  return tb;
}

InvarianceResult derivative_invariance_check(const BoundedSeries& g, const QElem& alpha, Elem i) {
  const DatumPtr& d = g.datum();
  const QRing& R = d->ring();
  const FiniteField& F = *R.F;
  if (!(d->apply_sigma(alpha) - alpha - scalar_q(R, i)).is_zero()) throw HypothesisFail("sigma(alpha) != alpha + i");
  BoundedSeries A = BoundedSeries::constant(d, alpha);
  BoundedSeries comm = (series_mul(g, A) - series_mul(A, g)).scale_left(scalar_q(R, F.inv(i)));
  BoundedSeries D = derivative_plain(g);
  BoundedSeries ge = g_element(d);
  InvarianceResult r;
  r.multiplied_residual = (comm - series_mul(D, ge)).residual();
  BoundedSeries inv = invert_unit_series(ge);
  r.residual = (series_mul(comm, inv) - D).residual();
  r.holds = r.residual >= R.N && r.multiplied_residual >= R.N;
  return r;
}

std::vector<BoundedSeries> split_by_residue_class(const BoundedSeries& f) {
  const DatumPtr& d = f.datum();
  const long p = d->p();
  std::vector<BoundedSeries> out;
  for (long i = 0; i < p; ++i) {
    std::vector<QElem> c(f.M() + 1, d->ring().zero());
    for (long n = i; n <= f.M(); n += p) c[n - i] = f.coeff(n);
    out.emplace_back(d, std::move(c), f.poly_tail(), f.tail_lb());
  }
  return out;
}

std::vector<BoundedSeries> extract_components_by_derivative(const BoundedSeries& f) {
  const DatumPtr& d = f.datum();
  const FiniteField& F = *d->ring().F;
  const long p = d->p();
  std::vector<BoundedSeries> comps(p);
  BoundedSeries rem = f;
  for (long r = p - 1; r >= 0; --r) {
    BoundedSeries D = rem;
    for (long k = 0; k < r; ++k) D = derivative_plain(D);
    long fact = 1;
    for (long k = 2; k <= r; ++k) fact = fact * k % p;
    comps[r] = D.scale_left(scalar_q(d->ring(), F.inv(F.from_int(fact))));
    // drop the x^r block: f_r(x^p) x^r
    std::vector<QElem> c = rem.coeffs();
    for (long n = 0; n + r <= rem.M(); ++n)
      if (n % p == 0) c[n + r] = c[n + r] - comps[r].coeff(n);
    rem = BoundedSeries(d, std::move(c), rem.poly_tail(), rem.tail_lb());
  }
  return comps;
}

PsiResult extend_ideal_psi(const std::vector<BoundedSeries>& gens, const std::vector<BoundedSeries>& probes,
                           const std::vector<QElem>& samples) {
  PsiResult out;
  if (gens.empty()) return out;
  const DatumPtr& d = gens.front().datum();
  const QRing& R = d->ring();
  const long p = d->p();
  auto sigma_tilde = [&](const BoundedSeries& s) {
    std::vector<QElem> c;
    for (const auto& q : s.coeffs()) c.push_back(d->apply_sigma(q));
    return BoundedSeries(d, std::move(c), s.poly_tail(), s.tail_lb());
  };
  for (const auto& ga : gens) {
    for (long n = 0; n <= ga.M(); ++n)
      if (n % p && !ga.coeff(n).is_zero()) throw HypothesisFail("generator is not in the x^p-subring");
    BoundedSeries sg = sigma_tilde(ga);
    bool found = false;
    for (const auto& gb : gens) {
      if ((sg - gb).is_zero()) {
        found = true;
        break;
      }
      long top = gb.top_degree();
      if (top < 0) continue;
      try {
        QElem c = sg.coeff(top) * invert_in_O(gb.coeff(top), R.N);
        if ((sg - gb.scale_left(c)).is_zero()) {
          found = true;
          break;
        }
      } catch (const NotAUnit&) {
      }
    }
    if (!found) throw NotSigmaInvariant("sigma(generator) is not a generator up to a scalar");
  }
  for (const auto& ga : gens)
    for (long i = 0; i < p; ++i) out.generators.push_back(series_mul(ga, BoundedSeries::x_pow(d, i)));
  BoundedSeries x = BoundedSeries::x_pow(d, 1);
  BoundedSeries T = BoundedSeries::constant(d, d->t());
  for (std::size_t a = 0; a < gens.size(); ++a) {
    out.membership_residual = vmin(out.membership_residual, (gens[a] - out.generators[a * p]).residual());
    const BoundedSeries& s = gens[a];
    // xs = sigma(s) x + ts - sigma(s) t for s = g_a and for left scalar multiples of it
    std::vector<BoundedSeries> elems{s};
    for (const auto& q : samples) elems.push_back(s.scale_left(q));
    for (const auto& e : elems) {
      BoundedSeries se = sigma_tilde(e);
      BoundedSeries rhs = series_mul(se, x) + series_mul(T, e) - series_mul(se, T);
      out.two_sided_residual = vmin(out.two_sided_residual, (series_mul(x, e) - rhs).residual());
    }
    for (const auto& r : probes) {
      auto ce = extract_components_by_derivative(series_mul(s, r));
      auto cr = extract_components_by_derivative(r);
      for (long i = 0; i < p; ++i)
        out.phi_psi_residual = vmin(out.phi_psi_residual, (ce[i] - series_mul(s, cr[i])).residual());
    }
  }
  out.ok = out.membership_residual >= R.N && out.two_sided_residual >= R.N && out.phi_psi_residual >= R.N;
  return out;
}

Value zt_identity_residual(const DatumPtr& d, const std::vector<std::vector<Elem>>& b_polys) {
  const QRing& R = d->ring();
  const long p = d->p();
  auto tpoly = [&](const std::vector<Elem>& c) {
    QElem acc = R.zero(), tp = R.one();
    for (Elem a : c) {
      acc = acc + tp.scale(a);
      tp = tp * d->t();
    }
    return acc;
  };
  BoundedSeries g = g_element(d);
  BoundedSeries a = BoundedSeries::zero(d), rhs = BoundedSeries::zero(d);
  for (std::size_t i = 0; i < b_polys.size(); ++i) {
    QElem b = tpoly(b_polys[i]);
    a = a + series_mul(BoundedSeries::constant(d, b), series_pow(g, static_cast<long>(i)));
    rhs = rhs + series_mul(BoundedSeries::constant(d, b.pow(p, kInf)), series_pow(g, static_cast<long>(i) * p));
  }
  return (series_pow(a, p) - rhs).residual();
}

Value alpha_power_residual(const ArtinSchreierTestbed& tb, long n) {
  const DatumPtr& d = tb.datum;
  const QRing& R = d->ring();
  BoundedSeries G = series_pow(g_element(d), n);
  BoundedSeries A = BoundedSeries::constant(d, tb.alpha);
  BoundedSeries lhs = series_mul(G, A);
  BoundedSeries rhs = series_mul(A, G) + G.scale_left(scalar_q(R, R.F->mul(tb.i, R.F->from_int(n))));
  return (lhs - rhs).residual();
}

Value extended_datum_residual(const DatumPtr& d, const BoundedSeries& r) {
  std::vector<QElem> sc, dc;
  for (const auto& q : r.coeffs()) {
    sc.push_back(d->apply_sigma(q));
    dc.push_back(d->delta(q));
  }
  BoundedSeries sr(d, sc, r.poly_tail(), r.tail_lb()), dr(d, dc, r.poly_tail(), r.tail_lb());
  BoundedSeries x = BoundedSeries::x_pow(d, 1), T = BoundedSeries::constant(d, d->t());
  Value a = (series_mul(x, r) - series_mul(sr, x) - dr).residual();
  Value b = (dr - (series_mul(T, r) - series_mul(sr, T))).residual();
  return vmin(a, b);
}

}  // namespace skewps
