#include "skewps/bounded_series.hpp"

#include "skewps/errors.hpp"

namespace skewps {

BoundedSeries::BoundedSeries(DatumPtr d, std::vector<QElem> coeffs, bool poly_tail, Value tail_lb)
    : d_(std::move(d)), c_(std::move(coeffs)), poly_(poly_tail), tail_lb_(poly_tail ? kInf : tail_lb) {
  const long M = d_->jmax();
  if (static_cast<long>(c_.size()) > M + 1) {
    for (long n = M + 1; n < static_cast<long>(c_.size()); ++n)
      if (!c_[n].is_zero()) {
        poly_ = false;
        tail_lb_ = vmin(tail_lb_, c_[n].certified());
      }
    c_.resize(M + 1);
  }
  while (static_cast<long>(c_.size()) < M + 1) c_.push_back(d_->ring().zero());
}

BoundedSeries BoundedSeries::zero(DatumPtr d) { return BoundedSeries(std::move(d), {}, true, kInf); }

BoundedSeries BoundedSeries::one(DatumPtr d) {
  QElem o = d->ring().one();
  return BoundedSeries(std::move(d), {o}, true, kInf);
}

BoundedSeries BoundedSeries::constant(DatumPtr d, const QElem& q) { return BoundedSeries(std::move(d), {q}, true, kInf); }

BoundedSeries BoundedSeries::x_pow(DatumPtr d, long n) {
  std::vector<QElem> c(n + 1, d->ring().zero());
  c[n] = d->ring().one();
  return BoundedSeries(std::move(d), std::move(c), true, kInf);
}

BoundedSeries BoundedSeries::from_poly(const OrePoly& f) {
  if (f.degree() > f.datum()->jmax()) throw Unsupported("polynomial degree exceeds the x-cap");
  return BoundedSeries(f.datum(), f.coeffs(), true, kInf);
}

Value BoundedSeries::lower_bound() const {
  Value v = tail_lb_;
  for (const auto& q : c_) v = vmin(v, q.certified());
  return v;
}

Value BoundedSeries::fQ() const {
  Value v = poly_ ? kInf : vadd(tail_lb_, M() + 1);
  for (long n = 0; n <= M(); ++n) v = vmin(v, vadd(c_[n].certified(), n));
  return v;
}

Value BoundedSeries::residual() const {
  Value v = kInf;
  for (const auto& q : c_) v = vmin(v, q.certified());
  return v;
}

long BoundedSeries::top_degree() const {
  for (long n = M(); n >= 0; --n)
    if (!c_[n].is_zero()) return n;
  return -1;
}

BoundedSeries BoundedSeries::operator+(const BoundedSeries& o) const {
  if (d_ != o.d_) throw DatumMismatch("series over different data");
  std::vector<QElem> c(c_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = c_[i] + o.c_[i];
  return BoundedSeries(d_, std::move(c), poly_ && o.poly_, vmin(tail_lb_, o.tail_lb_));
}

BoundedSeries BoundedSeries::operator-(const BoundedSeries& o) const {
  if (d_ != o.d_) throw DatumMismatch("series over different data");
  std::vector<QElem> c(c_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = c_[i] - o.c_[i];
  return BoundedSeries(d_, std::move(c), poly_ && o.poly_, vmin(tail_lb_, o.tail_lb_));
}

BoundedSeries BoundedSeries::scale_left(const QElem& q) const {
  std::vector<QElem> c = c_;
  for (auto& x : c) x = q * x;
  return BoundedSeries(d_, std::move(c), poly_, vadd(tail_lb_, q.certified()));
}

BoundedSeries BoundedSeries::with_prec(Value p) const {
  std::vector<QElem> c = c_;
  for (auto& x : c) x = x.with_prec(p);
  return BoundedSeries(d_, std::move(c), poly_, tail_lb_);
}

BoundedSeries BoundedSeries::with_tail(bool poly_tail, Value tail_lb) const {
  return BoundedSeries(d_, c_, poly_tail, tail_lb);
}

OrePoly BoundedSeries::to_poly() const {
  if (!poly_) throw Unsupported("series has an unknown tail");
  return OrePoly(d_, c_);
}

std::string BoundedSeries::str() const {
  std::string out;
  for (long n = 0; n <= M(); ++n) {
    if (c_[n].is_zero()) continue;
    std::string term = "(" + c_[n].str() + ")";
    if (n == 1) term += "*x";
    if (n > 1) term += "*x^" + std::to_string(n);
    if (!out.empty()) out += " + ";
    out += term;
  }
  if (out.empty()) out = "0";
  if (!poly_) out += " + O(x^" + std::to_string(M() + 1) + "; u >= " + vstr(tail_lb_) + ")";
  return out;
}

unsigned binom_mod_p(long n, long k, unsigned p) {
  if (k < 0 || k > n) return 0;
  unsigned r = 1;
  while (n || k) {
    long a = n % p, b = k % p;
    if (b > a) return 0;
    // small binomial C(a, b) mod p
    unsigned long num = 1, den = 1;
    for (long i = 0; i < b; ++i) {
      num = num * static_cast<unsigned long>(a - i) % p;
      den = den * static_cast<unsigned long>(i + 1) % p;
    }
    // den^{-1} mod p by Fermat
    unsigned long inv = 1, base = den, e = p - 2;
    while (e) {
      if (e & 1) inv = inv * base % p;
      base = base * base % p;
      e >>= 1;
    }
    r = static_cast<unsigned>(r * (num * inv % p) % p);
    n /= p;
    k /= p;
  }
  return r;
}

namespace {

// delta^j(b_l) and sigma^e of those, computed on demand
class TermCache {
 public:
  TermCache(const SkewDatum& d, const std::vector<QElem>& b) : d_(d), b_(b), D_(b.size()), T_(b.size()) {}

  const QElem& delta_pow(long l, long j) {
    auto& row = D_[l];
    if (row.empty()) row.push_back(b_[l]);
    while (static_cast<long>(row.size()) <= j) row.push_back(d_.delta(row.back()));
    return row[j];
  }

  const QElem& term(long e, long j, long l) {
    auto& byj = T_[l];
    if (static_cast<long>(byj.size()) <= j) byj.resize(j + 1);
    auto& bye = byj[j];
    if (bye.empty()) bye.push_back(delta_pow(l, j));
    while (static_cast<long>(bye.size()) <= e) bye.push_back(d_.apply_sigma(bye.back()));
    return bye[e];
  }

 private:
  const SkewDatum& d_;
  const std::vector<QElem>& b_;
  std::vector<std::vector<QElem>> D_;
  std::vector<std::vector<std::vector<QElem>>> T_;
};

bool exact_zero(const QElem& q) { return q.is_zero() && q.exact(); }

}  // namespace

BoundedSeries series_mul(const BoundedSeries& f, const BoundedSeries& g) {
  if (f.datum() != g.datum()) throw DatumMismatch("series over different data");
  const SkewDatum& d = *f.datum();
  const long M = f.M();
  const unsigned p = d.p();
  const bool fpoly = f.poly_tail();
  if (!fpoly && !d.certified()) throw UnboundedTail("no certified degree data for the discarded tail");
  if (!fpoly && d.delta_deg(d.P()) < 0) throw UnboundedTail("deg(delta^P) < 0");
  TermCache cache(d, g.coeffs());
  const long P = d.P();
  std::vector<QElem> out(M + 1, d.ring().zero());
  for (long k = 0; k <= M; ++k) {
    QElem acc = d.ring().zero();
    Value tail = kInf;
    for (long e = 0; e <= k; ++e) {
      const long l = k - e;
      if (exact_zero(g.coeff(l))) continue;
      for (long i = e; i <= M; ++i) {
        const QElem& a = f.coeff(i);
        if (exact_zero(a)) continue;
        unsigned c = binom_mod_p(i, e, p);
        if (!c) continue;
        const QElem& T = cache.term(e, i - e, l);
        if (exact_zero(T)) continue;
        acc = acc + (c == 1 ? a : a.scale(static_cast<Elem>(c))) * T;
      }
      if (!fpoly) {
        // discarded i > M: u >= tail_lb(f) + deg(sigma^e) + u(delta^j(b_l)) for some j >= M+1-e
        const long J = M + 1 - e;
        Value mn = kInf;
        for (long j = J; j < J + P; ++j) mn = vmin(mn, cache.delta_pow(l, j).certified());
        if (!is_inf(mn)) tail = vmin(tail, vadd(vadd(f.tail_lb(), d.sigma_deg(e)), mn));
      }
    }
    out[k] = is_inf(tail) ? acc : acc.with_prec(tail);
  }
  const long tf = f.top_degree(), tg = g.top_degree();
  bool poly = fpoly && g.poly_tail() && tf + tg <= M;
  Value tail_lb = poly ? kInf : vadd(vadd(f.lower_bound(), g.lower_bound()), d.B());
  return BoundedSeries(f.datum(), std::move(out), poly, tail_lb);
}

BoundedSeries extend_map_to_series(const FiltMap& alpha, const BoundedSeries& f, const std::vector<QElem>& samples) {
  const SkewDatum& d = *f.datum();
  for (const auto& q : samples) {
    if (!(alpha(d.apply_sigma(q)) - d.apply_sigma(alpha(q))).is_zero())
      throw CommutationFail("alpha does not commute with sigma");
    if (!(alpha(d.delta(q)) - d.delta(alpha(q))).is_zero()) throw CommutationFail("alpha does not commute with delta");
  }
  std::vector<QElem> c;
  for (const auto& q : f.coeffs()) c.push_back(alpha(q));
  Value tl = f.tail_lb();
  if (!f.poly_tail()) tl = vadd(tl, degree_of_map(alpha, d.ring()).degree);
  return BoundedSeries(f.datum(), std::move(c), f.poly_tail(), tl);
}

BoundedSeries invert_unit_series(const BoundedSeries& g) {
  const DatumPtr& d = g.datum();
  const QRing& R = d->ring();
  QElem h0 = invert_in_O(g.coeff(0), R.N);
  BoundedSeries h = BoundedSeries::constant(d, h0);
  BoundedSeries one = BoundedSeries::one(d);
  Value prev = -kInf;
  for (int iter = 0; iter < 64; ++iter) {
    BoundedSeries defect = one - series_mul(g, h);
    if (defect.is_zero()) break;
    Value v = defect.fQ();
    // fQ of a series that is zero at its coefficient precisions
    Value sat = kInf;
    for (long n = 0; n <= defect.M(); ++n) sat = vmin(sat, vadd(defect.cprec(n), n));
    if (v <= prev && v < sat) throw NoConvergence("defect filtration did not increase");
    prev = v;
    h = h + series_mul(h, defect);
  }
  if (!h.poly_tail()) {
    bool in_O = h.residual() >= 0;
    Value tl = in_O && d->B() >= 0 ? 0 : vmin(h.tail_lb(), h.residual());
    h = h.with_tail(false, tl);
  }
  return h;
}

VariableChange change_variable(const BoundedSeries& f, const BoundedSeries& new_var, const DatumPtr& new_datum,
                               const std::vector<QElem>& samples) {
  const DatumPtr& od = f.datum();
  if (new_var.datum() != od) throw DatumMismatch("new variable is not over the source datum");
  if (!new_var.poly_tail() || new_var.top_degree() > 1) throw NotTriangular("new variable is not of degree 1");
  const QElem& c0 = new_var.coeff(0);
  const QElem& c1 = new_var.coeff(1);
  if (c1.is_zero()) throw NotTriangular("new variable has no degree-1 term");
  QElem c1inv;
  try {
    c1inv = invert_in_O(c1, od->ring().N);
  } catch (const NotAUnit&) {
    throw NotTriangular("degree-1 coefficient is not a unit of O");
  }
  if (!f.poly_tail()) throw Unsupported("change of variable needs a polynomial source");
  VariableChange out;
  // relation X q = sigma'(q) X + delta'(q), evaluated in the old ring
  out.relation_residual = kInf;
  for (const auto& q : samples) {
    BoundedSeries lhs = series_mul(new_var, BoundedSeries::constant(od, q));
    BoundedSeries rhs = series_mul(BoundedSeries::constant(od, new_datum->apply_sigma(q)), new_var) +
                        BoundedSeries::constant(od, new_datum->delta(q));
    out.relation_residual = vmin(out.relation_residual, (lhs - rhs).residual());
  }
  out.relation_holds = out.relation_residual >= od->ring().N;
  // y = c1^{-1} X - c1^{-1} c0 in the new ring
  BoundedSeries Y(new_datum, {-(c1inv * c0), c1inv}, true, kInf);
  BoundedSeries acc = BoundedSeries::zero(new_datum);
  BoundedSeries pw = BoundedSeries::one(new_datum);
  for (long n = 0; n <= f.top_degree(); ++n) {
    if (n) pw = series_mul(pw, Y);
    if (!f.coeff(n).is_zero()) acc = acc + series_mul(BoundedSeries::constant(new_datum, f.coeff(n)), pw);
  }
  out.series = acc;
  return out;
}

}  // namespace skewps
