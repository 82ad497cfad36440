#include "skewps/ore_poly.hpp"

#include "skewps/errors.hpp"

namespace skewps {

OrePoly::OrePoly(DatumPtr d, std::vector<QElem> coeffs) : d_(std::move(d)), c_(std::move(coeffs)) { normalize(); }

void OrePoly::normalize() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  if (d_ && static_cast<long>(c_.size()) > 4 * d_->jmax() + 1)
    throw Unsupported("Ore polynomial degree exceeds the cap 4M");
}

OrePoly OrePoly::x_pow(DatumPtr d, long n) {
  std::vector<QElem> c(n + 1, d->ring().zero());
  c[n] = d->ring().one();
  return OrePoly(std::move(d), std::move(c));
}

QElem OrePoly::coeff(long n) const {
  if (n < 0 || n >= static_cast<long>(c_.size())) return d_->ring().zero();
  return c_[n];
}

OrePoly OrePoly::operator+(const OrePoly& o) const {
  if (d_ != o.d_) throw DatumMismatch("polynomials over different data");
  std::vector<QElem> c(std::max(c_.size(), o.c_.size()), d_->ring().zero());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeff(static_cast<long>(i)) + o.coeff(static_cast<long>(i));
  return OrePoly(d_, std::move(c));
}

OrePoly OrePoly::operator-(const OrePoly& o) const {
  if (d_ != o.d_) throw DatumMismatch("polynomials over different data");
  std::vector<QElem> c(std::max(c_.size(), o.c_.size()), d_->ring().zero());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeff(static_cast<long>(i)) - o.coeff(static_cast<long>(i));
  return OrePoly(d_, std::move(c));
}

OrePoly OrePoly::scale_left(const QElem& q) const {
  std::vector<QElem> c = c_;
  for (auto& x : c) x = q * x;
  return OrePoly(d_, std::move(c));
}

OrePoly OrePoly::with_prec(Value p) const {
  std::vector<QElem> c = c_;
  for (auto& x : c) x = x.with_prec(p);
  return OrePoly(d_, std::move(c));
}

std::vector<QElem> push_x(const SkewDatum& d, const std::vector<QElem>& h) {
  if (h.empty()) return {};
  std::vector<QElem> out(h.size() + 1, d.ring().zero());
  for (std::size_t l = 0; l < h.size(); ++l) {
    out[l + 1] = out[l + 1] + d.apply_sigma(h[l]);
    out[l] = out[l] + d.delta(h[l]);
  }
  return out;
}

OrePoly ore_mul(const OrePoly& f, const OrePoly& g) {
  if (f.datum() != g.datum()) throw DatumMismatch("polynomials over different data");
  const auto& d = f.datum();
  if (f.is_zero() || g.is_zero()) return OrePoly::zero(d);
  std::vector<QElem> acc(f.coeffs().size() + g.coeffs().size(), d->ring().zero());
  std::vector<QElem> h = g.coeffs();  // x^i g
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    if (i) h = push_x(*d, h);
    const QElem& fi = f.coeffs()[i];
    if (fi.is_zero() && fi.exact()) continue;
    for (std::size_t l = 0; l < h.size(); ++l) acc[l] = acc[l] + fi * h[l];
  }
  return OrePoly(d, std::move(acc));
}

OrePoly OrePoly::operator*(const OrePoly& o) const { return ore_mul(*this, o); }

OrePoly OrePoly::from_right_coefficients(DatumPtr d, const std::vector<QElem>& rc) {
  OrePoly acc = zero(d);
  for (std::size_t i = 0; i < rc.size(); ++i) acc = acc + ore_mul(x_pow(d, static_cast<long>(i)), constant(d, rc[i]));
  return acc;
}

std::string OrePoly::str() const {
  if (c_.empty()) return "0";
  std::string out;
  for (long n = degree(); n >= 0; --n) {
    if (c_[n].is_zero()) continue;
    std::string term = "(" + c_[n].str() + ")";
    if (n == 1) term += "*x";
    if (n > 1) term += "*x^" + std::to_string(n);
    if (!out.empty()) out += " + ";
    out += term;
  }
  return out;
}

FrobeniusRelation frobenius_power_relation(const DatumPtr& d, const QElem& s, long n) {
  const long P = ipow(d->p(), n);
  FrobeniusRelation r;
  r.lhs = ore_mul(OrePoly::x_pow(d, P), OrePoly::constant(d, s));
  std::vector<QElem> rc(P + 1, d->ring().zero());
  QElem sP = s, dP = s;
  for (long i = 0; i < P; ++i) {
    sP = d->apply_sigma(sP);
    dP = d->delta(dP);
  }
  rc[P] = sP;
  rc[0] = dP;
  r.rhs = OrePoly(d, std::move(rc));
  r.only_two_positions = true;
  for (long i = 1; i < P; ++i)
    if (!r.lhs.coeff(i).is_zero()) r.only_two_positions = false;
  r.equal = r.lhs.equals(r.rhs);
  return r;
}

}  // namespace skewps
