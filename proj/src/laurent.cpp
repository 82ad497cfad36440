#include "skewps/laurent.hpp"

#include <stdexcept>

#include "skewps/errors.hpp"

namespace skewps {

LaurentElem LaurentElem::zero(FieldPtr F, Value prec) {
  LaurentElem z;
  z.F_ = std::move(F);
  z.prec_ = prec;
  z.start_ = 0;
  return z;
}

LaurentElem LaurentElem::constant(FieldPtr F, Elem c, Value prec) { return monomial(std::move(F), c, 0, prec); }

LaurentElem LaurentElem::monomial(FieldPtr F, Elem c, long n, Value prec) {
  LaurentElem z = zero(std::move(F), prec);
  if (c != 0 && (is_inf(prec) || n < prec)) {
    z.start_ = n;
    z.c_.push_back(c);
  }
  return z;
}

LaurentElem LaurentElem::from_coeffs(FieldPtr F, long start, std::vector<Elem> c, Value prec) {
  LaurentElem z = zero(std::move(F), prec);
  z.start_ = start;
  z.c_ = std::move(c);
  z.normalize();
  return z;
}

void LaurentElem::normalize() {
  if (!exact()) {
    long keep = static_cast<long>(prec_) - start_;
    if (keep <= 0) {
      c_.clear();
    } else if (static_cast<long>(c_.size()) > keep) {
      c_.resize(keep);
    }
  }
  std::size_t lead = 0;
  while (lead < c_.size() && c_[lead] == 0) ++lead;
  if (lead == c_.size()) {
    c_.clear();
    start_ = 0;
    return;
  }
  if (lead) {
    c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
    start_ += static_cast<long>(lead);
  }
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Elem LaurentElem::coeff(long n) const {
  if (c_.empty() || n < start_ || n >= start_ + static_cast<long>(c_.size())) return 0;
  return c_[n - start_];
}

LaurentElem LaurentElem::operator+(const LaurentElem& o) const {
  const FiniteField& F = *F_;
  LaurentElem r = zero(F_, vmin(prec_, o.prec_));
  if (c_.empty() && o.c_.empty()) return r;
  long lo, hi;
  if (c_.empty()) {
    lo = o.start_;
    hi = o.start_ + static_cast<long>(o.c_.size());
  } else if (o.c_.empty()) {
    lo = start_;
    hi = start_ + static_cast<long>(c_.size());
  } else {
    lo = std::min(start_, o.start_);
    hi = std::max(start_ + static_cast<long>(c_.size()), o.start_ + static_cast<long>(o.c_.size()));
  }
  if (!is_inf(r.prec_)) hi = std::min<long>(hi, static_cast<long>(r.prec_));
  if (hi <= lo) return r;
  r.start_ = lo;
  r.c_.assign(hi - lo, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    long n = start_ + static_cast<long>(i);
    if (n < hi) r.c_[n - lo] = c_[i];
  }
  for (std::size_t i = 0; i < o.c_.size(); ++i) {
    long n = o.start_ + static_cast<long>(i);
    if (n < hi) r.c_[n - lo] = F.add(r.c_[n - lo], o.c_[i]);
  }
  r.normalize();
  return r;
}

LaurentElem LaurentElem::operator-() const {
  LaurentElem r = *this;
  if (F_->p() != 2)
    for (auto& c : r.c_) c = F_->neg(c);
  return r;
}

LaurentElem LaurentElem::operator-(const LaurentElem& o) const { return *this + (-o); }

LaurentElem LaurentElem::operator*(const LaurentElem& o) const {
  const FiniteField& F = *F_;
  if (is_exact_zero() || o.is_exact_zero()) return zero(F_, kInf);
  Value va = certified(), vb = o.certified();
  Value prec = vmin(vadd(prec_, vb), vadd(o.prec_, va));
  LaurentElem r = zero(F_, prec);
  if (c_.empty() || o.c_.empty()) return r;
  long lo = start_ + o.start_;
  long hi = lo + static_cast<long>(c_.size() + o.c_.size()) - 1;
  if (!is_inf(prec)) hi = std::min<long>(hi, static_cast<long>(prec));
  if (hi <= lo) return r;
  r.start_ = lo;
  r.c_.assign(hi - lo, 0);
  const long na = static_cast<long>(c_.size()), nb = static_cast<long>(o.c_.size());
  for (long i = 0; i < na; ++i) {
    Elem a = c_[i];
    if (!a) continue;
    long jmax = std::min(nb, hi - lo - i);
    for (long j = 0; j < jmax; ++j) {
      Elem b = o.c_[j];
      if (b) r.c_[i + j] = F.add(r.c_[i + j], F.mul(a, b));
    }
  }
  r.normalize();
  return r;
}

LaurentElem LaurentElem::scale(Elem c) const {
  if (c == 0) return zero(F_, prec_);
  LaurentElem r = *this;
  for (auto& x : r.c_) x = F_->mul(x, c);
  return r;
}

LaurentElem LaurentElem::shift(long n) const {
  LaurentElem r = *this;
  r.start_ += n;
  r.prec_ = vadd(prec_, n);
  if (r.c_.empty()) r.start_ = 0;
  return r;
}

LaurentElem LaurentElem::inv(Value cap) const {
  if (c_.empty()) throw NotAUnit("inverse of an element that is zero at precision");
  const FiniteField& F = *F_;
  const long v = start_;
  if (c_.size() == 1 && exact()) return monomial(F_, F.inv(c_[0]), -v, kInf);
  Value rprec = exact() ? cap : prec_ - 2 * v;
  if (is_inf(rprec)) throw PrecisionTooLow("inverse of an exact non-monomial needs a precision cap");
  long L = static_cast<long>(rprec) + v;
  LaurentElem r = zero(F_, rprec);
  if (L <= 0) return r;
  std::vector<Elem> w(L, 0);
  Elem u0inv = F.inv(c_[0]);
  w[0] = u0inv;
  for (long n = 1; n < L; ++n) {
    Elem acc = 0;
    long imax = std::min<long>(n, static_cast<long>(c_.size()) - 1);
    for (long i = 1; i <= imax; ++i)
      if (c_[i] && w[n - i]) acc = F.add(acc, F.mul(c_[i], w[n - i]));
    w[n] = F.neg(F.mul(u0inv, acc));
  }
  r.start_ = -v;
  r.c_ = std::move(w);
  r.normalize();
  return r;
}

LaurentElem LaurentElem::pow(long e, Value cap) const {
  if (e < 0) return inv(cap).pow(-e, cap);
  LaurentElem result = constant(F_, 1, kInf);
  LaurentElem base = *this;
  auto clip = [&](const LaurentElem& x) { return is_inf(cap) ? x : x.with_prec(cap); };
  while (e) {
    if (e & 1) result = clip(result * base);
    e >>= 1;
    if (e) base = clip(base * base);
  }
  return result;
}

LaurentElem LaurentElem::frob(long r) const {
  LaurentElem out = *this;
  for (auto& c : out.c_) c = F_->frob(c, r);
  return out;
}

LaurentElem LaurentElem::with_prec(Value p) const {
  if (p >= prec_) return *this;
  LaurentElem r = *this;
  r.prec_ = p;
  r.normalize();
  return r;
}

LaurentElem LaurentElem::inflate(long e, const FieldPtr& target, const std::function<Elem(Elem)>& map) const {
  LaurentElem r = zero(target, is_inf(prec_) ? kInf : prec_ * e);
  if (c_.empty()) return r;
  r.start_ = start_ * e;
  r.c_.assign((c_.size() - 1) * static_cast<std::size_t>(e) + 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i * static_cast<std::size_t>(e)] = map(c_[i]);
  r.normalize();
  return r;
}

std::string LaurentElem::str() const {
  std::string out;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (!c_[i]) continue;
    long n = start_ + static_cast<long>(i);
    std::string cs = F_->str(c_[i]);
    bool compound = cs.find('+') != std::string::npos || cs.find('*') != std::string::npos;
    std::string term;
    if (n == 0) {
      term = cs;
    } else {
      if (cs != "1") term = (compound ? "(" + cs + ")" : cs) + "*";
      term += "pi";
      if (n != 1) term += "^" + std::to_string(n);
    }
    if (!out.empty()) out += " + ";
    out += term;
  }
  if (!exact()) {
    if (!out.empty()) out += " + ";
    out += "O(pi^" + std::to_string(prec_) + ")";
  } else if (out.empty()) {
    out = "0";
  }
  return out;
}

}  // namespace skewps
