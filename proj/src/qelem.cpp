#include "skewps/qelem.hpp"

#include "skewps/errors.hpp"
#include "skewps/fqlinalg.hpp"

namespace skewps {

QElem QElem::zero(FieldPtr F, int s, Value prec) {
  QElem q;
  q.F_ = F;
  q.s_ = s;
  q.e_.assign(static_cast<std::size_t>(s) * s, LaurentElem::zero(F, prec));
  return q;
}

QElem QElem::identity(FieldPtr F, int s, Value prec) {
  QElem q = zero(F, s, prec);
  for (int i = 0; i < s; ++i) q(i, i) = LaurentElem::constant(F, 1, prec);
  return q;
}

QElem QElem::scalar(const LaurentElem& a, int s) {
  QElem q = zero(a.field(), s, a.prec());
  for (int i = 0; i < s; ++i) q(i, i) = a;
  return q;
}

QElem QElem::from_rows(const std::vector<std::vector<LaurentElem>>& rows) {
  const int s = static_cast<int>(rows.size());
  if (!s) throw InstanceError("empty matrix");
  QElem q = zero(rows[0][0].field(), s);
  for (int i = 0; i < s; ++i) {
    if (static_cast<int>(rows[i].size()) != s) throw InstanceError("matrix is not square");
    for (int j = 0; j < s; ++j) q(i, j) = rows[i][j];
  }
  return q;
}

Value QElem::u() const {
  Value v = kInf;
  for (const auto& a : e_) v = vmin(v, a.val());
  return v;
}

Value QElem::certified() const {
  Value v = kInf;
  for (const auto& a : e_) v = vmin(v, a.certified());
  return v;
}

Value QElem::prec() const {
  Value v = kInf;
  for (const auto& a : e_) v = vmin(v, a.prec());
  return v;
}

bool QElem::is_zero() const {
  for (const auto& a : e_)
    if (!a.is_zero()) return false;
  return true;
}

QElem QElem::operator+(const QElem& o) const {
  QElem r = *this;
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
  return r;
}

QElem QElem::operator-(const QElem& o) const {
  QElem r = *this;
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
  return r;
}

QElem QElem::operator-() const {
  QElem r = *this;
  for (auto& a : r.e_) a = -a;
  return r;
}

QElem QElem::operator*(const QElem& o) const {
  if (s_ != o.s_) throw DatumMismatch("matrix sizes differ");
  QElem r = zero(F_, s_, kInf);
  for (int i = 0; i < s_; ++i)
    for (int j = 0; j < s_; ++j) {
      LaurentElem acc = LaurentElem::zero(F_, kInf);
      for (int l = 0; l < s_; ++l) acc = acc + (*this)(i, l) * o(l, j);
      r(i, j) = acc;
    }
  return r;
}

QElem QElem::scale(const LaurentElem& a) const {
  QElem r = *this;
  for (auto& x : r.e_) x = a * x;
  return r;
}

QElem QElem::scale(Elem c) const {
  QElem r = *this;
  for (auto& x : r.e_) x = x.scale(c);
  return r;
}

QElem QElem::shift(long n) const {
  QElem r = *this;
  for (auto& x : r.e_) x = x.shift(n);
  return r;
}

QElem QElem::frob(long k) const {
  QElem r = *this;
  for (auto& x : r.e_) x = x.frob(k);
  return r;
}

QElem QElem::with_prec(Value p) const {
  QElem r = *this;
  for (auto& x : r.e_) x = x.with_prec(p);
  return r;
}

QElem QElem::pow(long e, Value cap) const {
  if (e < 0) return inv(cap).pow(-e, cap);
  QElem result = identity(F_, s_);
  QElem base = *this;
  auto clip = [&](const QElem& x) { return is_inf(cap) ? x : x.with_prec(cap); };
  while (e) {
    if (e & 1) result = clip(result * base);
    e >>= 1;
    if (e) base = clip(base * base);
  }
  return result;
}

QElem QElem::inv(Value cap) const {
  const int s = s_;
  QElem A = *this, B = identity(F_, s);
  for (int c = 0; c < s; ++c) {
    int piv = -1;
    Value best = kInf;
    for (int r = c; r < s; ++r) {
      Value v = A(r, c).val();
      if (!is_inf(v) && (piv < 0 || v < best)) {
        piv = r;
        best = v;
      }
    }
    if (piv < 0) throw NotAUnit("matrix is singular at precision");
    if (piv != c)
      for (int j = 0; j < s; ++j) {
        std::swap(A(piv, j), A(c, j));
        std::swap(B(piv, j), B(c, j));
      }
    LaurentElem pinv = A(c, c).inv(cap);
    for (int j = 0; j < s; ++j) {
      A(c, j) = pinv * A(c, j);
      B(c, j) = pinv * B(c, j);
    }
    for (int r = 0; r < s; ++r) {
      if (r == c || A(r, c).is_zero()) continue;
      LaurentElem f = A(r, c);
      for (int j = 0; j < s; ++j) {
        A(r, j) = A(r, j) - f * A(c, j);
        B(r, j) = B(r, j) - f * B(c, j);
      }
    }
  }
  return is_inf(cap) ? B : B.with_prec(cap);
}

std::vector<std::vector<Elem>> QElem::residue() const {
  std::vector<std::vector<Elem>> R(s_, std::vector<Elem>(s_, 0));
  for (int i = 0; i < s_; ++i)
    for (int j = 0; j < s_; ++j) {
      const auto& a = (*this)(i, j);
      if (a.certified() < 0) throw NotAUnit("entry of negative valuation");
      R[i][j] = a.coeff(0);
    }
  return R;
}

std::string QElem::str() const {
  if (s_ == 1) return e_[0].str();
  std::string out = "[";
  for (int i = 0; i < s_; ++i) {
    out += i ? ", [" : "[";
    for (int j = 0; j < s_; ++j) {
      if (j) out += ", ";
      out += (*this)(i, j).str();
    }
    out += "]";
  }
  return out + "]";
}

QElem invert_in_O(const QElem& q, Value cap) {
  const FieldPtr& F = q.field();
  const int s = q.size();
  Value target = vmin(q.prec(), cap);
  if (q.certified() < 0) throw NotAUnit("element does not lie in O");
  auto R = q.residue();
  auto Rinv = mat_inverse(*F, R);
  if (!Rinv) throw NotAUnit("residue is singular");
  QElem h0 = QElem::zero(F, s);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) h0(i, j) = LaurentElem::constant(F, (*Rinv)[i][j]);
  QElem one = QElem::identity(F, s);
  QElem y = q * h0 - one;
  if (y.is_zero() && y.exact()) return h0;
  if (is_inf(target)) throw PrecisionTooLow("invert_in_O needs a finite precision");
  y = y.with_prec(target);
  // q h0 (1 + y)^{-1} = 1, and (1+y)^{-1} = 1 - y + y^2 - ...
  QElem S = one;
  for (Value n = 0; n < target; ++n) S = (one - y * S).with_prec(target);
  return (h0 * S).with_prec(target);
}

bool graded_regular(const QElem& q, const std::vector<QElem>& samples) {
  Value uq = q.u();
  for (const auto& s : samples) {
    Value us = s.u();
    if ((q * s).u() != vadd(uq, us)) return false;
    if ((s * q).u() != vadd(us, uq)) return false;
  }
  return true;
}

QElem QRing::unit_matrix(int i, int j, Elem c, long n) const {
  QElem q = zero();
  q(i, j) = LaurentElem::monomial(F, c, n);
  return q;
}

std::vector<QElem> QRing::residue_basis() const {
  std::vector<QElem> out;
  Elem w = 1;
  for (unsigned l = 0; l < F->k(); ++l) {
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) out.push_back(unit_matrix(i, j, w));
    w = F->mul(w, F->gen());
  }
  return out;
}

LaurentElem QRing::random_scalar(Rng& g, long lo) const {
  if (lo >= N) return LaurentElem::zero(F, N);
  std::vector<Elem> c(static_cast<std::size_t>(N - lo));
  for (auto& x : c) x = static_cast<Elem>(uniform(g, F->order()));
  return LaurentElem::from_coeffs(F, lo, std::move(c), N);
}

QElem QRing::random(Rng& g, long lo) const {
  QElem q = QElem::zero(F, s, N);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) q(i, j) = random_scalar(g, lo);
  return q;
}

QElem QRing::random_unit(Rng& g) const {
  for (;;) {
    QElem q = random(g, 0);
    if (mat_inverse(*F, q.residue())) return q;
  }
}

}  // namespace skewps
