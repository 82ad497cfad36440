#include "skewps/filtmap.hpp"

#include "skewps/errors.hpp"

namespace skewps {

Auto Auto::frobenius(long r) {
  Auto a;
  a.r_ = r;
  return a;
}

Auto Auto::inner(const QElem& U, const QElem& Uinv) {
  Auto a;
  a.U_ = U;
  a.Uinv_ = Uinv;
  return a;
}

Auto Auto::inner(const QElem& U, Value cap) { return inner(U, U.inv(cap)); }

QElem Auto::conjugator_or_one(const FieldPtr& F, int s) const {
  return U_.valid() ? U_ : QElem::identity(F, s);
}

QElem Auto::conjugator_inv_or_one(const FieldPtr& F, int s) const {
  return Uinv_.valid() ? Uinv_ : QElem::identity(F, s);
}

QElem Auto::operator()(const QElem& q) const {
  QElem x = r_ ? q.frob(r_) : q;
  if (U_.valid()) x = U_ * x * Uinv_;
  return x;
}

Auto Auto::compose(const Auto& o) const {
  // (U, r) o (V, r') = (U Frob^r(V), r + r')
  Auto out;
  out.r_ = r_ + o.r_;
  if (!U_.valid() && !o.U_.valid()) return out;
  if (!o.U_.valid()) {
    out.U_ = U_;
    out.Uinv_ = Uinv_;
  } else {
    QElem V = r_ ? o.U_.frob(r_) : o.U_;
    QElem Vi = r_ ? o.Uinv_.frob(r_) : o.Uinv_;
    out.U_ = U_.valid() ? U_ * V : V;
    out.Uinv_ = U_.valid() ? Vi * Uinv_ : Vi;
  }
  return out;
}

Auto Auto::pow(long n) const {
  if (n < 0) throw Unsupported("negative automorphism powers");
  Auto result, base = *this;
  while (n) {
    if (n & 1) result = result.compose(base);
    n >>= 1;
    if (n) base = base.compose(base);
  }
  return result;
}

Auto Auto::with_prec(Value p) const {
  Auto a = *this;
  if (a.U_.valid()) {
    a.U_ = a.U_.with_prec(p);
    a.Uinv_ = a.Uinv_.with_prec(p);
  }
  return a;
}

FiltMap FiltMap::identity() { return FiltMap(std::make_shared<Node>()); }

FiltMap FiltMap::frobenius(long r) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Frobenius;
  n->r = r;
  n->a = Auto::frobenius(r);
  return FiltMap(n);
}

FiltMap FiltMap::inner(const QElem& U, const QElem& Uinv) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Inner;
  n->a = Auto::inner(U, Uinv);
  return FiltMap(n);
}

FiltMap FiltMap::automorphism(const Auto& a) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Automorphism;
  n->a = a;
  return FiltMap(n);
}

FiltMap FiltMap::composite(std::vector<FiltMap> parts) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Composite;
  n->parts = std::move(parts);
  return FiltMap(n);
}

FiltMap FiltMap::sigma_minus_id(const FiltMap& of) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::SigmaMinusId;
  n->parts = {of};
  return FiltMap(n);
}

FiltMap FiltMap::inner_derivation(const QElem& t, const FiltMap& sigma) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::InnerDerivation;
  n->t = t;
  n->parts = {sigma};
  return FiltMap(n);
}

bool FiltMap::is_ring_map() const {
  switch (node_->kind) {
    case Kind::Identity:
    case Kind::Frobenius:
    case Kind::Inner:
    case Kind::Automorphism:
      return true;
    case Kind::Composite:
      for (const auto& p : node_->parts)
        if (!p.is_ring_map()) return false;
      return true;
    default:
      return false;
  }
}

QElem FiltMap::operator()(const QElem& q) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Identity:
      return q;
    case Kind::Frobenius:
    case Kind::Inner:
    case Kind::Automorphism:
      return n.a(q);
    case Kind::Composite: {
      QElem x = q;
      for (auto it = n.parts.rbegin(); it != n.parts.rend(); ++it) x = (*it)(x);
      return x;
    }
    case Kind::SigmaMinusId:
      return n.parts[0](q) - q;
    case Kind::InnerDerivation:
      return n.t * q - n.parts[0](q) * n.t;
  }
  return q;
}

std::string FiltMap::describe() const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Identity:
      return "id";
    case Kind::Frobenius:
      return "Frob^" + std::to_string(n.r);
    case Kind::Inner:
      return "conj(" + n.a.conjugator().str() + ")";
    case Kind::Automorphism: {
      std::string s = "Frob^" + std::to_string(n.a.frob());
      if (n.a.has_conjugator()) s = "conj(" + n.a.conjugator().str() + ") o " + s;
      return s;
    }
    case Kind::Composite: {
      std::string s;
      for (const auto& p : n.parts) s += (s.empty() ? "" : " o ") + p.describe();
      return "(" + s + ")";
    }
    case Kind::SigmaMinusId:
      return "(" + n.parts[0].describe() + " - id)";
    case Kind::InnerDerivation:
      return "delta[t=" + n.t.str() + ", sigma=" + n.parts[0].describe() + "]";
  }
  return "?";
}

DegreeResult degree_of_map(const FiltMap& f, const QRing& R) {
  DegreeResult res;
  for (const auto& b : R.residue_basis()) {
    QElem fb = f(b);
    QElem fpb = f(b.shift(1));
    if (!(fpb - fb.shift(1)).is_zero()) throw NotPiEquivariant("f(pi q) != pi f(q) on " + b.str());
    if (fb.is_zero() && !fb.exact()) res.exact = false;
    res.degree = vmin(res.degree, fb.certified());
  }
  return res;
}

}  // namespace skewps
