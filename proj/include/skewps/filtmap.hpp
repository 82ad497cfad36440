#pragma once

#include <memory>
#include <string>
#include <vector>

#include "skewps/qelem.hpp"

namespace skewps {

// Ring automorphism q -> U * Frob^r(q) * U^{-1} of Q, fixing pi.
class Auto {
 public:
  Auto() = default;
  static Auto identity() { return Auto(); }
  static Auto frobenius(long r);
  static Auto inner(const QElem& U, const QElem& Uinv);
  // Computes U^{-1}; cap is used only when the inverse is not exact.
  static Auto inner(const QElem& U, Value cap);

  long frob() const { return r_; }
  bool has_conjugator() const { return U_.valid(); }
  const QElem& conjugator() const { return U_; }
  const QElem& conjugator_inv() const { return Uinv_; }
  // Conjugator as a matrix; the identity when absent.
  QElem conjugator_or_one(const FieldPtr& F, int s) const;
  QElem conjugator_inv_or_one(const FieldPtr& F, int s) const;

  QElem operator()(const QElem& q) const;
  Auto compose(const Auto& inner_map) const;  // this o inner_map
  Auto pow(long n) const;
  Auto with_prec(Value p) const;

 private:
  long r_ = 0;
  QElem U_, Uinv_;
};

// Description tree of a filtered additive map on Q.
class FiltMap {
 public:
  enum class Kind { Identity, Frobenius, Inner, Automorphism, Composite, SigmaMinusId, InnerDerivation };

  static FiltMap identity();
  static FiltMap frobenius(long r);
  static FiltMap inner(const QElem& U, const QElem& Uinv);
  static FiltMap automorphism(const Auto& a);
  // composite({f, g}) = f o g
  static FiltMap composite(std::vector<FiltMap> parts);
  static FiltMap sigma_minus_id(const FiltMap& of);
  // q -> t q - sigma(q) t
  static FiltMap inner_derivation(const QElem& t, const FiltMap& sigma);

  Kind kind() const { return node_->kind; }
  bool is_ring_map() const;
  QElem operator()(const QElem& q) const;
  std::string describe() const;

 private:
  struct Node {
    Kind kind = Kind::Identity;
    long r = 0;
    Auto a;
    QElem t;
    std::vector<FiltMap> parts;
  };
  explicit FiltMap(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct DegreeResult {
  Value degree = kInf;  // kInf: the map vanishes on the basis
  bool exact = true;    // false when some image was only zero at precision
};

// deg_u(f) as the minimum of u(f(b)) over the residue basis of O; exact for pi-equivariant f.
DegreeResult degree_of_map(const FiltMap& f, const QRing& R);

}  // namespace skewps
