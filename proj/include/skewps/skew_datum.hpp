#pragma once

#include <string>
#include <vector>

#include "skewps/filtmap.hpp"

namespace skewps {

enum class Compat { Compatible, QuasiCompatible, Uncertified };

struct CompatResult {
  Compat kind = Compat::Uncertified;
  long m = 0;
  std::string str() const;
};

// Commuting skew derivation (sigma, delta) on Q with delta(q) = t q - sigma(q) t and sigma(t) = t.
class SkewDatum {
 public:
  static constexpr long kMaxM = 8;

  SkewDatum() = default;
  // Throws HypothesisFail if sigma(t) != t at precision.
  SkewDatum(QRing R, Auto sigma, QElem t, long jmax = 32);

  const QRing& ring() const { return R_; }
  const Auto& sigma() const { return sigma_; }
  const QElem& t() const { return t_; }
  unsigned p() const { return R_.F->p(); }
  long jmax() const { return jmax_; }

  QElem apply_sigma(const QElem& q) const { return sigma_(q); }
  QElem apply_sigma_pow(const QElem& q, long e) const;
  QElem delta(const QElem& q) const { return t_ * q - sigma_(q) * t_; }
  QElem delta_pow(const QElem& q, long j) const;
  FiltMap sigma_map() const { return FiltMap::automorphism(sigma_); }
  FiltMap delta_map() const { return FiltMap::inner_derivation(t_, sigma_map()); }

  const CompatResult& compat() const { return compat_; }
  long m() const { return compat_.kind == Compat::QuasiCompatible ? compat_.m : 0; }
  long P() const;  // p^m
  bool certified() const { return compat_.kind != Compat::Uncertified; }
  // certified lower bounds for deg(delta^j) and deg(sigma^e)
  Value delta_deg(long j) const;
  Value sigma_deg(long e) const;
  // lower bound for every deg(sigma^e delta^j)
  Value B() const { return B_; }

  // (sigma^{p^n}, delta^{p^n}) with inner element t^{p^n}
  SkewDatum iterate(long n, long jmax = -1) const;

 private:
  void build_tables();

  QRing R_;
  Auto sigma_;
  QElem t_;
  long jmax_ = 32;
  CompatResult compat_;
  std::vector<Value> delta_deg_, sigma_deg_;
  Value B_ = kInf;
};

CompatResult certify_compatibility(const QRing& R, const Auto& sigma, const QElem& t);

// Order of sigma restricted to Z = k((pi)); must be a power of p.
long order_on_centre(const SkewDatum& d);

// If sigma|_Z = id and sigma^{p^k} = conj_a on samples, reports whether sigma(a) = a.
bool check_sigma_fixes_conjugator(const SkewDatum& d, const QElem& a, long k, const std::vector<QElem>& samples);

long ipow(long b, long e);

}  // namespace skewps
