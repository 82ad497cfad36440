#pragma once

#include <memory>
#include <string>
#include <vector>

#include "skewps/skew_datum.hpp"

namespace skewps {

using DatumPtr = std::shared_ptr<const SkewDatum>;

// Element of Q[x; sigma, delta] in left normal form sum q_n x^n.
class OrePoly {
 public:
  OrePoly() = default;
  OrePoly(DatumPtr d, std::vector<QElem> coeffs);
  static OrePoly zero(DatumPtr d) { return OrePoly(std::move(d), {}); }
  static OrePoly constant(DatumPtr d, const QElem& q) { return OrePoly(std::move(d), {q}); }
  static OrePoly x_pow(DatumPtr d, long n);
  // sum x^n r_n, converted to left normal form
  static OrePoly from_right_coefficients(DatumPtr d, const std::vector<QElem>& rc);

  const DatumPtr& datum() const { return d_; }
  const std::vector<QElem>& coeffs() const { return c_; }
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  QElem coeff(long n) const;
  bool is_zero() const { return c_.empty(); }

  OrePoly operator+(const OrePoly& o) const;
  OrePoly operator-(const OrePoly& o) const;
  OrePoly operator*(const OrePoly& o) const;
  OrePoly scale_left(const QElem& q) const;
  OrePoly with_prec(Value p) const;
  bool equals(const OrePoly& o) const { return (*this - o).is_zero(); }
  std::string str() const;

 private:
  void normalize();
  DatumPtr d_;
  std::vector<QElem> c_;
};

OrePoly ore_mul(const OrePoly& f, const OrePoly& g);

// x * h for h in left normal form
std::vector<QElem> push_x(const SkewDatum& d, const std::vector<QElem>& h);

struct FrobeniusRelation {
  OrePoly lhs, rhs;
  bool only_two_positions = false;  // lhs supported on degrees 0 and p^n
  bool equal = false;
};

FrobeniusRelation frobenius_power_relation(const DatumPtr& d, const QElem& s, long n);

}  // namespace skewps
