#pragma once

#include <string>
#include <vector>

#include "skewps/ore_poly.hpp"

namespace skewps {

// Truncation of an element of Q^+[[x; sigma, delta]]: coefficients of x^0..x^M, each known to its
// own precision, plus a lower bound for the u-values of the discarded coefficients.
class BoundedSeries {
 public:
  BoundedSeries() = default;
  BoundedSeries(DatumPtr d, std::vector<QElem> coeffs, bool poly_tail, Value tail_lb);

  static BoundedSeries zero(DatumPtr d);
  static BoundedSeries one(DatumPtr d);
  static BoundedSeries constant(DatumPtr d, const QElem& q);
  static BoundedSeries x_pow(DatumPtr d, long n);
  static BoundedSeries from_poly(const OrePoly& f);

  const DatumPtr& datum() const { return d_; }
  long M() const { return static_cast<long>(c_.size()) - 1; }
  const QElem& coeff(long n) const { return c_[n]; }
  const std::vector<QElem>& coeffs() const { return c_; }
  bool poly_tail() const { return poly_; }
  Value tail_lb() const { return tail_lb_; }
  // lower bound for every coefficient value, tail included
  Value lower_bound() const;
  Value cprec(long n) const { return c_[n].prec(); }
  // min_n u(q_n) + n over the window, with the tail bound beyond it
  Value fQ() const;
  // min certified coefficient value in the window (residual of a difference)
  Value residual() const;
  long top_degree() const;  // highest index with a nonzero coefficient, -1 if none
  bool is_zero() const { return top_degree() < 0; }

  BoundedSeries operator+(const BoundedSeries& o) const;
  BoundedSeries operator-(const BoundedSeries& o) const;
  BoundedSeries scale_left(const QElem& q) const;
  BoundedSeries with_prec(Value p) const;
  BoundedSeries with_tail(bool poly_tail, Value tail_lb) const;
  OrePoly to_poly() const;
  std::string str() const;

 private:
  DatumPtr d_;
  std::vector<QElem> c_;
  bool poly_ = true;
  Value tail_lb_ = kInf;
};

// Binomial coefficient mod p by Lucas.
unsigned binom_mod_p(long n, long k, unsigned p);

BoundedSeries series_mul(const BoundedSeries& f, const BoundedSeries& g);

// Coefficientwise extension of alpha; checks alpha sigma = sigma alpha and alpha delta = delta alpha on samples.
BoundedSeries extend_map_to_series(const FiltMap& alpha, const BoundedSeries& f, const std::vector<QElem>& samples);

BoundedSeries invert_unit_series(const BoundedSeries& g);

struct VariableChange {
  BoundedSeries series;      // f rewritten in the new variable
  Value relation_residual;   // of X q - sigma'(q) X - delta'(q) on samples, in the old ring
  bool relation_holds = false;
};

// new_var = c0 + c1 y with c1 a unit of O; substitutes y = c1^{-1} X - c1^{-1} c0.
VariableChange change_variable(const BoundedSeries& f, const BoundedSeries& new_var, const DatumPtr& new_datum,
                               const std::vector<QElem>& samples);

}  // namespace skewps
