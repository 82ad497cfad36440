#pragma once

#include <functional>
#include <string>
#include <vector>

#include "skewps/fq.hpp"
#include "skewps/value.hpp"

namespace skewps {

// Truncated Laurent series over F_q in the uniformiser pi, known modulo pi^prec.
// prec == kInf marks an exact (finitely supported) element.
class LaurentElem {
 public:
  LaurentElem() = default;

  static LaurentElem zero(FieldPtr F, Value prec = kInf);
  static LaurentElem constant(FieldPtr F, Elem c, Value prec = kInf);
  static LaurentElem monomial(FieldPtr F, Elem c, long n, Value prec = kInf);
  static LaurentElem from_coeffs(FieldPtr F, long start, std::vector<Elem> c, Value prec);

  const FieldPtr& field() const { return F_; }
  bool valid() const { return static_cast<bool>(F_); }
  Value prec() const { return prec_; }
  bool exact() const { return is_inf(prec_); }
  Value val() const { return c_.empty() ? kInf : start_; }
  // lower bound for the true valuation: the valuation, or the precision when zero at precision
  Value certified() const { return c_.empty() ? prec_ : start_; }
  bool is_zero() const { return c_.empty(); }
  bool is_exact_zero() const { return c_.empty() && exact(); }
  long start() const { return start_; }
  const std::vector<Elem>& coeffs() const { return c_; }
  Elem coeff(long n) const;

  LaurentElem operator+(const LaurentElem& o) const;
  LaurentElem operator-(const LaurentElem& o) const;
  LaurentElem operator-() const;
  LaurentElem operator*(const LaurentElem& o) const;
  LaurentElem scale(Elem c) const;
  LaurentElem shift(long n) const;
  LaurentElem inv(Value cap) const;
  LaurentElem pow(long e, Value cap) const;
  LaurentElem frob(long r) const;
  LaurentElem with_prec(Value p) const;
  // exponent substitution pi -> pi^e followed by a coefficient map, used by field extensions
  LaurentElem inflate(long e, const FieldPtr& target, const std::function<Elem(Elem)>& map) const;

  bool equals(const LaurentElem& o) const { return (*this - o).is_zero(); }
  std::string str() const;

 private:
  void normalize();

  FieldPtr F_;
  long start_ = 0;
  std::vector<Elem> c_;
  Value prec_ = kInf;
};

}  // namespace skewps
