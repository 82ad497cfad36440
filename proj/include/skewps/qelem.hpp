#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "skewps/laurent.hpp"

namespace skewps {

using Rng = std::mt19937_64;
inline std::uint64_t uniform(Rng& g, std::uint64_t n) { return n ? g() % n : 0; }

// Element of Q = M_s(F_q((pi))) with the matrix filtration u = min of entry valuations.
class QElem {
 public:
  QElem() = default;
  static QElem zero(FieldPtr F, int s, Value prec = kInf);
  static QElem identity(FieldPtr F, int s, Value prec = kInf);
  static QElem scalar(const LaurentElem& a, int s);
  static QElem from_rows(const std::vector<std::vector<LaurentElem>>& rows);

  int size() const { return s_; }
  const FieldPtr& field() const { return F_; }
  bool valid() const { return static_cast<bool>(F_); }
  const LaurentElem& operator()(int i, int j) const { return e_[i * s_ + j]; }
  LaurentElem& operator()(int i, int j) { return e_[i * s_ + j]; }
  const std::vector<LaurentElem>& entries() const { return e_; }

  Value u() const;
  Value certified() const;
  Value prec() const;
  bool exact() const { return is_inf(prec()); }
  bool is_zero() const;

  QElem operator+(const QElem& o) const;
  QElem operator-(const QElem& o) const;
  QElem operator-() const;
  QElem operator*(const QElem& o) const;
  QElem scale(const LaurentElem& a) const;
  QElem scale(Elem c) const;
  QElem shift(long n) const;  // multiply by pi^n
  QElem frob(long r) const;
  QElem with_prec(Value p) const;
  QElem pow(long e, Value cap) const;
  // General inverse in M_s(F) by Gauss-Jordan with valuation pivoting.
  QElem inv(Value cap) const;
  // Residue matrix in M_s(k); requires u >= 0.
  std::vector<std::vector<Elem>> residue() const;

  bool equals(const QElem& o) const { return (*this - o).is_zero(); }
  std::string str() const;

 private:
  FieldPtr F_;
  int s_ = 0;
  std::vector<LaurentElem> e_;
};

// Inverse of a unit of O = u^{-1}[0, inf] by residue inversion and geometric-series correction.
QElem invert_in_O(const QElem& q, Value cap = kInf);

// u(qs) = u(q)+u(s) and u(sq) = u(s)+u(q) on every sample.
bool graded_regular(const QElem& q, const std::vector<QElem>& samples);

// Ring context: field, matrix size and working precision.
struct QRing {
  FieldPtr F;
  int s = 1;
  Value N = 16;

  QElem zero() const { return QElem::zero(F, s, kInf); }
  QElem one() const { return QElem::identity(F, s, kInf); }
  QElem pi_pow(long n) const { return one().shift(n); }
  QElem unit_matrix(int i, int j, Elem c = 1, long n = 0) const;
  // e_ij * w^l for l < k: an F_p-basis of M_s(k), lifted exactly.
  std::vector<QElem> residue_basis() const;
  // Entries with valuation >= lo, known mod pi^N.
  QElem random(Rng& g, long lo = 0) const;
  QElem random_unit(Rng& g) const;
  LaurentElem random_scalar(Rng& g, long lo = 0) const;
};

}  // namespace skewps
