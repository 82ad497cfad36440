#pragma once

#include <optional>
#include <vector>

#include "skewps/fq.hpp"

namespace skewps {

// Dense matrices over F_q, row-major.
using FqVec = std::vector<Elem>;
using FqMat = std::vector<FqVec>;

// Row-reduced echelon form in place; returns pivot columns.
std::vector<int> rref(const FiniteField& F, FqMat& A);
int rank(const FiniteField& F, FqMat A);
// Basis of {x : A x = 0}, A given as rows.
FqMat nullspace(const FiniteField& F, const FqMat& A, int ncols);
std::optional<FqMat> mat_inverse(const FiniteField& F, const FqMat& A);
// Some x with A x = b, if one exists.
std::optional<FqVec> solve(const FiniteField& F, const FqMat& A, const FqVec& b, int ncols);
bool is_zero_vec(const FqVec& v);

// A subspace of F_q^n kept as an RREF basis.
class Subspace {
 public:
  Subspace() = default;
  Subspace(const FiniteField* F, int n) : F_(F), n_(n) {}
  Subspace(const FiniteField* F, int n, const FqMat& gens);

  int ambient() const { return n_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const FqMat& basis() const { return basis_; }
  // Adds v; returns true if the dimension grew.
  bool add(const FqVec& v);
  bool contains(const FqVec& v) const;
  bool contains(const Subspace& o) const;
  bool operator==(const Subspace& o) const { return dim() == o.dim() && contains(o); }
  FqVec reduce(FqVec v) const;
  Subspace intersect(const Subspace& o) const;

 private:
  const FiniteField* F_ = nullptr;
  int n_ = 0;
  FqMat basis_;
  std::vector<int> pivots_;
};

}  // namespace skewps
