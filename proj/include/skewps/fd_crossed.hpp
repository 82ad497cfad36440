#pragma once

#include <optional>
#include <string>
#include <vector>

#include "skewps/fqlinalg.hpp"
#include "skewps/qelem.hpp"

namespace skewps {

// Finite-dimensional algebra over a finite field F, given by structure constants.
// table[i][j] holds the coordinates of e_i e_j; sigma[j] holds sigma(e_j).
struct FdAlgebra {
  FieldPtr F;
  int n = 0;
  std::vector<std::vector<FqVec>> table;
  FqVec unit;
  FqMat sigma;

  FqVec zero() const { return FqVec(n, 0); }
  FqVec basis(int i) const;
  FqVec mul(const FqVec& x, const FqVec& y) const;
  FqVec add(const FqVec& x, const FqVec& y) const;
  FqVec sub(const FqVec& x, const FqVec& y) const;
  FqVec scale(Elem c, const FqVec& x) const;
  FqVec apply_sigma(const FqVec& x) const;
  FqVec pow(const FqVec& x, long e) const;
  std::uint64_t size() const;  // |A|, saturating
  // Associativity on basis triples, unit, sigma multiplicative and invertible. Throws HypothesisFail.
  void validate() const;

  // F_{p^k} over F_p with sigma = Frob^r.
  static FdAlgebra field(unsigned p, unsigned k, long r = 0);
  // M_s(F_q) over F_q; sigma = conjugation by U when given.
  static FdAlgebra matrix(unsigned s, FieldPtr F, const FqMat& U = {});
};

// Element x of A as a linear map on coordinates.
FqMat left_mult_matrix(const FdAlgebra& A, const FqVec& x);

// R = sum_{i < p^m} A g^i with g a = sigma(a) g and g^{p^m} = gpow.
class FdCrossed {
 public:
  FdCrossed() = default;
  // Throws HypothesisFail unless gpow is a sigma-fixed unit with sigma^{p^m} = conj(gpow).
  FdCrossed(FdAlgebra A, long m, FqVec gpow);

  const FdAlgebra& base() const { return A_; }
  long m() const { return m_; }
  long order() const { return N_; }
  unsigned p() const { return A_.F->p(); }
  const FqVec& gpow() const { return gpow_; }
  int dim() const { return flat_.n; }
  // R as an algebra of dimension p^m dim(A); its sigma is conjugation by g.
  const FdAlgebra& algebra() const { return flat_; }

  FqVec mul(const FqVec& x, const FqVec& y) const { return flat_.mul(x, y); }
  FqVec pow(const FqVec& x, long e) const { return flat_.pow(x, e); }
  FqVec one() const { return flat_.unit; }
  FqVec g_pow(long i) const;
  // a g^i
  FqVec embed(const FqVec& a, long i = 0) const;
  FqVec coeff(const FqVec& x, long i) const;
  std::vector<long> support(const FqVec& x) const;
  FqVec from_coeffs(const std::vector<FqVec>& c) const;
  std::string str(const FqVec& x) const;

  // The g^p-subalgebra A * <g^p> and the inclusion of its coordinates.
  FdCrossed subring_p() const;
  FqVec embed_subring(const FqVec& s) const;

  static FdCrossed group_algebra(unsigned p, long m);
  // F_{p^k} * Z/p^m with sigma = Frob^r and g^{p^m} = gpow (an element of F_{p^k}).
  static FdCrossed twisted(unsigned p, unsigned k, long r, long m, Elem gpow);

 private:
  FdAlgebra A_;
  long m_ = 0, N_ = 1;
  FqVec gpow_;
  std::vector<FqMat> sigma_pows_;
  FdAlgebra flat_;
};

struct FdIdeal {
  Subspace space;
  int dim() const { return space.dim(); }
  bool is_zero() const { return space.dim() == 0; }
  bool contains(const FqVec& v) const { return space.contains(v); }
  bool operator==(const FdIdeal& o) const { return space == o.space; }
};

FdIdeal ideal_closure(const FdAlgebra& R, const FqMat& gens);
inline FdIdeal ideal_closure(const std::vector<FqVec>& gens, const FdCrossed& R) {
  return ideal_closure(R.algebra(), gens);
}
bool is_two_sided(const FdAlgebra& R, const Subspace& S);
FdIdeal ideal_sum(const FdIdeal& a, const FdIdeal& b);
FdIdeal ideal_product(const FdAlgebra& R, const FdIdeal& a, const FdIdeal& b);
bool is_nilpotent(const FdAlgebra& R, const FdIdeal& I);
// All two-sided ideals, sorted by dimension. Throws TooLarge when |R| > 2^12.
std::vector<FdIdeal> enumerate_ideals(const FdAlgebra& R);

// BFS over support sets by size, lexicographic within a size. Throws ZeroIdeal.
FqVec minimal_support_element(const FdIdeal& I, const FdCrossed& R);

// Nonzero element of I fixed by sigma and central in A.
std::optional<FqVec> p1_witness(const FdAlgebra& A, const Subspace& I);
// Exhaustive over sigma-invariant ideals generated by single elements.
bool satisfies_p1(const FdAlgebra& A);

struct CentralMinimal {
  bool ok = false;
  FqVec a;
  std::vector<std::string> trace;
  std::string failed_step;
};
CentralMinimal central_minimal_with_p_nilpotence(const FdIdeal& I, const FdCrossed& R);

// Jacobson radical of a finite-dimensional algebra by the generalized trace method.
FdIdeal radical(const FdAlgebra& R);
// Sum of all nilpotent principal ideals; exhaustive.
FdIdeal radical_bruteforce(const FdAlgebra& R);
FdIdeal nilradical_fd(const FdCrossed& R);

bool is_prime_algebra(const FdAlgebra& R);
inline bool is_prime_fd(const FdCrossed& R) { return is_prime_algebra(R.algebra()); }

struct SuppLemmaReport {
  long examined = 0;
  long qualifying = 0;
  long violations = 0;
  bool exhaustive = false;
};
// |supp(a^p)| <= |supp(a)| for a with sigma-fixed pairwise commuting coefficients.
SuppLemmaReport supp_lemma_check(const FdCrossed& R, long samples, Rng& g);
bool has_qualifying_coefficients(const FdCrossed& R, const FqVec& x);

struct PhiPsiReport {
  long ideals_R = 0;
  long ideals_S = 0;  // sigma-invariant ideals of the g^p-subring
  long failures = 0;
  std::string counterexample;
  bool ok() const { return failures == 0; }
};
PhiPsiReport phi_psi_check(const FdCrossed& R);

// Builds the c-elements of the rigidity argument for a minimal a and asserts they vanish.
bool minimality_rigidity_holds(const FdCrossed& R, const FdIdeal& I, const FqVec& a);
// For a minimal with a_0 != 0: a central iff a_0 in Z(A)^sigma.
bool centrality_criterion_holds(const FdCrossed& R, const FqVec& a);

// ell = gamma g^{p^{m-1}} where sigma^{p^{m-1}} = conj(gamma^{-1}).
struct TwistedBasis {
  FqVec ell;
  FqVec ell_p;  // ell^p, an element of A when centralizing
  bool centralizes_A = false;
};
TwistedBasis twisted_basis(const FdCrossed& R, const FqVec& gamma);

std::string support_str(const std::vector<long>& s);

}  // namespace skewps
