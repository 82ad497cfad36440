#include <doctest.h>

#include "skewps/fd_crossed.hpp"
#include "support.hpp"

using namespace skewps;

namespace {

FqVec one_plus_g(const FdCrossed& R, long i) { return R.algebra().add(R.one(), R.g_pow(i)); }

FqMat single(const FqVec& v) { return FqMat{v}; }

bool central(const FdCrossed& R, const FqVec& a) {
  for (int i = 0; i < R.dim(); ++i)
    if (R.mul(a, R.algebra().basis(i)) != R.mul(R.algebra().basis(i), a)) return false;
  return true;
}

}  // namespace

TEST_SUITE("fd-crossed") {

TEST_CASE("algebra presets validate") {
  FdAlgebra::field(2, 2, 1).validate();
  FdAlgebra::matrix(2, FiniteField::make(2, 1)).validate();
  FdCrossed::group_algebra(3, 1).algebra().validate();
  FdCrossed::twisted(2, 2, 1, 2, 1).algebra().validate();
}

TEST_CASE("ga = sigma(a) g") {
  FdCrossed R = FdCrossed::twisted(2, 2, 1, 2, 1);
  const FdAlgebra& A = R.base();
  for (int i = 0; i < A.n; ++i) {
    FqVec a = A.basis(i);
    CHECK(R.mul(R.g_pow(1), R.embed(a)) == R.mul(R.embed(A.apply_sigma(a)), R.g_pow(1)));
  }
  CHECK(R.g_pow(4) == R.embed(R.gpow()));
}

TEST_CASE("ideal_closure") {
  FdCrossed R = FdCrossed::group_algebra(2, 1);
  CHECK(ideal_closure({R.algebra().zero()}, R).is_zero());
  CHECK(ideal_closure({R.one()}, R).dim() == R.dim());
  FdIdeal I = ideal_closure({one_plus_g(R, 1)}, R);
  CHECK(I.dim() == 1);
  CHECK(I.contains(one_plus_g(R, 1)));
}

TEST_CASE("minimal_support_element") {
  FdCrossed R2 = FdCrossed::group_algebra(2, 1);
  FdIdeal whole = ideal_closure({R2.one()}, R2);
  CHECK(R2.support(minimal_support_element(whole, R2)).size() == 1);
  FdIdeal I = ideal_closure({one_plus_g(R2, 1)}, R2);
  CHECK(minimal_support_element(I, R2) == one_plus_g(R2, 1));

  FdCrossed R4 = FdCrossed::group_algebra(2, 2);
  // 1 + g and 1 + g^2 both have support size 2; the lexicographic tie-break picks 1 + g
  FqVec a = minimal_support_element(nilradical_fd(R4), R4);
  CHECK(R4.support(a).size() == 2);
  CHECK(a == one_plus_g(R4, 1));

  CHECK_THROWS_AS(minimal_support_element(ideal_closure({R4.algebra().zero()}, R4), R4), ZeroIdeal);
}

TEST_CASE("central_minimal_with_p_nilpotence") {
  FdCrossed R2 = FdCrossed::group_algebra(2, 1);
  CentralMinimal c2 = central_minimal_with_p_nilpotence(ideal_closure({one_plus_g(R2, 1)}, R2), R2);
  REQUIRE(c2.ok);
  CHECK(c2.a == one_plus_g(R2, 1));
  CHECK(is_zero_vec(R2.pow(c2.a, 2)));

  FdCrossed R4 = FdCrossed::group_algebra(2, 2);
  CentralMinimal c4 = central_minimal_with_p_nilpotence(nilradical_fd(R4), R4);
  REQUIRE(c4.ok);
  CHECK(c4.a == one_plus_g(R4, 2));
  CHECK(is_zero_vec(R4.pow(c4.a, 2)));
  CHECK(central(R4, c4.a));

  FdCrossed R3 = FdCrossed::group_algebra(3, 1);
  CentralMinimal c3 = central_minimal_with_p_nilpotence(nilradical_fd(R3), R3);
  REQUIRE(c3.ok);
  CHECK(is_zero_vec(R3.pow(c3.a, 3)));
  CHECK_FALSE(is_zero_vec(R3.coeff(c3.a, 0)));

  // no nonzero ideal meets A trivially in a prime ring
  FdCrossed P = FdCrossed::twisted(2, 2, 1, 1, 1);
  REQUIRE(is_prime_fd(P));
  for (const FdIdeal& I : enumerate_ideals(P.algebra())) {
    if (I.is_zero()) continue;
    bool meets = false;
    for (int i = 0; i < P.base().n && !meets; ++i) meets = I.contains(P.embed(P.base().basis(i)));
    CHECK(meets);
  }
}

TEST_CASE("p1_witness") {
  FdAlgebra F2 = FdAlgebra::field(2, 1);
  Subspace all2(F2.F.get(), F2.n, FqMat{F2.unit});
  CHECK(p1_witness(F2, all2).has_value());

  FdAlgebra M2 = FdAlgebra::matrix(2, FiniteField::make(2, 1));
  FqMat id;
  for (int i = 0; i < M2.n; ++i) id.push_back(M2.basis(i));
  auto w = p1_witness(M2, Subspace(M2.F.get(), M2.n, id));
  REQUIRE(w.has_value());
  CHECK(*w == M2.unit);

  FdAlgebra F4 = FdAlgebra::field(2, 2, 1);
  FqMat b4{F4.basis(0), F4.basis(1)};
  auto w4 = p1_witness(F4, Subspace(F4.F.get(), F4.n, b4));
  REQUIRE(w4.has_value());
  CHECK(F4.apply_sigma(*w4) == *w4);
  CHECK(*w4 == F4.unit);
  CHECK(satisfies_p1(F4));
}

TEST_CASE("nilradical_fd") {
  FdCrossed R2 = FdCrossed::group_algebra(2, 1);
  FdIdeal N = nilradical_fd(R2);
  CHECK(N.dim() == 1);
  CHECK(N.contains(one_plus_g(R2, 1)));
  CHECK(is_zero_vec(R2.mul(one_plus_g(R2, 1), one_plus_g(R2, 1))));

  // g^2 = w is not fixed by Frobenius, so this twisted ring does not exist
  CHECK_THROWS_AS(FdCrossed::twisted(2, 2, 1, 1, 2), HypothesisFail);

  FdCrossed T = FdCrossed::twisted(2, 2, 0, 1, 2);
  FdIdeal NT = nilradical_fd(T);
  for (int i = 0; i < T.base().n; ++i) CHECK_FALSE(NT.contains(T.embed(T.base().basis(i))));
  CHECK(NT == radical_bruteforce(T.algebra()));

  FdAlgebra F4 = FdAlgebra::field(2, 2, 0);
  CHECK(nilradical_fd(FdCrossed(F4, 0, F4.unit)).is_zero());
}

TEST_CASE("is_prime_fd") {
  CHECK_FALSE(is_prime_fd(FdCrossed::group_algebra(2, 1)));
  FdAlgebra M2 = FdAlgebra::matrix(2, FiniteField::make(2, 1));
  CHECK(is_prime_fd(FdCrossed(M2, 0, M2.unit)));
  FdCrossed T = FdCrossed::twisted(2, 2, 0, 1, 2);
  CHECK(is_prime_fd(T) == nilradical_fd(T).is_zero());
}

TEST_CASE("supp lemma is exhaustive on F_2[Z/4]") {
  Rng g(51);
  SuppLemmaReport s = supp_lemma_check(FdCrossed::group_algebra(2, 2), 4096, g);
  CHECK(s.exhaustive);
  CHECK(s.examined == 16);
  CHECK(s.violations == 0);
  SuppLemmaReport t = supp_lemma_check(FdCrossed::twisted(2, 2, 1, 2, 1), 4096, g);
  CHECK(t.violations == 0);
}

TEST_CASE("p^m-nilpotency of qualifying elements of ideals meeting A trivially") {
  FdCrossed R = FdCrossed::group_algebra(2, 2);
  FdIdeal N = nilradical_fd(R);
  for (const FqVec& v : N.space.basis())
    if (has_qualifying_coefficients(R, v)) CHECK(is_zero_vec(R.pow(v, 4)));
}

TEST_CASE("rigidity and centrality of minimal elements") {
  for (const FdCrossed& R : {FdCrossed::group_algebra(2, 1), FdCrossed::group_algebra(2, 2),
                             FdCrossed::group_algebra(3, 1), FdCrossed::twisted(2, 2, 1, 2, 1)}) {
    for (const FdIdeal& I : enumerate_ideals(R.algebra())) {
      if (I.is_zero()) continue;
      FqVec a = minimal_support_element(I, R);
      CHECK(minimality_rigidity_holds(R, I, a));
      if (!is_zero_vec(R.coeff(a, 0))) CHECK(centrality_criterion_holds(R, a));
    }
  }
}

TEST_CASE("ideal correspondence with the g^p-subring") {
  PhiPsiReport moved = phi_psi_check(FdCrossed::twisted(2, 2, 1, 2, 1));
  CHECK(moved.ok());
  CHECK(moved.ideals_R > 0);
  // with sigma = id the correspondence fails; this is the documented counterexample
  PhiPsiReport fixed = phi_psi_check(FdCrossed::group_algebra(2, 2));
  CHECK_FALSE(fixed.ok());
  CHECK_FALSE(fixed.counterexample.empty());
}

TEST_CASE("twisted basis") {
  FdCrossed R = FdCrossed::group_algebra(2, 2);
  TwistedBasis tb = twisted_basis(R, R.base().unit);
  CHECK(tb.centralizes_A);
  CHECK(tb.ell == R.g_pow(2));
  CHECK(tb.ell_p == R.one());
}

TEST_CASE("ideal lattice bookkeeping") {
  FdCrossed R = FdCrossed::group_algebra(2, 2);
  auto ideals = enumerate_ideals(R.algebra());
  CHECK(ideals.size() == 5);
  for (const auto& I : ideals) CHECK(is_two_sided(R.algebra(), I.space));
  FdAlgebra big = FdAlgebra::matrix(3, FiniteField::make(2, 1));
  CHECK_THROWS_AS(enumerate_ideals(FdCrossed(big, 1, big.unit).algebra()), TooLarge);
}

}
