#include <doctest.h>

#include <algorithm>

#include "skewps/field_theory.hpp"
#include "skewps/scalar_extension.hpp"
#include "support.hpp"

using namespace skewps;
using namespace skewps::testing;

TEST_SUITE("field-theory") {

TEST_CASE("frobenius_orbit") {
  FieldPtr F4 = FiniteField::make(2, 2);
  Elem w = F4->gen();
  CHECK(frobenius_orbit(*F4, 1, 1) == std::vector<Elem>{1});
  CHECK(frobenius_orbit(*F4, 0, 1) == std::vector<Elem>{0});
  CHECK(frobenius_orbit(*F4, w, 1) == std::vector<Elem>{w, F4->add(w, 1)});
}

TEST_CASE("fixed_field") {
  FieldPtr F4 = FiniteField::make(2, 2);
  CHECK(fixed_field_of_frobenius(F4, 1).field->order() == 2);
  FieldPtr F8 = FiniteField::make(2, 3);
  CHECK(fixed_field_of_frobenius(F8, 0).field->order() == 8);
  FieldPtr F16 = FiniteField::make(2, 4);
  Subfield s = fixed_field_of_frobenius(F16, 2);
  CHECK(s.field->order() == 4);
  long fixed = 0;
  for (Elem a = 0; a < 16; ++a)
    if (F16->frob(a, 2) == a) {
      ++fixed;
      CHECK(s.embedding.in_image(a));
    }
  CHECK(fixed == 4);
  CHECK_THROWS_AS(fixed_field(F4, [&](Elem a) { return F4->add(a, 1); }), NotAnAutomorphism);
}

TEST_CASE("artin_schreier_split") {
  FieldPtr F2 = FiniteField::make(2, 1);
  ArtinSchreier z = artin_schreier_split(F2, 0);
  CHECK(z.splits_in_base);
  CHECK(z.roots.size() == 2);

  ArtinSchreier a = artin_schreier_split(F2, 1);
  CHECK_FALSE(a.splits_in_base);
  CHECK(a.splitting->order() == 4);
  REQUIRE(a.roots.size() == 2);
  const FiniteField& K = *a.splitting;
  for (Elem r : a.roots) CHECK(K.sub(K.sub(K.pow(r, 2), r), 1) == 0);
  CHECK(K.add(a.roots[0], a.roots[1]) == 1);

  FieldPtr F4 = FiniteField::make(2, 2);
  // w^2 + w has trace zero over F_2
  Elem tz = F4->add(F4->mul(F4->gen(), F4->gen()), F4->gen());
  ArtinSchreier b = artin_schreier_split(F4, tz);
  CHECK(b.splits_in_base);
}

TEST_CASE("Artin-Schreier roots differ by the prime field") {
  for (auto [p, k] : std::vector<std::pair<unsigned, unsigned>>{{2, 2}, {3, 2}, {5, 1}}) {
    FieldPtr F = FiniteField::make(p, k);
    for (Elem a = 0; a < F->order(); ++a) {
      ArtinSchreier as = artin_schreier_split(F, a);
      const FiniteField& K = *as.splitting;
      Elem img = as.embedding(a);
      CHECK(as.roots.size() == p);
      for (Elem r : as.roots) CHECK(K.sub(K.sub(K.pow(r, p), r), img) == 0);
      for (Elem r : as.roots) CHECK(K.in_prime_field(K.sub(r, as.roots[0])));
    }
  }
}

TEST_CASE("adjoin_root_of_unit_power") {
  FieldPtr F2 = FiniteField::make(2, 1);
  Adjunction a = adjoin_root_of_unit_power(mono(F2, 1), 2, 32);
  CHECK(a.basis.e == 2);
  CHECK(a.basis.f == 1);
  CHECK(a.basis.embed(mono(F2, 1)).val() == 2);
  CHECK(a.zeta0.pow(2, 32).equals(a.basis.embed(mono(F2, 1))));

  Adjunction b = adjoin_root_of_unit_power(mono(F2, 1), 1, 32);
  CHECK(b.basis.e == 1);
  CHECK(b.basis.f == 1);
  CHECK(b.basis.elements.size() == 1);

  // 2 is a cube in F_3, so the cube root of 2 pi^3 already lies in Z
  FieldPtr F3 = FiniteField::make(3, 1);
  LaurentElem z = mono(F3, 3, 2);
  Adjunction c = adjoin_root_of_unit_power(z, 3, 32);
  CHECK(c.basis.e == 1);
  LaurentElem zK = c.basis.embed(z);
  CHECK(c.zeta0.val() * 3 == zK.val());
  CHECK(c.zeta0.pow(3, 32).equals(zK));
}

TEST_CASE("ramified adjunction of a non-monomial") {
  FieldPtr F2 = FiniteField::make(2, 1);
  LaurentElem z = mono(F2, 2) + mono(F2, 3);
  Adjunction a = adjoin_root_of_unit_power(z, 2, 32);
  CHECK(a.basis.e == 2);
  CHECK(a.zeta0.pow(2, 32).equals(a.basis.embed(z).with_prec(a.zeta0.pow(2, 32).prec())));
}

TEST_CASE("filt-basis value formula") {
  FieldPtr F2 = FiniteField::make(2, 1);
  Rng g(9);
  std::vector<FiltBasis> bases{adjoin_root_of_unit_power(mono(F2, 1), 2, 32).basis,
                               adjoin_root_of_unit_power(mono(F2, 1), 3, 32).basis};
  FieldPtr F3 = FiniteField::make(3, 1);
  bases.push_back(adjoin_root_of_unit_power(mono(F3, 1), 2, 32).basis);
  for (const FiltBasis& B : bases) {
    QRing R{B.base, 1, 12};
    for (int i = 0; i < 100; ++i) {
      std::vector<LaurentElem> z;
      for (std::size_t k = 0; k < B.elements.size(); ++k) z.push_back(R.random_scalar(g, -2));
      CHECK(B.combine(z).certified() >= B.formula(z));
      bool exactish = true;
      for (auto& x : z) exactish = exactish && !x.is_zero();
      if (exactish) CHECK(B.combine(z).val() == B.formula(z));
    }
  }
}

TEST_CASE("fixed field of relative Frobenius on an unramified extension") {
  FieldPtr F2 = FiniteField::make(2, 1);
  FiltBasis B = unramified_extension(F2, 3);
  CHECK(B.f == 3);
  const FiniteField& K = *B.ext;
  long fixed = 0;
  for (Elem a = 0; a < K.order(); ++a)
    if (K.frob(a, static_cast<long>(B.base->k())) == a) ++fixed;
  CHECK(fixed == static_cast<long>(B.base->order()));
}

}
