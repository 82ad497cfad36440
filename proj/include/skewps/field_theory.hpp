#pragma once

#include <functional>
#include <vector>

#include "skewps/fq.hpp"
#include "skewps/laurent.hpp"
#include "skewps/qelem.hpp"

namespace skewps {

// Orbit of x under y -> y^{p^base_degree}, stopping at the first repeat.
std::vector<Elem> frobenius_orbit(const FiniteField& F, Elem x, unsigned base_degree);

struct Subfield {
  FieldPtr field;
  FieldEmbedding embedding;  // field -> ambient
  unsigned order_of_map = 1;
};

// Fixed subfield of a field automorphism given as a function on elements.
// Throws NotAnAutomorphism if the map is not a power of Frobenius.
Subfield fixed_field(const FieldPtr& F, const std::function<Elem(Elem)>& map);
Subfield fixed_field_of_frobenius(const FieldPtr& F, long r);

struct ArtinSchreier {
  FieldPtr base;
  Elem a = 0;
  FieldPtr splitting;
  FieldEmbedding embedding;  // base -> splitting
  std::vector<Elem> roots;   // in the splitting field
  bool splits_in_base = false;
};

ArtinSchreier artin_schreier_split(const FieldPtr& base, Elem a);

// K = k'((rho)) over Z = k((pi)) with rho^e = pi, presented with the integer valuation v_K(rho) = 1.
struct FiltBasis {
  FieldPtr base;   // k
  FieldPtr ext;    // k'
  FieldEmbedding iota;
  long e = 1;      // ramification index
  long f = 1;      // inertial degree
  long h = 1;      // value gap of the maximal ideal of Z, before rescaling
  Elem gamma = 1;  // generator of k' over k
  // basis element gamma^i rho^j stored as (i, j), with rescaled value j
  std::vector<std::pair<long, long>> elements;
  std::vector<Value> values;

  // Z -> K, pi -> rho^e
  LaurentElem embed(const LaurentElem& z) const;
  QElem embed(const QElem& q) const;
  LaurentElem basis_element(std::size_t idx) const;
  // sum z_idx * basis_idx in K
  LaurentElem combine(const std::vector<LaurentElem>& z) const;
  // min(e * v(z_idx) + value_idx)
  Value formula(const std::vector<LaurentElem>& z) const;
  static FiltBasis trivial(const FieldPtr& k);
};

struct Adjunction {
  FiltBasis basis;
  LaurentElem zeta0;  // in K, zeta0^C = z
  long C = 1;
};

// Adjoin a C-th root of z (v(z) > 0) to Z = k((pi)); cap bounds rho-adic precision for exact z.
Adjunction adjoin_root_of_unit_power(const LaurentElem& z, long C, Value cap = 64);

// Smallest d such that X^c - a has a root in the degree-d extension of k; returns that field.
FieldPtr extension_with_root(const FieldPtr& k, Elem a, long c);

// c-th root of a unit u of k'[[rho]] with c prime to p, residue root given.
LaurentElem unit_root(const LaurentElem& u, long c, Elem r0, Value cap);

}  // namespace skewps
