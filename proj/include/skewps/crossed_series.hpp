#pragma once

#include <vector>

#include "skewps/bounded_series.hpp"
#include "skewps/field_theory.hpp"

namespace skewps {

// f = sum_i component_i(x^P) g^i with g = x - t and P = p^m.
struct CrossedDecomp {
  long m = 0;
  long P = 1;
  DatumPtr S;  // datum of the variable y = x^P
  std::vector<BoundedSeries> components;
  BoundedSeries g;
  std::vector<BoundedSeries> gpowers;
};

BoundedSeries g_element(const DatumPtr& d);
CrossedDecomp decompose(const BoundedSeries& f, long m);
BoundedSeries recompose(const CrossedDecomp& c, const DatumPtr& d);
// y^k -> x^{Pk}
BoundedSeries embed_subring(const BoundedSeries& s, const DatumPtr& d, long P);

struct GRelations {
  Value sigma_residual = kInf;  // g q - sigma(q) g
  Value x_residual = kInf;      // g x - x g
};
GRelations check_g_relations(const DatumPtr& d, const std::vector<QElem>& samples);

struct IwasawaCert {
  DatumPtr datum0;  // sigma0 = conj_{t^{-1}} o sigma, t0 = -1
  QElem unit;       // -t^{-1}, with h = unit * g
  Value relation_residual = kInf;  // y q - sigma0(q) y - delta0(q), y = unit * x
  Value delta_residual = kInf;     // delta0 - (sigma0 - id)
  Value power_residual = kInf;     // h^i - unit^i g^i
  Value t_fixed_residual = kInf;   // sigma0(t) - t
  bool ok = false;
};
IwasawaCert iwasawa_normalize(const DatumPtr& d, const std::vector<QElem>& samples);

// (x - t)^{-r} * body
struct LocalSeries {
  long r = 0;
  BoundedSeries body;
};

// sum n q_n x^{n-1}
BoundedSeries derivative_plain(const BoundedSeries& f);
// d/dx of (x-t)^{-r} body in the form (x-t)^{-r-1} * body'
LocalSeries formal_derivative(const LocalSeries& f);
// Rewrites with r = 0 when x - t is a unit.
LocalSeries minimize_local(const LocalSeries& f);

// k = F_{p^p}, Q = k((pi)), sigma = Frobenius, t = -1, alpha a root of X^p - X - 1 with sigma(alpha) = alpha + 1.
struct ArtinSchreierTestbed {
  DatumPtr datum;
  QElem alpha;
  Elem i = 1;
  ArtinSchreier as;
};
ArtinSchreierTestbed make_artin_schreier_testbed(unsigned p, Value N, long M);

struct InvarianceResult {
  Value residual = kInf;             // (g alpha - alpha g) i^{-1} (x-t)^{-1} - d/dx g
  Value multiplied_residual = kInf;  // (g alpha - alpha g) i^{-1} - (d/dx g)(x - t)
  bool holds = false;
};
InvarianceResult derivative_invariance_check(const BoundedSeries& g, const QElem& alpha, Elem i);

// (f_0, ..., f_{p-1}) with f = sum f_i(x^p) x^i, each f_i returned as a series in x supported on p-multiples.
std::vector<BoundedSeries> extract_components_by_derivative(const BoundedSeries& f);
std::vector<BoundedSeries> split_by_residue_class(const BoundedSeries& f);

struct PsiResult {
  std::vector<BoundedSeries> generators;
  Value membership_residual = kInf;
  Value two_sided_residual = kInf;
  Value phi_psi_residual = kInf;
  bool ok = false;
};
PsiResult extend_ideal_psi(const std::vector<BoundedSeries>& gens, const std::vector<BoundedSeries>& probes,
                           const std::vector<QElem>& samples);

// a = sum b_i g^i with b_i in F_p[t]: a^p against sum b_i^p g^{ip}
Value zt_identity_residual(const DatumPtr& d, const std::vector<std::vector<Elem>>& b_polys);
// (x-t)^n alpha - alpha (x-t)^n - i n (x-t)^n
Value alpha_power_residual(const ArtinSchreierTestbed& tb, long n);
// x r - sigma~(r) x - delta~(r) and delta~(r) - (t r - sigma~(r) t)
Value extended_datum_residual(const DatumPtr& d, const BoundedSeries& r);

BoundedSeries series_pow(const BoundedSeries& f, long n);

}  // namespace skewps
