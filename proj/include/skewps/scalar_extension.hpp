#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "skewps/crossed_series.hpp"
#include "skewps/field_theory.hpp"

namespace skewps {

// ---- tensor filtration on K (x)_Z Q

// Coordinates of y in K over Z with respect to B.elements.
std::vector<LaurentElem> decompose_scalar(const FiltBasis& B, const LaurentElem& y);
// Q_K element as sum alpha_idx (x) parts[idx]
std::vector<QElem> decompose_tensor(const FiltBasis& B, const QElem& x);
QElem tensor_to_QK(const FiltBasis& B, const std::vector<QElem>& parts);
// min_idx(phi_K(alpha_idx) + e u(parts[idx])), in the rescaled units of K
Value tensor_filtration(const FiltBasis& B, const std::vector<QElem>& parts);

// An arbitrary representation sum beta_k (x) q_k.
struct TensorRep {
  std::vector<std::pair<LaurentElem, QElem>> terms;
};
Value representation_value(const FiltBasis& B, const TensorRep& rep);
QElem representation_to_QK(const FiltBasis& B, const TensorRep& rep);
// Canonical representation plus `extra` random zero tensors (beta z) (x) r - beta (x) (z r) and splittings.
TensorRep random_representation(const FiltBasis& B, const std::vector<QElem>& parts, const QRing& R, Rng& g,
                                int extra);

FiltBasis unramified_extension(const FieldPtr& k, long f);

// Product basis {alpha_i beta_j} of K2/K1/Z.
struct ComposedBasis {
  FiltBasis inner;  // K1 / Z
  FiltBasis outer;  // K2 / K1
  std::vector<LaurentElem> elements;
  std::vector<Value> values;
  long e = 1;
  LaurentElem embed(const LaurentElem& z) const { return outer.embed(inner.embed(z)); }
  Value formula(const std::vector<LaurentElem>& z) const;
  LaurentElem combine(const std::vector<LaurentElem>& z) const;
};
ComposedBasis compose_filt_bases(const FiltBasis& inner, const FiltBasis& outer);

// Exact random element with entries supported in [lo, hi).
QElem random_exact(const QRing& R, Rng& g, long lo, long hi);

// ---- extended datum

struct AECert {
  bool ae1 = false;
  bool ae2 = false;
  bool ae3_strong = false;  // topological equivalence certified on the window
  Value c1 = 0, c2 = 0;     // F^{tensor}_{n+c1} in F^{u_K}_n in F^{tensor}_{n-c2}
  Value window = 0;
  std::string achieved;
};

struct ExtendedDatum {
  FiltBasis K;
  QRing QK;
  DatumPtr base;
  DatumPtr datumK;  // (id (x) sigma, id (x) delta) on Q_K with the rho-adic filtration
  AECert cert;
  QElem embed(const QElem& q) const { return K.embed(q); }
};

// Throws CertificationFail naming the axiom when a check fails.
ExtendedDatum build_extended_datum(const DatumPtr& d, const FiltBasis& K, std::uint64_t seed = 0);

// Coefficientwise embedding into Q_K^+[[y; sigma_K, delta_K]].
BoundedSeries theta_map(const BoundedSeries& f, const ExtendedDatum& E);
// Inverse on the image; throws InstanceError if a coefficient leaves 1 (x) Q.
BoundedSeries theta_inverse(const BoundedSeries& F, const ExtendedDatum& E);

// ---- central scaling

struct CentralScale {
  ExtendedDatum ext;
  long C = 1;
  LaurentElem zeta0;  // zeta0^C = z
  LaurentElem zeta;   // zeta0^v, or 1
  long ell = 0;
  Value v = 0;        // u(b), b = a^{p^ell}
  QElem b;            // in Q_K
  QElem c;            // zeta^{-1} b
  QElem c_inv;
  Value uc = 0, uc_inv = 0;
  bool unit_verified = false;
};
// z defaults to pi. ell defaults to the compatibility exponent of d.
CentralScale central_scale(const QElem& a, const DatumPtr& d, std::optional<LaurentElem> z = std::nullopt,
                           std::optional<long> ell = std::nullopt);

// ---- Frobenius-twisted lifting

struct TwistLift {
  Elem root = 0;       // residue of zeta, in the residue field of K
  LaurentElem zeta;
  Value residual = 0;  // u_K(b^{p^T} - zeta)
  std::vector<Elem> twisted_poly;  // Frob^T(f), over the residue field of K
};
// b lies in Q_K (embedded as needed); fbar has coefficients in sub, embedded into the residue field of K by em.
TwistLift frobenius_twist_lift(const QElem& b, const FPoly& fbar, const FieldEmbedding& em, long T);
// Minimal polynomial of x over the subfield sub (given by em : sub -> ambient), coefficients in sub.
FPoly minimal_polynomial_over(const FieldEmbedding& em, Elem x);

// ---- convergence of inner automorphisms

struct ConvergenceRun {
  long d = 1, r = 1, s = 0;
  std::vector<long> sj;
  std::vector<QElem> bj;
  std::vector<Value> diffs;     // certified u(b_{j+1} - b_j)
  std::vector<Value> required;  // p^{jr}
  QElem limit;
  QElem c;  // limit^{-1}
  Value tau_residual = kInf;
  Value c_minus_one = 0;  // u(c - 1)
  bool ok = false;
};
// tau must satisfy tau^d = conj(c1). Throws NotCoprime, NoContraction.
ConvergenceRun converge_inner(const QElem& c1, long d, const Auto& tau, const QRing& R, long terms = 0);

// ---- pipeline

struct StageRecord {
  std::string name;
  std::string citation;
  std::string extension;
  std::string unit;
  std::map<std::string, Value> residuals;
  bool ok = false;
};

struct SfohReport {
  std::vector<StageRecord> stages;
  long s = 0;          // sigma replaced by sigma^{p^s}
  long ell = 0;        // conj(c) = sigma_{0,K}^{p^ell}
  QElem c;             // final unit, in Q_K
  QElem a_original;    // conj(a) = (sigma^{p^s})_K^{p^ell}
  Value witness_residual = kInf;
  Value original_residual = kInf;
  Value uc = 0, uc_inv = 0;
  bool short_circuit = false;
  bool ok = false;
  std::string extension;
};

struct SfohOptions {
  std::optional<LaurentElem> central_element;
  long jmax = 16;
  std::uint64_t seed = 0;
};

// Stage errors are rethrown with their kind and a stage label.
SfohReport reduce_to_sfoh(const QRing& R, const Auto& sigma, const QElem& t, const SfohOptions& opt = {});

std::string describe_extension(const FiltBasis& K);

}  // namespace skewps
