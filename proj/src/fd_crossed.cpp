#include "skewps/fd_crossed.hpp"

#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "skewps/errors.hpp"
#include "skewps/skew_datum.hpp"

namespace skewps {

namespace {

constexpr std::uint64_t kLatticeCap = 1ull << 12;
constexpr std::uint64_t kExhaustiveCap = 1ull << 16;

// Calls fn on every vector of F^n, in the order of its base-q index.
void for_each_vector(const FiniteField& F, int n, const std::function<bool(const FqVec&)>& fn) {
  const std::uint64_t q = F.order();
  FqVec v(n, 0);
  while (true) {
    if (!fn(v)) return;
    int i = 0;
    while (i < n) {
      if (++v[i] < q) break;
      v[i++] = 0;
    }
    if (i == n) return;
  }
}

Subspace coordinate_blocks(const FiniteField* F, int n, const std::vector<long>& blocks, int bdim) {
  Subspace S(F, n);
  for (long b : blocks)
    for (int a = 0; a < bdim; ++a) {
      FqVec v(n, 0);
      v[b * bdim + a] = 1;
      S.add(v);
    }
  return S;
}

FqMat mat_compose(const FiniteField& F, const FqMat& a, const FqMat& b) {
  // rows are images of basis vectors: (a then b)[j] = b applied to a[j]
  const int n = static_cast<int>(a.size());
  FqMat out(n, FqVec(n, 0));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      if (!a[j][k]) continue;
      for (int l = 0; l < n; ++l)
        if (b[k][l]) out[j][l] = F.add(out[j][l], F.mul(a[j][k], b[k][l]));
    }
  return out;
}

FqVec apply_rows(const FiniteField& F, const FqMat& M, const FqVec& x) {
  FqVec r(M.empty() ? 0 : M[0].size(), 0);
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!x[j]) continue;
    for (std::size_t l = 0; l < r.size(); ++l)
      if (M[j][l]) r[l] = F.add(r[l], F.mul(x[j], M[j][l]));
  }
  return r;
}

FqVec combine(const FiniteField& F, const FqMat& basis, const FqVec& c) {
  FqVec r(basis.empty() ? 0 : basis[0].size(), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!c[i]) continue;
    for (std::size_t l = 0; l < r.size(); ++l)
      if (basis[i][l]) r[l] = F.add(r[l], F.mul(c[i], basis[i][l]));
  }
  return r;
}

}  // namespace

// ---------------------------------------------------------------- FdAlgebra

FqVec FdAlgebra::basis(int i) const {
  FqVec v(n, 0);
  v[i] = 1;
  return v;
}

FqVec FdAlgebra::mul(const FqVec& x, const FqVec& y) const {
  const FiniteField& K = *F;
  FqVec r(n, 0);
  for (int u = 0; u < n; ++u) {
    if (!x[u]) continue;
    for (int v = 0; v < n; ++v) {
      if (!y[v]) continue;
      Elem c = K.mul(x[u], y[v]);
      const FqVec& t = table[u][v];
      for (int k = 0; k < n; ++k)
        if (t[k]) r[k] = K.add(r[k], K.mul(c, t[k]));
    }
  }
  return r;
}

FqVec FdAlgebra::add(const FqVec& x, const FqVec& y) const {
  FqVec r(n);
  for (int i = 0; i < n; ++i) r[i] = F->add(x[i], y[i]);
  return r;
}

FqVec FdAlgebra::sub(const FqVec& x, const FqVec& y) const {
  FqVec r(n);
  for (int i = 0; i < n; ++i) r[i] = F->sub(x[i], y[i]);
  return r;
}

FqVec FdAlgebra::scale(Elem c, const FqVec& x) const {
  FqVec r(n);
  for (int i = 0; i < n; ++i) r[i] = F->mul(c, x[i]);
  return r;
}

FqVec FdAlgebra::apply_sigma(const FqVec& x) const { return apply_rows(*F, sigma, x); }

FqVec FdAlgebra::pow(const FqVec& x, long e) const {
  FqVec r = unit, b = x;
  while (e > 0) {
    if (e & 1) r = mul(r, b);
    e >>= 1;
    if (e) b = mul(b, b);
  }
  return r;
}

std::uint64_t FdAlgebra::size() const {
  std::uint64_t s = 1;
  for (int i = 0; i < n; ++i) {
    if (s > UINT64_MAX / F->order()) return UINT64_MAX;
    s *= F->order();
  }
  return s;
}

void FdAlgebra::validate() const {
  for (int i = 0; i < n; ++i) {
    FqVec ei = basis(i);
    if (mul(unit, ei) != ei || mul(ei, unit) != ei) throw HypothesisFail("unit is not two-sided");
    for (int j = 0; j < n; ++j) {
      FqVec eij = table[i][j];
      if (apply_sigma(eij) != mul(apply_sigma(ei), apply_sigma(basis(j))))
        throw HypothesisFail("sigma is not multiplicative");
      for (int k = 0; k < n; ++k)
        if (mul(eij, basis(k)) != mul(ei, table[j][k])) throw HypothesisFail("structure constants not associative");
    }
  }
  if (rank(*F, sigma) != n) throw HypothesisFail("sigma is not invertible");
  if (apply_sigma(unit) != unit) throw HypothesisFail("sigma does not fix 1");
}

FdAlgebra FdAlgebra::field(unsigned p, unsigned k, long r) {
  FieldPtr big = FiniteField::make(p, k);
  FdAlgebra A;
  A.F = FiniteField::make(p, 1);
  A.n = static_cast<int>(k);
  auto digits = [&](Elem a) {
    auto d = big->digits(a);
    d.resize(k, 0);
    return FqVec(d.begin(), d.end());
  };
  const Elem w = big->gen();
  A.table.assign(k, std::vector<FqVec>(k));
  for (unsigned i = 0; i < k; ++i)
    for (unsigned j = 0; j < k; ++j) A.table[i][j] = digits(big->pow(w, i + j));
  A.unit = digits(1);
  for (unsigned j = 0; j < k; ++j) A.sigma.push_back(digits(big->frob(big->pow(w, j), r)));
  return A;
}

FdAlgebra FdAlgebra::matrix(unsigned s, FieldPtr F, const FqMat& U) {
  FdAlgebra A;
  A.F = F;
  const int n = static_cast<int>(s * s);
  A.n = n;
  A.table.assign(n, std::vector<FqVec>(n, FqVec(n, 0)));
  for (unsigned a = 0; a < s; ++a)
    for (unsigned b = 0; b < s; ++b)
      for (unsigned d = 0; d < s; ++d) A.table[a * s + b][b * s + d][a * s + d] = 1;
  A.unit.assign(n, 0);
  for (unsigned a = 0; a < s; ++a) A.unit[a * s + a] = 1;
  if (U.empty()) {
    for (int j = 0; j < n; ++j) A.sigma.push_back(A.basis(j));
    return A;
  }
  auto Uinv = mat_inverse(*F, U);
  if (!Uinv) throw HypothesisFail("conjugator is singular");
  FqVec u(n), ui(n);
  for (unsigned a = 0; a < s; ++a)
    for (unsigned b = 0; b < s; ++b) {
      u[a * s + b] = U[a][b];
      ui[a * s + b] = (*Uinv)[a][b];
    }
  for (int j = 0; j < n; ++j) A.sigma.push_back(A.mul(A.mul(u, A.basis(j)), ui));
  return A;
}

FqMat left_mult_matrix(const FdAlgebra& A, const FqVec& x) {
  FqMat M(A.n, FqVec(A.n, 0));
  for (int v = 0; v < A.n; ++v) {
    FqVec col = A.mul(x, A.basis(v));
    for (int k = 0; k < A.n; ++k) M[k][v] = col[k];
  }
  return M;
}

// ---------------------------------------------------------------- FdCrossed

FdCrossed::FdCrossed(FdAlgebra A, long m, FqVec gpow) : A_(std::move(A)), m_(m), gpow_(std::move(gpow)) {
  A_.validate();
  const FiniteField& F = *A_.F;
  const int n = A_.n;
  N_ = ipow(F.p(), m_);
  FqMat id;
  for (int j = 0; j < n; ++j) id.push_back(A_.basis(j));
  sigma_pows_.push_back(id);
  for (long i = 1; i <= N_; ++i) sigma_pows_.push_back(mat_compose(F, sigma_pows_.back(), A_.sigma));

  if (rank(F, left_mult_matrix(A_, gpow_)) != n) throw HypothesisFail("g^{p^m} is not a unit");
  if (A_.apply_sigma(gpow_) != gpow_) throw HypothesisFail("sigma does not fix g^{p^m}");
  for (int b = 0; b < n; ++b) {
    FqVec sb = apply_rows(F, sigma_pows_[N_], A_.basis(b));
    if (A_.mul(sb, gpow_) != A_.mul(gpow_, A_.basis(b)))
      throw HypothesisFail("sigma^{p^m} is not conjugation by g^{p^m}");
  }

  const int D = static_cast<int>(N_) * n;
  flat_.F = A_.F;
  flat_.n = D;
  flat_.table.assign(D, std::vector<FqVec>(D));
  for (long i = 0; i < N_; ++i)
    for (int a = 0; a < n; ++a)
      for (long j = 0; j < N_; ++j)
        for (int b = 0; b < n; ++b) {
          FqVec c = A_.mul(A_.basis(a), apply_rows(F, sigma_pows_[i], A_.basis(b)));
          long e = i + j;
          if (e >= N_) {
            c = A_.mul(c, gpow_);
            e -= N_;
          }
          flat_.table[i * n + a][j * n + b] = embed(c, e);
        }
  flat_.unit = embed(A_.unit, 0);
  for (long i = 0; i < N_; ++i)
    for (int a = 0; a < n; ++a) flat_.sigma.push_back(embed(A_.apply_sigma(A_.basis(a)), i));
}

FqVec FdCrossed::embed(const FqVec& a, long i) const {
  FqVec v(N_ * A_.n, 0);
  std::copy(a.begin(), a.end(), v.begin() + i * A_.n);
  return v;
}

FqVec FdCrossed::g_pow(long i) const {
  FqVec c = A_.unit;
  long e = i % N_;
  for (long k = 0; k < i / N_; ++k) c = A_.mul(c, gpow_);
  return embed(c, e);
}

FqVec FdCrossed::coeff(const FqVec& x, long i) const {
  return FqVec(x.begin() + i * A_.n, x.begin() + (i + 1) * A_.n);
}

std::vector<long> FdCrossed::support(const FqVec& x) const {
  std::vector<long> s;
  for (long i = 0; i < N_; ++i)
    if (!is_zero_vec(coeff(x, i))) s.push_back(i);
  return s;
}

FqVec FdCrossed::from_coeffs(const std::vector<FqVec>& c) const {
  FqVec v(N_ * A_.n, 0);
  for (std::size_t i = 0; i < c.size() && static_cast<long>(i) < N_; ++i)
    std::copy(c[i].begin(), c[i].end(), v.begin() + i * A_.n);
  return v;
}

std::string FdCrossed::str(const FqVec& x) const {
  std::ostringstream os;
  bool first = true;
  for (long i = 0; i < N_; ++i) {
    FqVec c = coeff(x, i);
    if (is_zero_vec(c)) continue;
    if (!first) os << " + ";
    first = false;
    std::string cs;
    if (A_.n == 1) {
      cs = A_.F->str(c[0]);
    } else {
      cs = "[";
      for (int a = 0; a < A_.n; ++a) cs += (a ? "," : "") + std::to_string(c[a]);
      cs += "]";
    }
    if (i == 0) {
      os << cs;
    } else {
      if (cs != "1") os << cs;
      os << "g";
      if (i > 1) os << "^" << i;
    }
  }
  return first ? "0" : os.str();
}

FdCrossed FdCrossed::subring_p() const {
  if (m_ < 1) throw Unsupported("the g^p-subring needs m >= 1");
  FdAlgebra A = A_;
  A.sigma = sigma_pows_[p()];
  return FdCrossed(std::move(A), m_ - 1, gpow_);
}

FqVec FdCrossed::embed_subring(const FqVec& s) const {
  FqVec v(N_ * A_.n, 0);
  const long Ns = N_ / p();
  for (long i = 0; i < Ns; ++i)
    for (int a = 0; a < A_.n; ++a) v[i * p() * A_.n + a] = s[i * A_.n + a];
  return v;
}

FdCrossed FdCrossed::group_algebra(unsigned p, long m) {
  FdAlgebra A = FdAlgebra::field(p, 1);
  FqVec one = A.unit;
  return FdCrossed(std::move(A), m, one);
}

FdCrossed FdCrossed::twisted(unsigned p, unsigned k, long r, long m, Elem gpow) {
  FdAlgebra A = FdAlgebra::field(p, k, r);
  auto d = FiniteField::make(p, k)->digits(gpow);
  d.resize(k, 0);
  return FdCrossed(std::move(A), m, FqVec(d.begin(), d.end()));
}

// ---------------------------------------------------------------- ideals

namespace {

FdIdeal closure_impl(const FdAlgebra& R, const FqMat& gens, bool with_sigma) {
  Subspace S(R.F.get(), R.n);
  std::vector<FqVec> queue;
  for (const auto& v : gens)
    if (S.add(v)) queue.push_back(v);
  while (!queue.empty()) {
    FqVec v = std::move(queue.back());
    queue.pop_back();
    for (int b = 0; b < R.n; ++b) {
      FqVec eb = R.basis(b);
      for (FqVec w : {R.mul(eb, v), R.mul(v, eb)})
        if (S.add(w)) queue.push_back(std::move(w));
    }
    if (with_sigma) {
      FqVec w = R.apply_sigma(v);
      if (S.add(w)) queue.push_back(std::move(w));
    }
  }
  return FdIdeal{S};
}

}  // namespace

FdIdeal ideal_closure(const FdAlgebra& R, const FqMat& gens) { return closure_impl(R, gens, false); }

bool is_two_sided(const FdAlgebra& R, const Subspace& S) {
  for (const auto& v : S.basis())
    for (int b = 0; b < R.n; ++b)
      if (!S.contains(R.mul(R.basis(b), v)) || !S.contains(R.mul(v, R.basis(b)))) return false;
  return true;
}

FdIdeal ideal_sum(const FdIdeal& a, const FdIdeal& b) {
  FdIdeal r = a;
  for (const auto& v : b.space.basis()) r.space.add(v);
  return r;
}

FdIdeal ideal_product(const FdAlgebra& R, const FdIdeal& a, const FdIdeal& b) {
  Subspace S(R.F.get(), R.n);
  for (const auto& x : a.space.basis())
    for (const auto& y : b.space.basis()) S.add(R.mul(x, y));
  return FdIdeal{S};
}

bool is_nilpotent(const FdAlgebra& R, const FdIdeal& I) {
  FdIdeal P = I;
  for (int k = 0; k <= R.n; ++k) {
    if (P.is_zero()) return true;
    FdIdeal Q = ideal_product(R, P, I);
    if (Q.dim() == P.dim()) return false;
    P = std::move(Q);
  }
  return P.is_zero();
}

std::vector<FdIdeal> enumerate_ideals(const FdAlgebra& R) {
  if (R.size() > kLatticeCap) throw TooLarge("ideal lattice enumeration is capped at 2^12 elements");
  std::map<FqMat, FdIdeal> found;
  found.emplace(FqMat{}, FdIdeal{Subspace(R.F.get(), R.n)});
  for_each_vector(*R.F, R.n, [&](const FqVec& x) {
    if (is_zero_vec(x)) return true;
    FdIdeal I = ideal_closure(R, {x});
    found.emplace(I.space.basis(), I);
    return true;
  });
  // close under sums
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<FdIdeal> cur;
    for (auto& [k, v] : found) cur.push_back(v);
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i + 1; j < cur.size(); ++j) {
        FdIdeal s = ideal_sum(cur[i], cur[j]);
        if (found.emplace(s.space.basis(), s).second) grew = true;
      }
  }
  std::vector<FdIdeal> out;
  for (auto& [k, v] : found) out.push_back(v);
  std::stable_sort(out.begin(), out.end(), [](const FdIdeal& a, const FdIdeal& b) { return a.dim() < b.dim(); });
  return out;
}

// ---------------------------------------------------------------- minimal elements

FqVec minimal_support_element(const FdIdeal& I, const FdCrossed& R) {
  if (I.is_zero()) throw ZeroIdeal("minimal element of the zero ideal");
  const long N = R.order();
  const FiniteField* F = R.base().F.get();
  for (long s = 1; s <= N; ++s) {
    std::vector<long> T(s);
    for (long i = 0; i < s; ++i) T[i] = i;
    while (true) {
      Subspace inter = I.space.intersect(coordinate_blocks(F, R.dim(), T, R.base().n));
      if (inter.dim() > 0) return inter.basis()[0];
      long i = s - 1;
      while (i >= 0 && T[i] == N - s + i) --i;
      if (i < 0) break;
      ++T[i];
      for (long j = i + 1; j < s; ++j) T[j] = T[j - 1] + 1;
    }
  }
  throw ZeroIdeal("no nonzero element found");
}

std::optional<FqVec> p1_witness(const FdAlgebra& A, const Subspace& I) {
  const FiniteField& F = *A.F;
  const FqMat& B = I.basis();
  if (B.empty()) return std::nullopt;
  const int d = static_cast<int>(B.size());
  // columns: basis vectors of I; rows: coordinates of sigma(x) - x and of [x, e_b]
  std::vector<FqVec> cols;
  for (const auto& x : B) {
    FqVec c = A.sub(A.apply_sigma(x), x);
    for (int b = 0; b < A.n; ++b) {
      FqVec cm = A.sub(A.mul(x, A.basis(b)), A.mul(A.basis(b), x));
      c.insert(c.end(), cm.begin(), cm.end());
    }
    cols.push_back(std::move(c));
  }
  FqMat M(cols[0].size(), FqVec(d, 0));
  for (int r = 0; r < d; ++r)
    for (std::size_t k = 0; k < cols[r].size(); ++k) M[k][r] = cols[r][k];
  FqMat ns = nullspace(F, M, d);
  if (ns.empty()) return std::nullopt;
  return combine(F, B, ns[0]);
}

bool satisfies_p1(const FdAlgebra& A) {
  if (A.size() > kExhaustiveCap) throw TooLarge("(P1) check is exhaustive up to 2^16 elements");
  std::set<FqMat> seen;
  bool ok = true;
  for_each_vector(*A.F, A.n, [&](const FqVec& x) {
    if (is_zero_vec(x)) return true;
    FdIdeal I = closure_impl(A, {x}, true);
    if (!seen.insert(I.space.basis()).second) return true;
    if (!p1_witness(A, I.space)) ok = false;
    return ok;
  });
  return ok;
}

namespace {

bool is_central(const FdAlgebra& R, const FqVec& a) {
  for (int b = 0; b < R.n; ++b)
    if (R.mul(a, R.basis(b)) != R.mul(R.basis(b), a)) return false;
  return true;
}

}  // namespace

CentralMinimal central_minimal_with_p_nilpotence(const FdIdeal& I, const FdCrossed& R) {
  if (I.is_zero()) throw ZeroIdeal("central minimal element of the zero ideal");
  const FdAlgebra& A = R.base();
  const FiniteField& F = *A.F;
  const int n = A.n;
  const long N = R.order();
  if (I.space.intersect(coordinate_blocks(A.F.get(), R.dim(), {0}, n)).dim() > 0)
    throw HypothesisFail("I meets A");
  if (!satisfies_p1(A)) throw HypothesisFail("(P1) fails for (A, sigma)");

  CentralMinimal out;
  FqVec c = minimal_support_element(I, R);
  auto supp = R.support(c);
  out.trace.push_back("minimal support " + support_str(supp));
  if (supp[0] != 0) {
    c = R.mul(c, R.g_pow(N - supp[0]));
    supp = R.support(c);
    out.trace.push_back("shifted by g to support " + support_str(supp));
  }

  Subspace inter = I.space.intersect(coordinate_blocks(A.F.get(), R.dim(), supp, n));
  Subspace C0(A.F.get(), n);
  for (const auto& v : inter.basis()) C0.add(R.coeff(v, 0));
  out.trace.push_back("C_0 has dimension " + std::to_string(C0.dim()));
  auto z = p1_witness(A, C0);
  if (!z) {
    out.failed_step = "C_0 contains no sigma-fixed central element";
    return out;
  }
  // element of inter with 0-th coefficient z
  const int d = inter.dim();
  FqMat M(n, FqVec(d, 0));
  for (int r = 0; r < d; ++r)
    for (int a = 0; a < n; ++a) M[a][r] = inter.basis()[r][a];
  auto sol = solve(F, M, *z, d);
  if (!sol) {
    out.failed_step = "no element of I lifts the witness";
    return out;
  }
  FqVec a = combine(F, inter.basis(), *sol);
  if (!is_central(R.algebra(), a)) {
    out.failed_step = "lifted minimal element is not central";
    return out;
  }
  out.trace.push_back("central minimal " + R.str(a));

  const unsigned p = R.p();
  for (long k = 0; k <= R.m() + 1; ++k) {
    FqVec ap = R.pow(a, p);
    if (is_zero_vec(ap)) break;
    if (R.support(ap).size() != R.support(a).size()) {
      out.failed_step = "p-th power changed the support size without vanishing";
      return out;
    }
    a = std::move(ap);
    out.trace.push_back("replaced by p-th power " + R.str(a));
  }
  if (!is_zero_vec(R.pow(a, p))) {
    out.failed_step = "no p-nilpotent power within p^m";
    return out;
  }
  if (is_zero_vec(R.coeff(a, 0))) {
    out.failed_step = "a_0 vanished";
    return out;
  }

  const long step = N / p;
  std::vector<FqVec> bc(N, FqVec(n, 0));
  for (long i = 0; i < N; i += step) bc[i] = R.coeff(a, i);
  FqVec b = R.from_coeffs(bc);
  if (b != a) {
    if (!I.contains(b)) {
      out.failed_step = "projection to the small subgroup leaves I";
      out.a = a;
      return out;
    }
    if (!is_zero_vec(R.pow(b, p))) {
      out.failed_step = "projection is not p-nilpotent";
      return out;
    }
    a = b;
    out.trace.push_back("projected to multiples of p^{m-1}: " + R.str(a));
  }
  out.a = a;
  out.ok = true;
  return out;
}

// ---------------------------------------------------------------- radical and primality

namespace {

struct Restricted {
  FdAlgebra alg;
  unsigned k = 1;
};

// The same algebra viewed over F_p, with basis e_a w^c.
Restricted restrict_scalars(const FdAlgebra& R) {
  const FiniteField& F = *R.F;
  const unsigned k = F.k();
  Restricted out;
  out.k = k;
  if (k == 1) {
    out.alg = R;
    return out;
  }
  FdAlgebra& S = out.alg;
  S.F = FiniteField::make(F.p(), 1);
  S.n = R.n * static_cast<int>(k);
  auto expand = [&](const FqVec& x) {
    FqVec v(S.n, 0);
    for (int a = 0; a < R.n; ++a) {
      auto d = F.digits(x[a]);
      for (unsigned c = 0; c < k && c < d.size(); ++c) v[a * k + c] = d[c];
    }
    return v;
  };
  auto wpow = [&](unsigned c) { return F.pow(F.gen(), c); };
  S.table.assign(S.n, std::vector<FqVec>(S.n));
  for (int a = 0; a < R.n; ++a)
    for (unsigned c = 0; c < k; ++c)
      for (int b = 0; b < R.n; ++b)
        for (unsigned d = 0; d < k; ++d)
          S.table[a * k + c][b * k + d] = expand(R.scale(wpow(c + d), R.table[a][b]));
  S.unit = expand(R.unit);
  for (int a = 0; a < R.n; ++a)
    for (unsigned c = 0; c < k; ++c) S.sigma.push_back(expand(R.scale(wpow(c), R.sigma[a])));
  return out;
}

using IMat = std::vector<std::vector<std::int64_t>>;

IMat imul(const IMat& a, const IMat& b, std::int64_t mod) {
  const std::size_t n = a.size();
  IMat r(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (!a[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) r[i][j] = (r[i][j] + a[i][k] * b[k][j]) % mod;
    }
  return r;
}

// (Tr(L^{p^i}) mod p^{i+1}) / p^i for an integer lift L of the regular representation of z
Elem generalized_trace(const FdAlgebra& S, const FqVec& z, unsigned i) {
  const std::int64_t p = S.F->p();
  std::int64_t mod = 1;
  for (unsigned j = 0; j <= i; ++j) mod *= p;
  FqMat L = left_mult_matrix(S, z);
  IMat M(S.n, std::vector<std::int64_t>(S.n));
  for (int r = 0; r < S.n; ++r)
    for (int c = 0; c < S.n; ++c) M[r][c] = L[r][c];
  for (unsigned j = 0; j < i; ++j) {
    // M <- M^p
    IMat P = M;
    for (std::int64_t e = 1; e < p; ++e) P = imul(P, M, mod);
    M = std::move(P);
  }
  std::int64_t tr = 0;
  for (int r = 0; r < S.n; ++r) tr = (tr + M[r][r]) % mod;
  return static_cast<Elem>((tr / (mod / p)) % p);
}

}  // namespace

FdIdeal radical(const FdAlgebra& R) {
  Restricted rs = restrict_scalars(R);
  const FdAlgebra& S = rs.alg;
  const FiniteField& Fp = *S.F;
  const unsigned p = Fp.p();
  unsigned ell = 0;
  for (long q = p; q <= S.n; q *= p) ++ell;

  FqMat X;
  for (int j = 0; j < S.n; ++j) X.push_back(S.basis(j));
  for (unsigned i = 0; i <= ell && !X.empty(); ++i) {
    const int d = static_cast<int>(X.size());
    FqMat M(S.n, FqVec(d, 0));
    for (int c = 0; c < d; ++c)
      for (int j = 0; j < S.n; ++j) M[j][c] = generalized_trace(S, S.mul(X[c], S.basis(j)), i);
    FqMat ns = nullspace(Fp, M, d);
    FqMat next;
    for (const auto& v : ns) next.push_back(combine(Fp, X, v));
    X = std::move(next);
  }

  Subspace out(R.F.get(), R.n);
  for (const auto& v : X) {
    FqVec x(R.n, 0);
    for (int a = 0; a < R.n; ++a) {
      std::vector<unsigned> dg(rs.k);
      for (unsigned c = 0; c < rs.k; ++c) dg[c] = v[a * rs.k + c];
      x[a] = R.F->from_digits(dg);
    }
    out.add(x);
  }
  return FdIdeal{out};
}

FdIdeal radical_bruteforce(const FdAlgebra& R) {
  if (R.size() > kLatticeCap) throw TooLarge("brute-force radical is capped at 2^12 elements");
  FdIdeal J{Subspace(R.F.get(), R.n)};
  for_each_vector(*R.F, R.n, [&](const FqVec& x) {
    if (is_zero_vec(x) || J.contains(x)) return true;
    FdIdeal I = ideal_closure(R, {x});
    if (is_nilpotent(R, I)) J = ideal_sum(J, I);
    return true;
  });
  return J;
}

FdIdeal nilradical_fd(const FdCrossed& R) {
  if (!is_prime_algebra(R.base())) throw BaseNotPrime("base ring is not prime");
  FdIdeal P = radical(R.algebra());
  if (!is_nilpotent(R.algebra(), P)) throw HypothesisFail("computed radical is not nilpotent");
  if (P.space.intersect(coordinate_blocks(R.base().F.get(), R.dim(), {0}, R.base().n)).dim() > 0)
    throw HypothesisFail("nilradical meets A");
  return P;
}

bool is_prime_algebra(const FdAlgebra& R) {
  if (R.size() > kExhaustiveCap) throw TooLarge("primality check is exhaustive up to 2^16 elements");
  const FiniteField& F = *R.F;
  // x R y = 0 for some y != 0 iff the maps y -> (x e_b) y have a common kernel
  std::vector<FqMat> Lb;
  bool prime = true;
  for_each_vector(F, R.n, [&](const FqVec& x) {
    int lead = -1;
    for (int i = 0; i < R.n && lead < 0; ++i)
      if (x[i]) lead = i;
    if (lead < 0 || x[lead] != 1) return true;  // one representative per line
    Subspace rows(&F, R.n);
    for (int b = 0; b < R.n && rows.dim() < R.n; ++b) {
      FqMat L = left_mult_matrix(R, R.mul(x, R.basis(b)));
      for (const auto& row : L) {
        rows.add(row);
        if (rows.dim() == R.n) break;
      }
    }
    if (rows.dim() < R.n) prime = false;
    return prime;
  });
  return prime;
}

// ---------------------------------------------------------------- lemma checks

bool has_qualifying_coefficients(const FdCrossed& R, const FqVec& x) {
  const FdAlgebra& A = R.base();
  std::vector<FqVec> c;
  for (long i = 0; i < R.order(); ++i) c.push_back(R.coeff(x, i));
  for (const auto& a : c)
    if (A.apply_sigma(a) != a) return false;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j)
      if (A.mul(c[i], c[j]) != A.mul(c[j], c[i])) return false;
  return true;
}

SuppLemmaReport supp_lemma_check(const FdCrossed& R, long samples, Rng& g) {
  SuppLemmaReport rep;
  auto visit = [&](const FqVec& x) {
    ++rep.examined;
    if (!has_qualifying_coefficients(R, x)) return;
    ++rep.qualifying;
    if (R.support(R.pow(x, R.p())).size() > R.support(x).size()) ++rep.violations;
  };
  if (R.algebra().size() <= kExhaustiveCap) {
    rep.exhaustive = true;
    for_each_vector(*R.base().F, R.dim(), [&](const FqVec& x) {
      visit(x);
      return true;
    });
    return rep;
  }
  const std::uint64_t q = R.base().F->order();
  for (long s = 0; s < samples; ++s) {
    FqVec x(R.dim());
    for (auto& e : x) e = static_cast<Elem>(uniform(g, q));
    visit(x);
  }
  return rep;
}

PhiPsiReport phi_psi_check(const FdCrossed& R) {
  const FdCrossed S = R.subring_p();
  const FdAlgebra& RA = R.algebra();
  const FdAlgebra& SA = S.algebra();
  const FdAlgebra& A = R.base();
  const FiniteField* F = A.F.get();
  PhiPsiReport rep;

  auto ideals_R = enumerate_ideals(RA);
  std::vector<FdIdeal> ideals_S;
  auto sigma_S = [&](const FqVec& s) {
    std::vector<FqVec> c;
    for (long i = 0; i < S.order(); ++i) c.push_back(A.apply_sigma(S.coeff(s, i)));
    return S.from_coeffs(c);
  };
  for (auto& J : enumerate_ideals(SA)) {
    bool inv = true;
    for (const auto& v : J.space.basis()) inv = inv && J.contains(sigma_S(v));
    if (inv) ideals_S.push_back(J);
  }
  rep.ideals_R = static_cast<long>(ideals_R.size());
  rep.ideals_S = static_cast<long>(ideals_S.size());

  Subspace image(F, R.dim());
  for (int j = 0; j < S.dim(); ++j) image.add(R.embed_subring(SA.basis(j)));
  const long P = R.p();
  auto phi = [&](const FdIdeal& I) {
    Subspace out(F, S.dim());
    const Subspace meet = I.space.intersect(image);
    for (const auto& v : meet.basis()) {
      FqVec s(S.dim(), 0);
      for (long i = 0; i < S.order(); ++i)
        for (int a = 0; a < A.n; ++a) s[i * A.n + a] = v[i * P * A.n + a];
      out.add(s);
    }
    return FdIdeal{out};
  };
  auto psi = [&](const FdIdeal& J) {
    Subspace out(F, R.dim());
    for (const auto& s : J.space.basis()) {
      FqVec e = R.embed_subring(s);
      for (int b = 0; b < R.dim(); ++b) out.add(RA.mul(e, RA.basis(b)));
    }
    return FdIdeal{out};
  };
  auto fail = [&](const std::string& what) {
    if (rep.failures++ == 0) rep.counterexample = what;
  };
  auto gens = [&](const FdIdeal& I, const FdCrossed& C) {
    std::string s = "span{";
    for (std::size_t i = 0; i < I.space.basis().size(); ++i) s += (i ? ", " : "") + C.str(I.space.basis()[i]);
    return s + "}";
  };

  for (const auto& I : ideals_R)
    if (!(psi(phi(I)) == I)) fail("Psi(Phi(I)) != I for I = " + gens(I, R) + ", Phi(I) = " + gens(phi(I), S));
  for (const auto& J : ideals_S) {
    FdIdeal E = psi(J);
    if (!is_two_sided(RA, E.space)) fail("Psi(J) is not two-sided for J = " + gens(J, S));
    if (!(phi(E) == J)) fail("Phi(Psi(J)) != J for J = " + gens(J, S));
  }
  for (const auto& I : ideals_R)
    for (const auto& I2 : ideals_R) {
      if (!(phi(ideal_product(RA, I, I2)) == ideal_product(SA, phi(I), phi(I2))))
        fail("Phi(II') != Phi(I)Phi(I') for I = " + gens(I, R) + ", I' = " + gens(I2, R));
      bool inc = I2.space.contains(I.space), pinc = phi(I2).space.contains(phi(I).space);
      if (inc != pinc) fail("Phi does not reflect inclusion for I = " + gens(I, R) + ", I' = " + gens(I2, R));
    }
  for (const auto& J : ideals_S)
    for (const auto& J2 : ideals_S) {
      if (!(psi(ideal_product(SA, J, J2)) == ideal_product(RA, psi(J), psi(J2))))
        fail("Psi(JJ') != Psi(J)Psi(J') for J = " + gens(J, S) + ", J' = " + gens(J2, S));
      bool inc = J2.space.contains(J.space), pinc = psi(J2).space.contains(psi(J).space);
      if (inc != pinc) fail("Psi does not reflect inclusion for J = " + gens(J, S) + ", J' = " + gens(J2, S));
    }
  return rep;
}

bool minimality_rigidity_holds(const FdCrossed& R, const FdIdeal& I, const FqVec& a) {
  const FdAlgebra& A = R.base();
  const FdAlgebra& RA = R.algebra();
  const FiniteField& F = *A.F;
  const auto supp = R.support(a);
  Subspace same = I.space.intersect(coordinate_blocks(A.F.get(), R.dim(), supp, A.n));
  for (long j : supp) {
    FqVec aj = R.coeff(a, j);
    // (i) c = g a g^{-1} - a
    if (A.apply_sigma(aj) == aj && !is_zero_vec(RA.sub(RA.apply_sigma(a), a))) return false;
    // (ii) c = q a - a q
    for (int b = 0; b < A.n; ++b) {
      FqVec q = A.basis(b), sq = q;
      for (long k = 0; k < j; ++k) sq = A.apply_sigma(sq);
      if (A.mul(q, aj) != A.mul(aj, sq)) continue;
      if (!is_zero_vec(RA.sub(RA.mul(R.embed(q), a), RA.mul(a, R.embed(q))))) return false;
    }
    // (iii) c = b - q a for b in I with the same support and b_j = q a_j
    FqMat Rm(A.n, FqVec(A.n, 0));
    for (int v = 0; v < A.n; ++v) {
      FqVec col = A.mul(A.basis(v), aj);
      for (int k = 0; k < A.n; ++k) Rm[k][v] = col[k];
    }
    for (const auto& bvec : same.basis()) {
      if (R.support(bvec) != supp) continue;
      auto q = solve(F, Rm, R.coeff(bvec, j), A.n);
      if (!q) continue;
      if (RA.sub(bvec, RA.mul(R.embed(*q), a)) != RA.zero()) return false;
    }
  }
  return true;
}

bool centrality_criterion_holds(const FdCrossed& R, const FqVec& a) {
  const FdAlgebra& A = R.base();
  FqVec a0 = R.coeff(a, 0);
  bool crit = A.apply_sigma(a0) == a0 && is_central(A, a0);
  return crit == is_central(R.algebra(), a);
}

TwistedBasis twisted_basis(const FdCrossed& R, const FqVec& gamma) {
  if (R.m() < 1) throw Unsupported("twisted basis needs m >= 1");
  TwistedBasis tb;
  tb.ell = R.mul(R.embed(gamma), R.g_pow(R.order() / R.p()));
  tb.centralizes_A = true;
  for (int b = 0; b < R.base().n; ++b) {
    FqVec e = R.embed(R.base().basis(b));
    if (R.mul(tb.ell, e) != R.mul(e, tb.ell)) tb.centralizes_A = false;
  }
  tb.ell_p = R.pow(tb.ell, R.p());
  return tb;
}

std::string support_str(const std::vector<long>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

}  // namespace skewps
