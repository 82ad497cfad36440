#include "skewps/fqlinalg.hpp"

#include <algorithm>

namespace skewps {

std::vector<int> rref(const FiniteField& F, FqMat& A) {
  std::vector<int> piv;
  if (A.empty()) return piv;
  const int rows = static_cast<int>(A.size()), cols = static_cast<int>(A[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int sel = -1;
    for (int i = r; i < rows; ++i)
      if (A[i][c]) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    std::swap(A[r], A[sel]);
    Elem iv = F.inv(A[r][c]);
    for (auto& x : A[r]) x = F.mul(x, iv);
    for (int i = 0; i < rows; ++i) {
      if (i == r || !A[i][c]) continue;
      Elem f = F.neg(A[i][c]);
      for (int j = c; j < cols; ++j)
        if (A[r][j]) A[i][j] = F.add(A[i][j], F.mul(f, A[r][j]));
    }
    piv.push_back(c);
    ++r;
  }
  A.resize(r);
  return piv;
}

int rank(const FiniteField& F, FqMat A) { return static_cast<int>(rref(F, A).size()); }

FqMat nullspace(const FiniteField& F, const FqMat& A, int ncols) {
  FqMat R = A;
  auto piv = rref(F, R);
  std::vector<bool> is_piv(ncols, false);
  for (int c : piv) is_piv[c] = true;
  FqMat out;
  for (int f = 0; f < ncols; ++f) {
    if (is_piv[f]) continue;
    FqVec v(ncols, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = F.neg(R[i][f]);
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<FqMat> mat_inverse(const FiniteField& F, const FqMat& A) {
  const int n = static_cast<int>(A.size());
  FqMat M(n, FqVec(2 * n, 0));
  for (int i = 0; i < n; ++i) {
    std::copy(A[i].begin(), A[i].end(), M[i].begin());
    M[i][n + i] = 1;
  }
  auto piv = rref(F, M);
  if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) return std::nullopt;
  FqMat inv(n, FqVec(n));
  for (int i = 0; i < n; ++i) std::copy(M[i].begin() + n, M[i].end(), inv[i].begin());
  return inv;
}

std::optional<FqVec> solve(const FiniteField& F, const FqMat& A, const FqVec& b, int ncols) {
  FqMat M = A;
  for (std::size_t i = 0; i < M.size(); ++i) M[i].push_back(b[i]);
  auto piv = rref(F, M);
  if (!piv.empty() && piv.back() == ncols) return std::nullopt;
  FqVec x(ncols, 0);
  for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = M[i][ncols];
  return x;
}

bool is_zero_vec(const FqVec& v) {
  return std::all_of(v.begin(), v.end(), [](Elem e) { return e == 0; });
}

Subspace::Subspace(const FiniteField* F, int n, const FqMat& gens) : F_(F), n_(n) {
  for (const auto& g : gens) add(g);
}

FqVec Subspace::reduce(FqVec v) const {
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    Elem c = v[pivots_[i]];
    if (!c) continue;
    Elem f = F_->neg(c);
    for (int j = pivots_[i]; j < n_; ++j)
      if (basis_[i][j]) v[j] = F_->add(v[j], F_->mul(f, basis_[i][j]));
  }
  return v;
}

bool Subspace::add(const FqVec& v) {
  FqVec r = reduce(v);
  int p = -1;
  for (int j = 0; j < n_; ++j)
    if (r[j]) {
      p = j;
      break;
    }
  if (p < 0) return false;
  Elem iv = F_->inv(r[p]);
  for (auto& x : r) x = F_->mul(x, iv);
  // keep fully reduced form
  for (auto& b : basis_) {
    Elem c = b[p];
    if (!c) continue;
    Elem f = F_->neg(c);
    for (int j = p; j < n_; ++j)
      if (r[j]) b[j] = F_->add(b[j], F_->mul(f, r[j]));
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, p);
  basis_.insert(basis_.begin() + pos, std::move(r));
  return true;
}

bool Subspace::contains(const FqVec& v) const { return is_zero_vec(reduce(v)); }

bool Subspace::contains(const Subspace& o) const {
  return std::all_of(o.basis_.begin(), o.basis_.end(), [&](const FqVec& v) { return contains(v); });
}

Subspace Subspace::intersect(const Subspace& o) const {
  // solve sum a_i b_i = sum c_j o_j
  const int d1 = dim(), d2 = o.dim();
  Subspace out(F_, n_);
  if (!d1 || !d2) return out;
  FqMat A(n_, FqVec(d1 + d2, 0));
  for (int r = 0; r < n_; ++r) {
    for (int i = 0; i < d1; ++i) A[r][i] = basis_[i][r];
    for (int j = 0; j < d2; ++j) A[r][d1 + j] = F_->neg(o.basis_[j][r]);
  }
  for (const auto& k : nullspace(*F_, A, d1 + d2)) {
    FqVec v(n_, 0);
    for (int i = 0; i < d1; ++i)
      if (k[i])
        for (int r = 0; r < n_; ++r) v[r] = F_->add(v[r], F_->mul(k[i], basis_[i][r]));
    out.add(v);
  }
  return out;
}

}  // namespace skewps
