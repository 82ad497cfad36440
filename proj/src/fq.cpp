#include "skewps/fq.hpp"

#include <algorithm>
#include <stdexcept>

#include "skewps/errors.hpp"

namespace skewps {

namespace {

constexpr std::uint64_t kTableCap = std::uint64_t{1} << 20;

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// remainder of a by monic b, coefficients mod p
std::vector<unsigned> poly_rem(std::vector<unsigned> a, const std::vector<unsigned>& b, unsigned p) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    unsigned lead = a.back();
    if (lead != 0) {
      std::size_t shift = a.size() - 1 - db;
      for (std::size_t i = 0; i <= db; ++i) {
        a[shift + i] = (a[shift + i] + (p - lead) * b[i]) % p;
      }
    }
    a.pop_back();
  }
  return a;
}

}  // namespace

bool FiniteField::is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool FiniteField::is_irreducible(unsigned p, const std::vector<unsigned>& monic) {
  const std::size_t k = monic.size() - 1;
  if (k <= 1) return k == 1;
  for (std::size_t d = 1; d <= k / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      std::vector<unsigned> cand(d + 1, 0);
      std::uint64_t c = code;
      for (std::size_t i = 0; i < d; ++i) {
        cand[i] = static_cast<unsigned>(c % p);
        c /= p;
      }
      cand[d] = 1;
      auto r = poly_rem(monic, cand, p);
      if (std::all_of(r.begin(), r.end(), [](unsigned x) { return x == 0; })) return false;
    }
  }
  return true;
}

FieldPtr FiniteField::make(unsigned p, unsigned k) {
  if (!is_prime(p)) throw InstanceError("p not prime");
  if (k == 0) throw InstanceError("field degree must be positive");
  std::uint64_t count = 1;
  for (unsigned i = 0; i < k; ++i) count *= p;
  for (std::uint64_t code = 0; code < count; ++code) {
    std::vector<unsigned> m(k + 1, 0);
    std::uint64_t c = code;
    for (unsigned i = 0; i < k; ++i) {
      m[i] = static_cast<unsigned>(c % p);
      c /= p;
    }
    m[k] = 1;
    if (is_irreducible(p, m)) return make_with_modulus(p, m);
  }
  throw InstanceError("no irreducible modulus found");
}

FieldPtr FiniteField::make_with_modulus(unsigned p, std::vector<unsigned> modulus) {
  if (!is_prime(p)) throw InstanceError("p not prime");
  if (modulus.size() < 2 || modulus.back() != 1) throw InstanceError("modulus must be monic of positive degree");
  std::shared_ptr<FiniteField> F(new FiniteField());
  F->p_ = p;
  F->k_ = static_cast<unsigned>(modulus.size() - 1);
  F->q_ = 1;
  F->ppow_.clear();
  for (unsigned i = 0; i < F->k_; ++i) {
    F->ppow_.push_back(F->q_);
    F->q_ *= p;
    if (F->q_ > (std::uint64_t{1} << 31)) throw InstanceError("field too large for element encoding");
  }
  for (auto& c : modulus) c %= p;
  F->modulus_ = modulus;
  F->checked_ = F->q_ <= kTableCap;
  if (F->checked_ && !is_irreducible(p, modulus)) throw InstanceError("modulus is reducible");
  F->build_tables();
  return F;
}

void FiniteField::build_tables() {
  // primitive element search uses plain polynomial arithmetic
  auto slow_pow = [&](Elem a, std::uint64_t e) {
    Elem r = 1;
    while (e) {
      if (e & 1) r = poly_mul(r, a);
      a = poly_mul(a, a);
      e >>= 1;
    }
    return r;
  };
  const std::uint64_t n = q_ - 1;
  auto factors = prime_factors(n);
  prim_ = 1;
  if (n > 1) {
    for (Elem g = 2; g < q_; ++g) {
      bool ok = true;
      for (auto r : factors)
        if (slow_pow(g, n / r) == 1) {
          ok = false;
          break;
        }
      if (ok) {
        prim_ = g;
        break;
      }
    }
  }
  if (slow_pow(prim_, n) != 1) throw InstanceError("multiplicative group order check failed");
  if (q_ <= kTableCap) {
    exp_.assign(2 * n + 2, 0);
    log_.assign(q_, 0);
    Elem x = 1;
    for (std::uint64_t i = 0; i < n; ++i) {
      if (i > 0 && x == 1) throw InstanceError("multiplicative group order check failed");
      exp_[i] = x;
      log_[x] = static_cast<std::uint32_t>(i);
      x = poly_mul(x, prim_);
    }
    if (x != 1) throw InstanceError("multiplicative group order check failed");
    for (std::uint64_t i = n; i < 2 * n + 2; ++i) exp_[i] = exp_[i - n];
    tables_ = true;
  }
  if (p_ != 2 && q_ <= 256) {
    addtab_.assign(q_ * q_, 0);
    for (Elem a = 0; a < q_; ++a)
      for (Elem b = 0; b < q_; ++b) {
        Elem r = 0;
        Elem x = a, y = b;
        for (unsigned i = 0; i < k_; ++i) {
          r += static_cast<Elem>(((x % p_) + (y % p_)) % p_ * ppow_[i]);
          x /= p_;
          y /= p_;
        }
        addtab_[a * q_ + b] = r;
      }
  }
}

Elem FiniteField::poly_mul(Elem a, Elem b) const {
  auto da = digits(a), db = digits(b);
  std::vector<unsigned> prod(2 * k_ - 1, 0);
  for (unsigned i = 0; i < k_; ++i) {
    if (!da[i]) continue;
    for (unsigned j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
  }
  auto r = poly_rem(prod, modulus_, p_);
  r.resize(k_, 0);
  return from_digits(r);
}

Elem FiniteField::from_int(long long v) const {
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

Elem FiniteField::gen() const {
  if (k_ == 1) return from_int(-static_cast<long long>(modulus_[0]));
  return static_cast<Elem>(p_);
}

std::vector<unsigned> FiniteField::digits(Elem a) const {
  std::vector<unsigned> d(k_, 0);
  for (unsigned i = 0; i < k_; ++i) {
    d[i] = a % p_;
    a /= p_;
  }
  return d;
}

Elem FiniteField::from_digits(const std::vector<unsigned>& d) const {
  Elem r = 0;
  for (unsigned i = 0; i < k_ && i < d.size(); ++i) r += static_cast<Elem>((d[i] % p_) * ppow_[i]);
  return r;
}

Elem FiniteField::add(Elem a, Elem b) const {
  if (p_ == 2) return a ^ b;
  if (!addtab_.empty()) return addtab_[a * q_ + b];
  if (k_ == 1) return static_cast<Elem>((a + b) % p_);
  Elem r = 0;
  for (unsigned i = 0; i < k_; ++i) {
    r += static_cast<Elem>(((a % p_) + (b % p_)) % p_ * ppow_[i]);
    a /= p_;
    b /= p_;
  }
  return r;
}

Elem FiniteField::neg(Elem a) const {
  if (p_ == 2) return a;
  Elem r = 0;
  for (unsigned i = 0; i < k_; ++i) {
    r += static_cast<Elem>(((p_ - a % p_) % p_) * ppow_[i]);
    a /= p_;
  }
  return r;
}

Elem FiniteField::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem FiniteField::mul(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  if (tables_) return exp_[log_[a] + log_[b]];
  return poly_mul(a, b);
}

Elem FiniteField::inv(Elem a) const {
  if (a == 0) throw std::domain_error("inverse of zero in finite field");
  if (tables_) return log_[a] == 0 ? 1 : exp_[(q_ - 1) - log_[a]];
  return pow(a, static_cast<std::int64_t>(q_ - 2));
}

Elem FiniteField::pow(Elem a, std::int64_t e) const {
  if (e < 0) return pow(inv(a), -e);
  if (e == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t n = q_ - 1;
  if (tables_) return exp_[static_cast<std::uint64_t>((static_cast<unsigned __int128>(log_[a]) * static_cast<std::uint64_t>(e)) % n)];
  Elem r = 1;
  std::uint64_t ee = static_cast<std::uint64_t>(e);
  while (ee) {
    if (ee & 1) r = poly_mul(r, a);
    a = poly_mul(a, a);
    ee >>= 1;
  }
  return r;
}

Elem FiniteField::frob(Elem a, long r) const {
  long rr = r % static_cast<long>(k_);
  if (rr < 0) rr += k_;
  if (rr == 0 || a < p_) return a;
  std::uint64_t e = 1;
  for (long i = 0; i < rr; ++i) e *= p_;
  return pow(a, static_cast<std::int64_t>(e));
}

unsigned FiniteField::degree_over_prime(Elem a) const {
  for (unsigned d = 1; d <= k_; ++d)
    if (frob(a, d) == a) return d;
  return k_;
}

std::string FiniteField::str(Elem a) const {
  if (k_ == 1) return std::to_string(a);
  auto d = digits(a);
  std::string out;
  for (int i = static_cast<int>(k_) - 1; i >= 0; --i) {
    if (d[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(d[i]);
    } else {
      if (d[i] != 1) out += std::to_string(d[i]) + "*";
      out += "w";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out.empty() ? "0" : out;
}

bool same_field(const FieldPtr& a, const FieldPtr& b) {
  return a == b || (a && b && a->same_as(*b));
}

Elem poly_eval(const FiniteField& F, const FPoly& f, Elem x) {
  Elem r = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) r = F.add(F.mul(r, x), *it);
  return r;
}

std::vector<Elem> poly_roots(const FiniteField& F, const FPoly& f) {
  std::vector<Elem> roots;
  for (Elem x = 0; x < F.order(); ++x)
    if (poly_eval(F, f, x) == 0) roots.push_back(x);
  return roots;
}

FieldEmbedding::FieldEmbedding(FieldPtr from, FieldPtr to) : from_(std::move(from)), to_(std::move(to)) {
  if (from_->p() != to_->p() || to_->k() % from_->k() != 0)
    throw InstanceError("no embedding between fields of incompatible degree");
  if (same_field(from_, to_)) {
    ident_ = true;
    beta_ = from_->gen();
    return;
  }
  FPoly m;
  for (auto c : from_->modulus()) m.push_back(to_->from_int(c));
  auto roots = poly_roots(*to_, m);
  if (roots.empty()) throw InstanceError("modulus has no root in target field");
  beta_ = roots.front();
  if (from_->order() <= kTableCap) {
    fwd_.resize(from_->order());
    back_.assign(to_->order(), -1);
    for (Elem a = 0; a < from_->order(); ++a) {
      auto d = from_->digits(a);
      Elem r = 0, pw = 1;
      for (unsigned i = 0; i < from_->k(); ++i) {
        r = to_->add(r, to_->mul(to_->from_int(d[i]), pw));
        pw = to_->mul(pw, beta_);
      }
      fwd_[a] = r;
      back_[r] = a;
    }
  }
}

FieldEmbedding FieldEmbedding::identity(FieldPtr F) { return FieldEmbedding(F, F); }

Elem FieldEmbedding::operator()(Elem a) const {
  if (ident_) return a;
  if (!fwd_.empty()) return fwd_[a];
  auto d = from_->digits(a);
  Elem r = 0, pw = 1;
  for (unsigned i = 0; i < from_->k(); ++i) {
    r = to_->add(r, to_->mul(to_->from_int(d[i]), pw));
    pw = to_->mul(pw, beta_);
  }
  return r;
}

bool FieldEmbedding::in_image(Elem b) const {
  if (ident_) return true;
  if (!back_.empty()) return back_[b] >= 0;
  return to_->frob(b, from_->k()) == b;
}

Elem FieldEmbedding::preimage(Elem b) const {
  if (ident_) return b;
  if (!back_.empty() && back_[b] >= 0) return static_cast<Elem>(back_[b]);
  throw std::domain_error("element not in the image of the embedding");
}

}  // namespace skewps
