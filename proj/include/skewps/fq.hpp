#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace skewps {

using Elem = std::uint32_t;

class FiniteField;
using FieldPtr = std::shared_ptr<const FiniteField>;

// F_{p^k} = F_p[X]/(modulus). Elements are encoded as the integer sum c_i p^i of
// their coefficient vector; the class of X is printed as "w".
class FiniteField {
 public:
  static FieldPtr make(unsigned p, unsigned k);
  static FieldPtr make_with_modulus(unsigned p, std::vector<unsigned> modulus);

  unsigned p() const { return p_; }
  unsigned k() const { return k_; }
  std::uint64_t order() const { return q_; }
  const std::vector<unsigned>& modulus() const { return modulus_; }
  bool modulus_checked() const { return checked_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(long long v) const;
  Elem gen() const;
  Elem primitive() const { return prim_; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::int64_t e) const;
  // x -> x^{p^r}; negative r allowed.
  Elem frob(Elem a, long r) const;

  std::vector<unsigned> digits(Elem a) const;
  Elem from_digits(const std::vector<unsigned>& d) const;
  bool in_prime_field(Elem a) const { return a < p_; }
  // Order of a under x -> x^p restricted to the subfield generated by a.
  unsigned degree_over_prime(Elem a) const;

  std::string str(Elem a) const;
  bool same_as(const FiniteField& o) const { return p_ == o.p_ && modulus_ == o.modulus_; }

  static bool is_prime(std::uint64_t n);
  static bool is_irreducible(unsigned p, const std::vector<unsigned>& monic);

 private:
  FiniteField() = default;
  void build_tables();
  Elem poly_mul(Elem a, Elem b) const;

  unsigned p_ = 2, k_ = 1;
  std::uint64_t q_ = 2;
  std::vector<unsigned> modulus_;
  bool checked_ = true;
  Elem prim_ = 1;
  std::vector<std::uint64_t> ppow_;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> addtab_;
  bool tables_ = false;
};

bool same_field(const FieldPtr& a, const FieldPtr& b);

// Polynomials over a finite field, low degree first.
using FPoly = std::vector<Elem>;
Elem poly_eval(const FiniteField& F, const FPoly& f, Elem x);
std::vector<Elem> poly_roots(const FiniteField& F, const FPoly& f);

// Field homomorphism from -> to determined by the image of the class of X.
class FieldEmbedding {
 public:
  FieldEmbedding() = default;
  FieldEmbedding(FieldPtr from, FieldPtr to);  // least root of from's modulus
  static FieldEmbedding identity(FieldPtr F);

  const FieldPtr& from() const { return from_; }
  const FieldPtr& to() const { return to_; }
  Elem image_of_gen() const { return beta_; }
  Elem operator()(Elem a) const;
  bool in_image(Elem b) const;
  Elem preimage(Elem b) const;
  bool is_identity() const { return ident_; }

 private:
  FieldPtr from_, to_;
  Elem beta_ = 0;
  bool ident_ = false;
  std::vector<Elem> fwd_;
  std::vector<std::int64_t> back_;
};

}  // namespace skewps
