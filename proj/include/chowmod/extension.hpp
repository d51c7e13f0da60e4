#pragma once

#include <unordered_map>

#include "chowmod/factor.hpp"

namespace chowmod {

// A finite extension base ⊂ big of finite fields, big = base(root).
class Extension {
 public:
  using Elem = FiniteField::Elem;
  using P = Poly<FiniteField>;

  // big = base[t]/(modulus), modulus monic irreducible over base; root = class of t
  static Extension field_extend(const FieldPtrFq& base, const P& modulus);
  // canonical field of degree d over base; root = primitive element of big
  static Extension of_degree(const FieldPtrFq& base, unsigned d);
  // base ⊂ mid ⊂ big as one extension
  static Extension compose(const Extension& inner, const Extension& outer);
  static Extension trivial(const FieldPtrFq& base);

  const FieldPtrFq& base() const { return base_; }
  const FieldPtrFq& big() const { return big_; }
  unsigned degree() const { return d_; }
  const P& modulus() const { return modulus_; }
  Elem root() const { return root_; }

  Elem embed(Elem b) const { return embed_[b.v]; }
  P embed(const P& p) const;
  std::optional<Elem> restrict(Elem x) const;
  P restrict(const P& p) const;
  // x^{|base|^k}
  Elem frobenius(Elem x, unsigned k = 1) const;
  Elem norm(Elem x) const;
  Elem trace(Elem x) const;
  std::vector<Elem> roots(const P& over_base) const;
  // coordinates of x in the basis 1, root, ..., root^{d-1} over base
  P to_basis(Elem x) const;
  Elem from_basis(const P& over_base) const;
  P minpoly(Elem x) const;

 private:
  Extension() = default;
  void finish();
  void index_restrict();

  FieldPtrFq base_, big_;
  unsigned d_ = 1;
  P modulus_;
  Elem root_{};
  std::vector<Elem> embed_;
  std::unordered_map<std::uint32_t, std::uint32_t> restrict_;
  // F_p-linear inverse of (base digits x powers of root) -> big digits
  std::vector<std::vector<std::uint32_t>> inv_;
};

// Canonical embedding of a finite field into a larger one: smallest root of its modulus.
std::vector<FiniteField::Elem> embedding_table(const FiniteField& small, const FieldPtrFq& big);

}  // namespace chowmod
