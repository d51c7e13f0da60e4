#include "chowmod/extension.hpp"

namespace chowmod {

namespace {

using Elem = FiniteField::Elem;
using P = Poly<FiniteField>;
using Mat = std::vector<std::vector<std::uint32_t>>;

std::uint32_t inv_p(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = a;
  while (nr) {
    std::int64_t q = r / nr;
    t -= q * nt; std::swap(t, nt);
    r -= q * nr; std::swap(r, nr);
  }
  return static_cast<std::uint32_t>((t % p + p) % p);
}

// inverse of a square matrix over F_p
Mat invert(Mat a, std::uint32_t p) {
  std::size_t n = a.size();
  Mat inv(n, std::vector<std::uint32_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) throw std::logic_error("extension basis is singular");
    std::swap(a[piv], a[c]);
    std::swap(inv[piv], inv[c]);
    std::uint64_t li = inv_p(a[c][c], p);
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] = static_cast<std::uint32_t>(a[c][j] * li % p);
      inv[c][j] = static_cast<std::uint32_t>(inv[c][j] * li % p);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      std::uint64_t f = a[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] = static_cast<std::uint32_t>((a[r][j] + (p - f) * a[c][j]) % p);
        inv[r][j] = static_cast<std::uint32_t>((inv[r][j] + (p - f) * inv[c][j]) % p);
      }
    }
  }
  return inv;
}

}  // namespace

std::vector<Elem> embedding_table(const FiniteField& small, const FieldPtrFq& big) {
  if (small.p() != big->p() || big->degree() % small.degree() != 0)
    throw std::invalid_argument("no embedding " + small.describe() + " -> " + big->describe());
  std::vector<Elem> table(small.size());
  if (small.degree() == 1) {
    for (std::uint32_t c = 0; c < small.size(); ++c) table[c] = Elem{c};
    return table;
  }
  std::vector<Elem> mc;
  for (auto c : small.modulus()) mc.push_back(Elem{c});
  auto rs = roots(P(big, mc));
  if (rs.empty()) throw std::logic_error("modulus has no root in the larger field");
  Elem r = rs.front();
  for (std::uint32_t c = 0; c < small.size(); ++c) {
    auto d = small.digits(Elem{c});
    Elem acc = big->zero();
    for (std::size_t i = d.size(); i-- > 0;) acc = big->add(big->mul(acc, r), Elem{d[i]});
    table[c] = acc;
  }
  return table;
}

void Extension::index_restrict() {
  restrict_.clear();
  for (std::uint32_t c = 0; c < embed_.size(); ++c) restrict_[embed_[c].v] = c;
}

void Extension::finish() {
  index_restrict();
  std::uint32_t p = big_->p(), e = base_->degree();
  std::size_t n = static_cast<std::size_t>(e) * d_;
  if (n != big_->degree()) throw std::logic_error("extension degree mismatch");
  // column (j*e + i) = digits of embed(beta^i) * root^j
  Mat m(n, std::vector<std::uint32_t>(n, 0));
  Elem rj = big_->one();
  for (unsigned j = 0; j < d_; ++j) {
    for (std::uint32_t i = 0; i < e; ++i) {
      std::vector<std::uint32_t> bd(e, 0);
      bd[i] = 1;
      Elem v = big_->mul(embed(base_->from_digits(bd)), rj);
      auto dg = big_->digits(v);
      for (std::size_t r = 0; r < n; ++r) m[r][j * e + i] = dg[r];
    }
    rj = big_->mul(rj, root_);
  }
  inv_ = invert(m, p);
}

Extension Extension::trivial(const FieldPtrFq& base) {
  Extension x;
  x.base_ = x.big_ = base;
  x.d_ = 1;
  x.root_ = base->zero();
  x.modulus_ = P::x(base);
  x.embed_.resize(base->size());
  for (std::uint32_t c = 0; c < base->size(); ++c) x.embed_[c] = Elem{c};
  x.finish();
  return x;
}

Extension Extension::field_extend(const FieldPtrFq& base, const P& modulus) {
  if (!same_field(base, modulus.field_ptr())) throw field_mismatch();
  if (!modulus.is_monic() || !is_irreducible(modulus)) throw std::invalid_argument("reducible modulus");
  Extension x;
  x.base_ = base;
  x.d_ = static_cast<unsigned>(modulus.degree());
  x.big_ = x.d_ == 1 ? base : FiniteField::canonical(base->p(), base->degree() * x.d_);
  x.modulus_ = modulus;
  if (x.d_ == 1) {
    x.embed_.resize(base->size());
    for (std::uint32_t c = 0; c < base->size(); ++c) x.embed_[c] = Elem{c};
  } else {
    x.embed_ = embedding_table(*base, x.big_);
  }
  auto rs = chowmod::roots(x.embed(modulus));
  if (rs.empty()) throw std::logic_error("modulus has no root in the extension");
  x.root_ = rs.front();
  x.finish();
  return x;
}

Extension Extension::of_degree(const FieldPtrFq& base, unsigned d) {
  if (d == 1) return trivial(base);
  Extension x;
  x.base_ = base;
  x.d_ = d;
  x.big_ = FiniteField::canonical(base->p(), base->degree() * d);
  x.embed_ = embedding_table(*base, x.big_);
  x.root_ = x.big_->primitive();
  x.index_restrict();
  x.modulus_ = x.minpoly(x.root_);
  x.finish();
  return x;
}

Extension Extension::compose(const Extension& inner, const Extension& outer) {
  if (!same_field(inner.big_, outer.base_)) throw field_mismatch();
  Extension x;
  x.base_ = inner.base_;
  x.big_ = outer.big_;
  x.d_ = inner.d_ * outer.d_;
  x.embed_.resize(inner.embed_.size());
  for (std::size_t c = 0; c < inner.embed_.size(); ++c) x.embed_[c] = outer.embed(inner.embed_[c]);
  x.root_ = x.d_ == 1 ? x.big_->zero() : x.big_->primitive();
  x.index_restrict();
  x.modulus_ = x.d_ == 1 ? P::x(x.base_) : x.minpoly(x.root_);
  x.finish();
  return x;
}

P Extension::embed(const P& p) const {
  if (!same_field(p.field_ptr(), base_)) throw field_mismatch();
  std::vector<Elem> c;
  for (auto& a : p.coeffs()) c.push_back(embed(a));
  return P(big_, c);
}

std::optional<Elem> Extension::restrict(Elem x) const {
  auto it = restrict_.find(x.v);
  if (it == restrict_.end()) return std::nullopt;
  return Elem{it->second};
}

P Extension::restrict(const P& p) const {
  std::vector<Elem> c;
  for (auto& a : p.coeffs()) {
    auto r = restrict(a);
    if (!r) throw std::domain_error("coefficient not in the base field");
    c.push_back(*r);
  }
  return P(base_, c);
}

Elem Extension::frobenius(Elem x, unsigned k) const {
  for (unsigned i = 0; i < k; ++i) x = big_->pow(x, base_->size());
  return x;
}

Elem Extension::norm(Elem x) const {
  Elem r = big_->one(), c = x;
  for (unsigned i = 0; i < d_; ++i) {
    r = big_->mul(r, c);
    c = frobenius(c);
  }
  return *restrict(r);
}

Elem Extension::trace(Elem x) const {
  Elem r = big_->zero(), c = x;
  for (unsigned i = 0; i < d_; ++i) {
    r = big_->add(r, c);
    c = frobenius(c);
  }
  return *restrict(r);
}

std::vector<Elem> Extension::roots(const P& over_base) const { return chowmod::roots(embed(over_base)); }

P Extension::to_basis(Elem x) const {
  std::uint32_t p = big_->p(), e = base_->degree();
  auto dg = big_->digits(x);
  std::size_t n = dg.size();
  std::vector<std::uint32_t> sol(n, 0);
  for (std::size_t r = 0; r < n; ++r) {
    std::uint64_t s = 0;
    for (std::size_t c = 0; c < n; ++c) s += std::uint64_t(inv_[r][c]) * dg[c];
    sol[r] = static_cast<std::uint32_t>(s % p);
  }
  std::vector<Elem> co(d_);
  for (unsigned j = 0; j < d_; ++j)
    co[j] = base_->from_digits(std::vector<std::uint32_t>(sol.begin() + j * e, sol.begin() + (j + 1) * e));
  return P(base_, co);
}

Elem Extension::from_basis(const P& over_base) const {
  Elem acc = big_->zero();
  const auto& c = over_base.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) acc = big_->add(big_->mul(acc, root_), embed(c[i]));
  return acc;
}

P Extension::minpoly(Elem x) const {
  std::vector<Elem> conj{x};
  for (Elem c = frobenius(x); c != x; c = frobenius(c)) conj.push_back(c);
  P m = P::one(big_);
  for (auto& c : conj) m = m * P::linear(big_, c);
  return restrict(m);
}

}  // namespace chowmod
