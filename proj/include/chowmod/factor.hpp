#pragma once

#include <map>
#include <random>

#include "chowmod/ratfunc.hpp"

namespace chowmod {

struct factorization_incomplete : std::runtime_error {
  explicit factorization_incomplete(const std::string& what) : std::runtime_error(what) {}
};

template <class F>
struct Factorization {
  typename F::Elem lc;
  std::vector<std::pair<Poly<F>, int>> factors;  // monic irreducible, sorted, distinct

  Poly<F> expand(const std::shared_ptr<const F>& f) const {
    auto r = Poly<F>::constant(f, lc);
    for (auto& [g, e] : factors) r = r * pow(g, static_cast<unsigned long>(e));
    return r;
  }
};

template <class F>
void sort_factors(std::vector<std::pair<Poly<F>, int>>& fs) {
  std::sort(fs.begin(), fs.end(), [](auto& a, auto& b) { return a.first.compare(b.first) < 0; });
  std::vector<std::pair<Poly<F>, int>> out;
  for (auto& x : fs) {
    if (!out.empty() && out.back().first == x.first) out.back().second += x.second;
    else out.push_back(x);
  }
  fs = std::move(out);
}

// Squarefree decomposition of a monic polynomial: pairs (s_i, i), s_i squarefree, pairwise coprime.
// Characteristic p requires p-th roots of coefficients (finite fields); otherwise throws.
template <class F>
std::vector<std::pair<Poly<F>, int>> squarefree_decomposition(const Poly<F>& f0);

namespace detail {

template <class F>
std::optional<typename F::Elem> pth_root(const F& f, const typename F::Elem& a) {
  if constexpr (std::is_same_v<F, FiniteField>) {
    return f.pow(a, f.size() / f.p());
  } else if constexpr (std::is_same_v<F, FunctionField<FiniteField>>) {
    // a p-th root of num/den exists iff both are polynomials in v^p
    const auto& b = f.base();
    auto p = b.p();
    auto root = [&](const Poly<FiniteField>& x) -> std::optional<Poly<FiniteField>> {
      std::vector<FiniteField::Elem> r;
      for (std::size_t k = 0; k < x.coeffs().size(); ++k) {
        if (k % p == 0) r.push_back(*pth_root(b, x.coeffs()[k]));
        else if (!b.is_zero(x.coeffs()[k])) return std::nullopt;
      }
      return Poly<FiniteField>(f.base_ptr(), std::move(r));
    };
    auto n = root(a.num), d = root(a.den);
    if (!n || !d) return std::nullopt;
    return RatFunc<FiniteField>(*n, *d);
  } else {
    (void)f;
    (void)a;
    return std::nullopt;
  }
}

}  // namespace detail

template <class F>
std::vector<std::pair<Poly<F>, int>> squarefree_decomposition(const Poly<F>& f0) {
  auto fp = f0.field_ptr();
  std::vector<std::pair<Poly<F>, int>> out;
  Poly<F> f = f0.monic();
  if (f.degree() <= 0) return out;
  unsigned long p = fp->characteristic();
  auto c = gcd(f, f.derivative());
  auto w = f / c;
  int i = 1;
  while (w.degree() > 0) {
    auto y = gcd(w, c);
    auto z = w / y;
    if (z.degree() > 0) out.emplace_back(z, i);
    ++i;
    w = y;
    c = c / y;
  }
  if (c.degree() > 0) {
    if (p == 0) throw std::logic_error("squarefree decomposition did not terminate");
    std::vector<typename F::Elem> r;
    for (std::size_t k = 0; k < c.coeffs().size(); k += p) {
      auto root = detail::pth_root(*fp, c.coeffs()[k]);
      if (!root) throw std::domain_error("inseparable polynomial over an imperfect field");
      r.push_back(*root);
    }
    for (auto& [g, e] : squarefree_decomposition(Poly<F>(fp, r))) out.emplace_back(g, e * static_cast<int>(p));
  }
  return out;
}

template <class F>
Poly<F> squarefree_part(const Poly<F>& f) {
  auto r = Poly<F>::one(f.field_ptr());
  for (auto& [g, e] : squarefree_decomposition(f)) r = r * g;
  return r;
}

// ---- finite fields ----

std::vector<std::pair<Poly<FiniteField>, int>> distinct_degree(const Poly<FiniteField>& f);
std::vector<Poly<FiniteField>> equal_degree(const Poly<FiniteField>& f, int d);
Factorization<FiniteField> factor(const Poly<FiniteField>& p);
bool is_irreducible(const Poly<FiniteField>& p);
std::vector<FiniteField::Elem> roots(const Poly<FiniteField>& p);
// All monic irreducible polynomials of degree d (exhaustive; small q^d).
std::vector<Poly<FiniteField>> monic_irreducibles(const FieldPtrFq& f, int d);

// ---- rationals ----

inline constexpr int kDefaultQBound = 4;
// bound <= 0 disables the degree bound.
Factorization<Rationals> factor(const Poly<Rationals>& p, int bound = kDefaultQBound);
bool is_irreducible(const Poly<Rationals>& p);

// ---- rational function fields: constant-coefficient polynomials only ----

template <class B>
Factorization<FunctionField<B>> factor(const Poly<FunctionField<B>>& p) {
  using K = FunctionField<B>;
  const auto& kp = p.field_ptr();
  if (p.is_zero()) throw std::invalid_argument("factor of zero polynomial");
  Factorization<K> out{p.lc(), {}};
  auto m = p.monic();
  if (m.degree() == 0) return out;
  if (m.degree() == 1) {
    out.factors.emplace_back(m, 1);
    return out;
  }
  std::vector<typename B::Elem> base;
  for (auto& c : m.coeffs()) {
    auto k = kp->as_constant(c);
    if (!k) throw std::domain_error("factorization over " + kp->describe() + " needs constant coefficients");
    base.push_back(*k);
  }
  auto bf = factor(Poly<B>(kp->base_ptr(), base));
  for (auto& [g, e] : bf.factors) out.factors.emplace_back(embed_constants(g, kp), e);
  sort_factors(out.factors);
  return out;
}

template <class B>
bool is_irreducible(const Poly<FunctionField<B>>& p) {
  auto f = factor(p);
  return f.factors.size() == 1 && f.factors[0].second == 1;
}

}  // namespace chowmod
