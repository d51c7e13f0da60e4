#pragma once

#include "chowmod/factor.hpp"

namespace chowmod {

// A closed point of P^1: infinity, or the zero set of a monic irreducible polynomial.
template <class F>
struct PlaceP1 {
  std::optional<Poly<F>> pi;  // nullopt = infinity

  static PlaceP1 infinity() { return {}; }
  static PlaceP1 finite(Poly<F> p) {
    if (p.degree() < 1 || !p.is_monic()) throw std::invalid_argument("place needs a monic nonconstant polynomial");
    return PlaceP1{std::move(p)};
  }
  static PlaceP1 rational(const std::shared_ptr<const F>& f, const typename F::Elem& a) {
    return PlaceP1{Poly<F>::linear(f, a)};
  }

  bool is_infinity() const { return !pi.has_value(); }
  int degree() const { return pi ? pi->degree() : 1; }

  friend bool operator==(const PlaceP1& a, const PlaceP1& b) {
    if (a.is_infinity() || b.is_infinity()) return a.is_infinity() == b.is_infinity();
    return *a.pi == *b.pi;
  }
  // finite places first in polynomial order, infinity last
  int compare(const PlaceP1& b) const {
    if (is_infinity() || b.is_infinity()) return int(is_infinity()) - int(b.is_infinity());
    return pi->compare(*b.pi);
  }
  friend bool operator<(const PlaceP1& a, const PlaceP1& b) { return a.compare(b) < 0; }

  std::string to_string(const std::string& var = "t") const { return pi ? "[" + pi->to_string(var) + "]" : "[inf]"; }
};

// multiplicity of pi in a nonzero polynomial
template <class F>
int multiplicity(Poly<F> a, const Poly<F>& pi) {
  if (a.is_zero()) throw std::invalid_argument("multiplicity in the zero polynomial");
  int k = 0;
  while (true) {
    auto [q, r] = divmod(a, pi);
    if (!r.is_zero()) return k;
    a = std::move(q);
    ++k;
  }
}

template <class F>
int valuation(const RatFunc<F>& f, const PlaceP1<F>& P) {
  if (f.is_zero()) throw std::invalid_argument("valuation of zero");
  if (P.is_infinity()) return f.den.degree() - f.num.degree();
  if (P.pi->degree() == 1 && P.pi->is_monic()) {
    // fast path: count zeros of the Taylor shift at the root
    auto a = P.pi->field().neg(P.pi->coeff(0));
    auto ord = [&](const Poly<F>& p) {
      int k = 0;
      Poly<F> cur = p;
      auto lin = *P.pi;
      while (true) {
        if (!P.pi->field().is_zero(cur.eval(a))) return k;
        cur = cur / lin;
        ++k;
      }
    };
    return ord(f.num) - ord(f.den);
  }
  return multiplicity(f.num, *P.pi) - multiplicity(f.den, *P.pi);
}

// All places with nonzero valuation, including infinity; requires factoring num and den.
template <class F>
std::vector<std::pair<PlaceP1<F>, int>> principal_divisor(const RatFunc<F>& f) {
  if (f.is_zero()) throw std::invalid_argument("divisor of zero");
  std::vector<std::pair<PlaceP1<F>, int>> out;
  for (auto& [g, e] : factor(f.num).factors) out.push_back({PlaceP1<F>::finite(g), e});
  for (auto& [g, e] : factor(f.den).factors) out.push_back({PlaceP1<F>::finite(g), -e});
  int vinf = f.den.degree() - f.num.degree();
  if (vinf) out.push_back({PlaceP1<F>::infinity(), vinf});
  std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.first < b.first; });
  return out;
}

}  // namespace chowmod
