#pragma once

#include <map>

#include "chowmod/parse.hpp"
#include "chowmod/place.hpp"
#include "chowmod/witt.hpp"

namespace chowmod {

struct support_at_zero : std::domain_error {
  support_at_zero() : std::domain_error("cycle support meets {u=0}") {}
};

// Integer combination of finite closed points of A^1 (monic irreducible polynomials).
template <class F>
class ZeroCycleA1 {
 public:
  using P = Poly<F>;
  using Terms = std::map<P, long, PolyLess<F>>;

  ZeroCycleA1() = default;
  explicit ZeroCycleA1(std::shared_ptr<const F> f) : f_(std::move(f)) {}

  static ZeroCycleA1 point(const std::shared_ptr<const F>& f, const typename F::Elem& a, long mult = 1) {
    ZeroCycleA1 z(f);
    z.add(P::linear(f, a), mult);
    return z;
  }
  static ZeroCycleA1 place(const P& pi, long mult = 1) {
    ZeroCycleA1 z(pi.field_ptr());
    z.add(pi, mult);
    return z;
  }

  const std::shared_ptr<const F>& field_ptr() const { return f_; }
  const F& field() const { return *f_; }
  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  // pi must be monic irreducible; not rechecked here
  void add(const P& pi, long mult) {
    if (pi.degree() < 1 || !pi.is_monic()) throw std::invalid_argument("place must be monic of positive degree");
    if (!mult) return;
    auto [it, fresh] = t_.emplace(pi, mult);
    if (!fresh && (it->second += mult) == 0) t_.erase(it);
  }

  long degree() const {
    long d = 0;
    for (auto& [p, m] : t_) d += m * p.degree();
    return d;
  }
  bool is_effective() const {
    return std::all_of(t_.begin(), t_.end(), [](auto& kv) { return kv.second > 0; });
  }
  bool avoids_zero() const {
    for (auto& [p, m] : t_)
      if (p.degree() == 1 && f_->is_zero(p.coeff(0))) return false;
    return true;
  }
  void require_off_zero() const {
    if (!avoids_zero()) throw support_at_zero();
  }

  friend ZeroCycleA1 operator+(ZeroCycleA1 a, const ZeroCycleA1& b) {
    if (!a.f_) a.f_ = b.f_;
    if (b.f_) require_same(a.f_, b.f_);
    for (auto& [p, m] : b.t_) a.add(p, m);
    return a;
  }
  ZeroCycleA1 operator-() const { return scaled(-1); }
  friend ZeroCycleA1 operator-(const ZeroCycleA1& a, const ZeroCycleA1& b) { return a + (-b); }
  ZeroCycleA1 scaled(long k) const {
    ZeroCycleA1 r(f_);
    if (k)
      for (auto& [p, m] : t_) r.t_.emplace(p, m * k);
    return r;
  }
  friend bool operator==(const ZeroCycleA1& a, const ZeroCycleA1& b) {
    if (a.t_.size() != b.t_.size()) return false;
    auto i = a.t_.begin();
    for (auto j = b.t_.begin(); j != b.t_.end(); ++i, ++j)
      if (i->second != j->second || !(i->first == j->first)) return false;
    return true;
  }

  // "3*[u-1] + 1*[u^2+u+1]", "0" when empty
  std::string to_string(const std::string& var = "u") const {
    if (t_.empty()) return "0";
    std::string s;
    for (auto& [p, m] : t_) {
      if (!s.empty()) s += m < 0 ? " - " : " + ";
      else if (m < 0) s += "-";
      s += std::to_string(m < 0 ? -m : m) + "*[" + p.to_string(var) + "]";
    }
    return s;
  }

 private:
  std::shared_ptr<const F> f_;
  Terms t_;
};

// Inverse of to_string; every bracketed polynomial must be monic irreducible.
template <class F>
ZeroCycleA1<F> parse_cycle(const std::shared_ptr<const F>& f, std::string_view s, const std::string& var = "u") {
  ZeroCycleA1<F> z(f);
  std::size_t i = 0;
  auto skip = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  skip();
  if (s.substr(i) == "0") return z;
  bool first = true;
  while (true) {
    skip();
    if (i >= s.size()) break;
    long sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (!first) {
      throw parse_error("expected '+' or '-' in cycle '" + std::string(s) + "'");
    }
    long mult = 1;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      std::size_t st = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      mult = std::stol(std::string(s.substr(st, i - st)));
      skip();
      if (i >= s.size() || s[i] != '*') throw parse_error("expected '*' in cycle '" + std::string(s) + "'");
      ++i;
      skip();
    }
    if (i >= s.size() || s[i] != '[') throw parse_error("expected '[' in cycle '" + std::string(s) + "'");
    auto close = s.find(']', i);
    if (close == s.npos) throw parse_error("unbalanced '[' in cycle '" + std::string(s) + "'");
    auto p = parse_poly(f, s.substr(i + 1, close - i - 1), var);
    if (p.degree() < 1 || !p.is_monic()) throw parse_error("place must be monic: " + p.to_string(var));
    if (!is_irreducible(p)) throw parse_error("place is reducible: " + p.to_string(var));
    z.add(p, sign * mult);
    i = close + 1;
    first = false;
  }
  return z;
}

// det of the Sylvester matrix of a(t) and b(t), with b's coefficients in k[u] (b[i] = coeff of t^i).
// Fraction-free Bareiss elimination over k[u].
template <class F>
Poly<F> resultant_t(const Poly<F>& a, std::vector<Poly<F>> b) {
  auto fp = a.field_ptr();
  while (!b.empty() && b.back().is_zero()) b.pop_back();
  if (a.is_zero() || b.empty()) throw std::invalid_argument("resultant with a zero polynomial");
  int m = a.degree(), n = static_cast<int>(b.size()) - 1;
  if (m == 0) return Poly<F>::constant(fp, field_pow(*fp, a.lc(), n));
  if (n == 0) return pow(b[0], static_cast<unsigned long>(m));
  std::size_t N = m + n;
  using P = Poly<F>;
  std::vector<std::vector<P>> M(N, std::vector<P>(N, P(fp)));
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) M[r][r + i] = P::constant(fp, a.coeff(m - i));
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) M[n + r][r + i] = b[n - i];
  bool neg = false;
  P prev = P::one(fp);
  for (std::size_t k = 0; k + 1 < N; ++k) {
    if (M[k][k].is_zero()) {
      std::size_t piv = k + 1;
      while (piv < N && M[piv][k].is_zero()) ++piv;
      if (piv == N) return P(fp);
      std::swap(M[piv], M[k]);
      neg = !neg;
    }
    for (std::size_t i = k + 1; i < N; ++i) {
      for (std::size_t j = k + 1; j < N; ++j) {
        auto v = M[i][j] * M[k][k] - M[i][k] * M[k][j];
        M[i][j] = v / prev;
      }
      M[i][k] = P(fp);
    }
    prev = M[k][k];
  }
  auto d = M[N - 1][N - 1];
  return neg ? -d : d;
}

// divisor of the roots of a nonzero polynomial
template <class F>
ZeroCycleA1<F> roots_cycle(const Poly<F>& p) {
  ZeroCycleA1<F> z(p.field_ptr());
  for (auto& [g, e] : factor(p).factors) z.add(g, e);
  return z;
}

// div(f) = sum e_i [pi_i] for f = lc prod pi_i^{e_i}, f(0) = 1
template <class F>
ZeroCycleA1<F> div_witt(const Poly<F>& f) {
  if (!f.field().eq(f.coeff(0), f.field().one())) throw std::invalid_argument("div_witt needs f(0) = 1");
  return roots_cycle(f);
}
template <class F>
ZeroCycleA1<F> div_witt(const WittVector<F>& x) { return div_witt(x.series()); }

// [pi] -> pi(u)/pi(0); requires an effective cycle
template <class F>
Poly<F> witt_of_cycle(const ZeroCycleA1<F>& a) {
  a.require_off_zero();
  if (!a.is_effective()) throw std::invalid_argument("negative multiplicities give a rational function");
  auto fp = a.field_ptr();
  auto r = Poly<F>::one(fp);
  for (auto& [p, m] : a.terms()) r = r * pow(p.scale(fp->inv(p.coeff(0))), static_cast<unsigned long>(m));
  return r;
}

template <class F>
RatFunc<F> witt_of_cycle_rational(const ZeroCycleA1<F>& a) {
  a.require_off_zero();
  auto fp = a.field_ptr();
  auto num = Poly<F>::one(fp), den = Poly<F>::one(fp);
  for (auto& [p, m] : a.terms()) {
    auto q = pow(p.scale(fp->inv(p.coeff(0))), static_cast<unsigned long>(m < 0 ? -m : m));
    (m > 0 ? num : den) = (m > 0 ? num : den) * q;
  }
  return RatFunc<F>(num, den);
}

// W_m class of a cycle off 0 (negative multiplicities allowed)
template <class F>
WittVector<F> witt_class(const ZeroCycleA1<F>& a, int m) {
  a.require_off_zero();
  auto fp = a.field_ptr();
  auto r = WittVector<F>::zero(fp, m);
  for (auto& [p, k] : a.terms()) r = r + WittVector<F>::from_series(p.scale(fp->inv(p.coeff(0))), m).times(k);
  return r;
}

namespace detail {

// roots of the result: {alpha * beta}; Res_t(pi(t), t^{deg rho} rho(u/t))
template <class F>
Poly<F> composed_product(const Poly<F>& pi, const Poly<F>& rho) {
  auto fp = pi.field_ptr();
  int n = rho.degree();
  std::vector<Poly<F>> b(n + 1, Poly<F>(fp));
  for (int i = 0; i <= n; ++i) b[n - i] = Poly<F>::monomial(fp, rho.coeff(i), i);
  return resultant_t(pi, b).monic();
}

}  // namespace detail

// pushforward of a x b along mu(t,u) = tu
template <class F>
ZeroCycleA1<F> mult_convolution(const ZeroCycleA1<F>& a, const ZeroCycleA1<F>& b) {
  a.require_off_zero();
  b.require_off_zero();
  require_same(a.field_ptr(), b.field_ptr());
  ZeroCycleA1<F> r(a.field_ptr());
  for (auto& [p, m] : a.terms())
    for (auto& [q, n] : b.terms()) r = r + roots_cycle(detail::composed_product(p, q)).scaled(m * n);
  return r;
}

// rho^d: t -> t^d.  Res_t(pi(t), u - t^d) has roots alpha^d.
template <class F>
ZeroCycleA1<F> pushforward_power(const ZeroCycleA1<F>& a, int d) {
  if (d < 1) throw std::invalid_argument("power must be >= 1");
  auto fp = a.field_ptr();
  ZeroCycleA1<F> r(fp);
  for (auto& [p, m] : a.terms()) {
    std::vector<Poly<F>> b(d + 1, Poly<F>(fp));
    b[0] = Poly<F>::x(fp);
    b[d] = Poly<F>::constant(fp, fp->neg(fp->one()));
    r = r + roots_cycle(resultant_t(p, b).monic()).scaled(m);
  }
  return r;
}

template <class F>
ZeroCycleA1<F> pullback_power(const ZeroCycleA1<F>& a, int d) {
  if (d < 1) throw std::invalid_argument("power must be >= 1");
  auto fp = a.field_ptr();
  auto td = Poly<F>::monomial(fp, fp->one(), d);
  ZeroCycleA1<F> r(fp);
  for (auto& [p, m] : a.terms()) r = r + roots_cycle(p.compose(td)).scaled(m);
  return r;
}

// lambda: t -> 1/t
template <class F>
ZeroCycleA1<F> pullback_inversion(const ZeroCycleA1<F>& a) {
  a.require_off_zero();
  ZeroCycleA1<F> r(a.field_ptr());
  for (auto& [p, m] : a.terms()) r.add(p.reversed(p.degree()).monic(), m);
  return r;
}

// Finite self-map of P^1 extending u -> f(u): [U0:U1] -> [U0^d : U0^d f(U1/U0)], d = deg f >= 1.
template <class F>
struct PolyMapP1 {
  Poly<F> f;
  explicit PolyMapP1(Poly<F> g) : f(std::move(g)) {
    if (f.degree() < 1) throw std::invalid_argument("constant map");
  }
  int degree() const { return f.degree(); }
};

template <class F>
ZeroCycleA1<F> pushforward_polymap(const ZeroCycleA1<F>& a, const PolyMapP1<F>& F_) {
  auto fp = a.field_ptr();
  require_same(fp, F_.f.field_ptr());
  ZeroCycleA1<F> r(fp);
  for (auto& [p, m] : a.terms()) {
    // b(t) = u - f(t)
    std::vector<Poly<F>> b;
    for (int i = 0; i <= F_.f.degree(); ++i) b.push_back(Poly<F>::constant(fp, fp->neg(F_.f.coeff(i))));
    b[0] = b[0] + Poly<F>::x(fp);
    r = r + roots_cycle(resultant_t(p, b).monic()).scaled(m);
  }
  return r;
}

template <class F>
struct DivisorP1 {
  ZeroCycleA1<F> finite;
  long at_infinity = 0;
  long degree() const { return finite.degree() + at_infinity; }
};

// F^*{c}: divisor of f(u) - c; F^*{inf} = d {inf}
template <class F>
DivisorP1<F> fiber_divisor(const PolyMapP1<F>& F_, const std::optional<typename F::Elem>& c) {
  auto fp = F_.f.field_ptr();
  if (!c) {
    // ord_inf of 1/f is deg f
    return {ZeroCycleA1<F>(fp), -valuation(RatFunc<F>(F_.f), PlaceP1<F>::infinity())};
  }
  return {roots_cycle(F_.f - Poly<F>::constant(fp, *c)), 0};
}

// multiplicity of {u=0} in a cycle
template <class F>
long mult_at_zero(const ZeroCycleA1<F>& a) {
  auto it = a.terms().find(Poly<F>::x(a.field_ptr()));
  return it == a.terms().end() ? 0 : it->second;
}

}  // namespace chowmod
