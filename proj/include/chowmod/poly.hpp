#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "chowmod/field.hpp"

namespace chowmod {

// Dense univariate polynomial, lowest degree first, trailing zeros stripped.
template <class F>
class Poly {
 public:
  using Elem = typename F::Elem;
  using FieldPtr = std::shared_ptr<const F>;

  Poly() = default;
  explicit Poly(FieldPtr f) : f_(std::move(f)) {}
  Poly(FieldPtr f, std::vector<Elem> c) : f_(std::move(f)), c_(std::move(c)) { trim(); }

  static Poly constant(FieldPtr f, const Elem& a) { return Poly(f, std::vector<Elem>{a}); }
  static Poly one(FieldPtr f) { return constant(f, f->one()); }
  static Poly monomial(FieldPtr f, const Elem& a, std::size_t k) {
    std::vector<Elem> c(k + 1, f->zero());
    c[k] = a;
    return Poly(f, std::move(c));
  }
  static Poly x(FieldPtr f) { return monomial(f, f->one(), 1); }
  // x - a
  static Poly linear(FieldPtr f, const Elem& a) { return Poly(f, {f->neg(a), f->one()}); }

  const F& field() const { return *f_; }
  const FieldPtr& field_ptr() const { return f_; }
  const std::vector<Elem>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : f_->zero(); }
  const Elem& lc() const { return c_.back(); }
  bool is_monic() const { return !c_.empty() && f_->eq(c_.back(), f_->one()); }

  Poly monic() const {
    if (c_.empty()) return *this;
    Elem li = f_->inv(lc());
    return scale(li);
  }

  Poly scale(const Elem& a) const {
    std::vector<Elem> r;
    r.reserve(c_.size());
    for (auto& x : c_) r.push_back(f_->mul(x, a));
    return Poly(f_, std::move(r));
  }

  Poly operator-() const {
    std::vector<Elem> r;
    r.reserve(c_.size());
    for (auto& x : c_) r.push_back(f_->neg(x));
    return Poly(f_, std::move(r));
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    require_same(a.f_, b.f_);
    const auto& F_ = *a.f_;
    std::vector<Elem> r(std::max(a.c_.size(), b.c_.size()), F_.zero());
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i < a.c_.size() && i < b.c_.size()) r[i] = F_.add(a.c_[i], b.c_[i]);
      else if (i < a.c_.size()) r[i] = a.c_[i];
      else r[i] = b.c_[i];
    }
    return Poly(a.f_, std::move(r));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    require_same(a.f_, b.f_);
    if (a.c_.empty() || b.c_.empty()) return Poly(a.f_);
    const auto& F_ = *a.f_;
    std::vector<Elem> r(a.c_.size() + b.c_.size() - 1, F_.zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (F_.is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = F_.add(r[i + j], F_.mul(a.c_[i], b.c_[j]));
    }
    return Poly(a.f_, std::move(r));
  }
  Poly& operator+=(const Poly& b) { return *this = *this + b; }
  Poly& operator-=(const Poly& b) { return *this = *this - b; }
  Poly& operator*=(const Poly& b) { return *this = *this * b; }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      if (!a.f_->eq(a.c_[i], b.c_[i])) return false;
    return true;
  }

  // degree first, then coefficients from the top
  int compare(const Poly& b) const {
    if (c_.size() != b.c_.size()) return c_.size() < b.c_.size() ? -1 : 1;
    for (std::size_t i = c_.size(); i-- > 0;) {
      int c = f_->compare(c_[i], b.c_[i]);
      if (c) return c;
    }
    return 0;
  }

  Elem eval(const Elem& x) const {
    Elem r = f_->zero();
    for (std::size_t i = c_.size(); i-- > 0;) r = f_->add(f_->mul(r, x), c_[i]);
    return r;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly(f_);
    std::vector<Elem> r(c_.size() - 1, f_->zero());
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = f_->mul(f_->from_int(static_cast<long>(i)), c_[i]);
    return Poly(f_, std::move(r));
  }

  // this(g(x))
  Poly compose(const Poly& g) const {
    Poly r(f_);
    for (std::size_t i = c_.size(); i-- > 0;) r = r * g + constant(f_, c_[i]);
    return r;
  }

  // x^deg * p(1/x) for the given nominal degree
  Poly reversed(std::size_t nominal) const {
    std::vector<Elem> r(nominal + 1, f_->zero());
    for (std::size_t i = 0; i < c_.size() && i <= nominal; ++i) r[nominal - i] = c_[i];
    return Poly(f_, std::move(r));
  }

  // number of factors x dividing this
  std::size_t low_order() const {
    std::size_t k = 0;
    while (k < c_.size() && f_->is_zero(c_[k])) ++k;
    return k;
  }
  Poly shift_down(std::size_t k) const {
    if (k >= c_.size()) return Poly(f_);
    return Poly(f_, std::vector<Elem>(c_.begin() + k, c_.end()));
  }

  std::string to_string(const std::string& var = "u") const;

 private:
  void trim() {
    while (!c_.empty() && f_->is_zero(c_.back())) c_.pop_back();
  }

  FieldPtr f_;
  std::vector<Elem> c_;
};

template <class F>
struct PolyLess {
  bool operator()(const Poly<F>& a, const Poly<F>& b) const { return a.compare(b) < 0; }
};

namespace detail {
inline bool needs_parens(const std::string& s) {
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i] == '+' || s[i] == '-' || s[i] == '/' || s[i] == '*') return true;
  return false;
}
}  // namespace detail

template <class F>
std::string Poly<F>::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string s;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (f_->is_zero(c_[i])) continue;
    std::string c = f_->format(c_[i]);
    bool neg = false;
    if (!c.empty() && c[0] == '-' && !detail::needs_parens(c)) {
      neg = true;
      c = c.substr(1);
    }
    if (!s.empty()) s += neg ? "-" : "+";
    else if (neg) s += "-";
    if (i == 0) {
      s += detail::needs_parens(c) ? "(" + c + ")" : c;
      continue;
    }
    if (c != "1") s += (detail::needs_parens(c) ? "(" + c + ")" : c) + "*";
    s += var;
    if (i > 1) s += "^" + std::to_string(i);
  }
  return s;
}

template <class F>
std::pair<Poly<F>, Poly<F>> divmod(const Poly<F>& a, const Poly<F>& b) {
  require_same(a.field_ptr(), b.field_ptr());
  if (b.is_zero()) throw division_by_zero();
  const auto& F_ = a.field();
  auto fp = a.field_ptr();
  if (a.degree() < b.degree()) return {Poly<F>(fp), a};
  std::vector<typename F::Elem> r = a.coeffs();
  std::vector<typename F::Elem> q(a.degree() - b.degree() + 1, F_.zero());
  auto li = F_.inv(b.lc());
  const auto& bc = b.coeffs();
  bool unit = F_.eq(li, F_.one());
  for (int k = a.degree() - b.degree(); k >= 0; --k) {
    auto& top = r[k + b.degree()];
    if (F_.is_zero(top)) continue;
    auto c = unit ? top : F_.mul(top, li);
    q[k] = c;
    for (int i = 0; i <= b.degree(); ++i) r[k + i] = F_.sub(r[k + i], F_.mul(c, bc[i]));
  }
  r.resize(b.degree());
  return {Poly<F>(fp, std::move(q)), Poly<F>(fp, std::move(r))};
}

template <class F>
Poly<F> operator%(const Poly<F>& a, const Poly<F>& b) { return divmod(a, b).second; }
template <class F>
Poly<F> operator/(const Poly<F>& a, const Poly<F>& b) { return divmod(a, b).first; }

template <class F>
bool divides(const Poly<F>& d, const Poly<F>& a) {
  return (a % d).is_zero();
}

// monic gcd (zero if both zero)
template <class F>
Poly<F> gcd(Poly<F> a, Poly<F> b) {
  while (!b.is_zero()) {
    auto r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// returns (g, s, t) with s a + t b = g monic
template <class F>
std::tuple<Poly<F>, Poly<F>, Poly<F>> xgcd(const Poly<F>& a, const Poly<F>& b) {
  auto fp = a.field_ptr();
  Poly<F> r0 = a, r1 = b, s0 = Poly<F>::one(fp), s1(fp), t0(fp), t1 = Poly<F>::one(fp);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1); r1 = std::move(r);
    auto s2 = s0 - q * s1; s0 = std::move(s1); s1 = std::move(s2);
    auto t2 = t0 - q * t1; t0 = std::move(t1); t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  auto li = fp->inv(r0.lc());
  return {r0.scale(li), s0.scale(li), t0.scale(li)};
}

// inverse of a modulo m
template <class F>
Poly<F> inv_mod(const Poly<F>& a, const Poly<F>& m) {
  auto [g, s, t] = xgcd(a % m, m);
  if (g.degree() != 0) throw division_by_zero();
  return s % m;
}

template <class F>
Poly<F> mul_mod(const Poly<F>& a, const Poly<F>& b, const Poly<F>& m) { return (a * b) % m; }

template <class F>
Poly<F> pow_mod(Poly<F> a, mpz_class n, const Poly<F>& m) {
  Poly<F> r = Poly<F>::one(a.field_ptr()) % m;
  a = a % m;
  while (n > 0) {
    if (mpz_odd_p(n.get_mpz_t())) r = mul_mod(r, a, m);
    n >>= 1;
    if (n > 0) a = mul_mod(a, a, m);
  }
  return r;
}

template <class F>
Poly<F> pow(Poly<F> a, unsigned long n) {
  Poly<F> r = Poly<F>::one(a.field_ptr());
  while (n) {
    if (n & 1) r = r * a;
    n >>= 1;
    if (n) a = a * a;
  }
  return r;
}

template <class F>
typename F::Elem field_pow(const F& f, typename F::Elem a, long n) {
  if (n < 0) { a = f.inv(a); n = -n; }
  auto r = f.one();
  while (n) {
    if (n & 1) r = f.mul(r, a);
    n >>= 1;
    if (n) a = f.mul(a, a);
  }
  return r;
}

// Res(p,q) = lc(p)^{deg q} prod q(roots of p), by the Euclidean remainder sequence.
template <class F>
typename F::Elem resultant(Poly<F> p, Poly<F> q) {
  require_same(p.field_ptr(), q.field_ptr());
  const F& f = p.field();
  if (p.is_zero() && q.is_zero()) throw std::invalid_argument("resultant of two zero polynomials");
  if (p.is_zero() || q.is_zero()) {
    const auto& nz = p.is_zero() ? q : p;
    return nz.degree() == 0 ? f.one() : f.zero();
  }
  auto acc = f.one();
  while (true) {
    int m = p.degree(), n = q.degree();
    if (m == 0) return f.mul(acc, field_pow(f, p.lc(), n));
    if (n == 0) return f.mul(acc, field_pow(f, q.lc(), m));
    // Res(p,q) = (-1)^{mn} Res(q,p);  Res(q,p) = lc(q)^{m - deg r} Res(q, r) with r = p mod q
    auto r = p % q;
    if ((m % 2) && (n % 2)) acc = f.neg(acc);
    if (r.is_zero()) return f.zero();
    acc = f.mul(acc, field_pow(f, q.lc(), m - r.degree()));
    p = std::move(q);
    q = std::move(r);
  }
}

template <class F>
Poly<F> lift_constant(const std::shared_ptr<const F>& f, long c) {
  return Poly<F>::constant(f, f->from_int(c));
}

}  // namespace chowmod
