#pragma once

#include <numeric>

#include "chowmod/poly.hpp"

namespace chowmod {

struct truncation_mismatch : std::invalid_argument {
  truncation_mismatch() : std::invalid_argument("truncation mismatch") {}
};

// Class of 1 + c_1 u + ... + c_m u^m in (1 + u k[u]) / (1 + u^{m+1} k[u]).
// The group law is series multiplication, so the additive identity is the series 1
// and the ring unit is 1 - u.
template <class F>
class WittVector {
 public:
  using Elem = typename F::Elem;
  using FieldPtr = std::shared_ptr<const F>;

  WittVector() = default;
  WittVector(FieldPtr f, std::vector<Elem> c) : f_(std::move(f)), c_(std::move(c)) {
    if (c_.empty()) throw std::invalid_argument("truncation must be positive");
  }

  static WittVector zero(FieldPtr f, int m) { return WittVector(f, std::vector<Elem>(check_m(m), f->zero())); }
  static WittVector one(FieldPtr f, int m) {
    auto r = zero(f, m);
    r.c_[0] = f->neg(f->one());
    return r;
  }
  // 1 - a u^n, the generator written [a]_n
  static WittVector generator(FieldPtr f, int m, const Elem& a, int n) {
    auto r = zero(f, m);
    if (n >= 1 && n <= m) r.c_[n - 1] = f->neg(a);
    return r;
  }
  // 1 - a u
  static WittVector teichmuller(FieldPtr f, int m, const Elem& a) { return generator(f, m, a, 1); }
  // series with constant term 1, truncated
  static WittVector from_series(const Poly<F>& s, int m) {
    const auto& f = s.field();
    if (!f.eq(s.coeff(0), f.one())) throw std::invalid_argument("series must have constant term 1");
    std::vector<Elem> c;
    for (int i = 1, n = static_cast<int>(check_m(m)); i <= n; ++i) c.push_back(s.coeff(i));
    return WittVector(s.field_ptr(), std::move(c));
  }

  const F& field() const { return *f_; }
  const FieldPtr& field_ptr() const { return f_; }
  int m() const { return static_cast<int>(c_.size()); }
  const std::vector<Elem>& coeffs() const { return c_; }
  const Elem& coeff(int n) const { return c_[n - 1]; }  // 1-based
  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [&](const Elem& x) { return f_->is_zero(x); });
  }

  Poly<F> series() const {
    std::vector<Elem> s{f_->one()};
    s.insert(s.end(), c_.begin(), c_.end());
    return Poly<F>(f_, std::move(s));
  }

  // quotient map W_m -> W_k, k <= m
  WittVector truncate(int k) const {
    if (k < 1 || k > m()) throw std::invalid_argument("truncate: need 1 <= k <= m");
    return WittVector(f_, std::vector<Elem>(c_.begin(), c_.begin() + k));
  }
  // set-theoretic lift W_m -> W_k (k >= m) by zero padding; truncate(m) undoes it
  WittVector raise(int k) const {
    if (k < m()) throw std::invalid_argument("raise: need k >= m");
    auto c = c_;
    c.resize(k, f_->zero());
    return WittVector(f_, std::move(c));
  }

  friend bool operator==(const WittVector& a, const WittVector& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      if (!a.f_->eq(a.c_[i], b.c_[i])) return false;
    return true;
  }

  friend WittVector operator+(const WittVector& a, const WittVector& b) {
    a.check(b);
    return WittVector(a.f_, mul_trunc(*a.f_, a.c_, b.c_));
  }
  WittVector operator-() const { return WittVector(f_, inv_trunc(*f_, c_)); }
  friend WittVector operator-(const WittVector& a, const WittVector& b) { return a + (-b); }

  // n * x = x^n as a series
  WittVector times(long n) const {
    WittVector base = n < 0 ? -*this : *this;
    unsigned long k = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
    auto r = zero(f_, m());
    while (k) {
      if (k & 1) r = r + base;
      k >>= 1;
      if (k) base = base + base;
    }
    return r;
  }
  WittVector times(const mpz_class& n) const {
    if (n.fits_slong_p()) return times(n.get_si());
    WittVector base = n < 0 ? -*this : *this;
    mpz_class k = abs(n);
    auto r = zero(f_, m());
    while (k > 0) {
      if (mpz_odd_p(k.get_mpz_t())) r = r + base;
      k >>= 1;
      if (k > 0) base = base + base;
    }
    return r;
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) s += (i ? "," : "") + f_->format(c_[i]);
    return s;
  }

  void check(const WittVector& b) const {
    require_same(f_, b.f_);
    if (c_.size() != b.c_.size()) throw truncation_mismatch();
  }

  // (1 + sum a_i u^i)(1 + sum b_i u^i) mod u^{m+1}, constant terms implicit
  static std::vector<Elem> mul_trunc(const F& f, const std::vector<Elem>& a, const std::vector<Elem>& b) {
    std::size_t m = a.size();
    std::vector<Elem> r(m);
    for (std::size_t n = 1; n <= m; ++n) {
      Elem s = f.add(a[n - 1], b[n - 1]);
      for (std::size_t i = 1; i < n; ++i)
        if (!f.is_zero(a[i - 1])) s = f.add(s, f.mul(a[i - 1], b[n - i - 1]));
      r[n - 1] = s;
    }
    return r;
  }
  // series inverse: r_n = -(a_n + sum_{i<n} a_i r_{n-i})
  static std::vector<Elem> inv_trunc(const F& f, const std::vector<Elem>& a) {
    std::size_t m = a.size();
    std::vector<Elem> r(m);
    for (std::size_t n = 1; n <= m; ++n) {
      Elem s = a[n - 1];
      for (std::size_t i = 1; i < n; ++i) s = f.add(s, f.mul(a[i - 1], r[n - i - 1]));
      r[n - 1] = f.neg(s);
    }
    return r;
  }

 private:
  static std::size_t check_m(int m) {
    if (m < 1) throw std::invalid_argument("truncation must be positive");
    return static_cast<std::size_t>(m);
  }

  FieldPtr f_;
  std::vector<Elem> c_;
};

// gh_n with -u f'/f = sum gh_n u^n, via gh_n = -n c_n - sum_{i<n} c_i gh_{n-i}
template <class F>
std::vector<typename F::Elem> ghost(const WittVector<F>& x) {
  const F& f = x.field();
  int m = x.m();
  std::vector<typename F::Elem> gh(m);
  for (int n = 1; n <= m; ++n) {
    auto s = f.neg(f.mul(f.from_int(n), x.coeff(n)));
    for (int i = 1; i < n; ++i) s = f.sub(s, f.mul(x.coeff(i), gh[n - i - 1]));
    gh[n - 1] = s;
  }
  return gh;
}

template <class F>
void require_char0(const F& f, const char* what) {
  if (f.characteristic() != 0) throw std::domain_error(std::string(what) + " needs characteristic 0");
}

// inverse of ghost over a field of characteristic 0 (triangular solve)
template <class F>
WittVector<F> from_ghost(const std::shared_ptr<const F>& fp, const std::vector<typename F::Elem>& gh) {
  const F& f = *fp;
  require_char0(f, "from_ghost");
  int m = static_cast<int>(gh.size());
  std::vector<typename F::Elem> c(m);
  for (int n = 1; n <= m; ++n) {
    auto s = gh[n - 1];
    for (int i = 1; i < n; ++i) s = f.add(s, f.mul(c[i - 1], gh[n - i - 1]));
    c[n - 1] = f.neg(f.div(s, f.from_int(n)));
  }
  return WittVector<F>(fp, std::move(c));
}

template <class F>
WittVector<F> star_ghost(const WittVector<F>& x, const WittVector<F>& y) {
  x.check(y);
  const F& f = x.field();
  require_char0(f, "star_ghost");
  auto gx = ghost(x), gy = ghost(y);
  for (std::size_t i = 0; i < gx.size(); ++i) gx[i] = f.mul(gx[i], gy[i]);
  return from_ghost(x.field_ptr(), gx);
}

// a_n with x = prod_{n=1}^m (1 - a_n u^n) mod u^{m+1}
template <class F>
std::vector<typename F::Elem> to_generators(const WittVector<F>& x) {
  const F& f = x.field();
  int m = x.m();
  auto cur = x.coeffs();
  std::vector<typename F::Elem> a(m, f.zero());
  for (int n = 1; n <= m; ++n) {
    a[n - 1] = f.neg(cur[n - 1]);
    if (f.is_zero(a[n - 1])) continue;
    // divide by (1 - a u^n): cur_k += a * cur_{k-n}, ascending k
    for (int k = n; k <= m; ++k) {
      auto prev = k == n ? f.one() : cur[k - n - 1];
      cur[k - 1] = f.add(cur[k - 1], f.mul(a[n - 1], prev));
    }
  }
  return a;
}

template <class F>
WittVector<F> from_generators(const std::shared_ptr<const F>& fp, const std::vector<typename F::Elem>& a) {
  int m = static_cast<int>(a.size());
  auto r = WittVector<F>::zero(fp, m);
  for (int n = 1; n <= m; ++n)
    if (!fp->is_zero(a[n - 1])) r = r + WittVector<F>::generator(fp, m, a[n - 1], n);
  return r;
}

// (1 - a u^i) * (1 - b u^j) = (1 - a^{j/d} b^{i/d} u^{ij/d})^d, d = gcd(i,j), applied bilinearly
template <class F>
WittVector<F> star_generators(const WittVector<F>& x, const WittVector<F>& y) {
  x.check(y);
  const F& f = x.field();
  auto fp = x.field_ptr();
  int m = x.m();
  auto a = to_generators(x), b = to_generators(y);
  auto r = WittVector<F>::zero(fp, m);
  for (int i = 1; i <= m; ++i) {
    if (f.is_zero(a[i - 1])) continue;
    for (int j = 1; j <= m; ++j) {
      if (f.is_zero(b[j - 1])) continue;
      int d = std::gcd(i, j);
      long n = static_cast<long>(i) / d * j;
      if (n > m) continue;  // lies in 1 + u^{m+1} k[u]
      auto c = f.mul(field_pow(f, a[i - 1], j / d), field_pow(f, b[j - 1], i / d));
      r = r + WittVector<F>::generator(fp, m, c, static_cast<int>(n)).times(d);
    }
  }
  return r;
}

// any field: generator algorithm; characteristic 0 may also use star_ghost
template <class F>
WittVector<F> star(const WittVector<F>& x, const WittVector<F>& y) {
  return star_generators(x, y);
}

// smallest p-power N with N x = 0; x over a finite field of characteristic p
template <class F>
mpz_class additive_order(const WittVector<F>& x) {
  unsigned long p = x.field().characteristic();
  if (p == 0) throw std::domain_error("additive_order needs positive characteristic");
  mpz_class n = 1;
  auto y = x;
  while (!y.is_zero()) {
    y = y.times(static_cast<long>(p));
    n *= p;
  }
  return n;
}

}  // namespace chowmod
