#pragma once

#include <optional>

#include "chowmod/poly.hpp"

namespace chowmod {

// num/den with den monic and gcd(num, den) = 1.
template <class F>
struct RatFunc {
  Poly<F> num, den;

  RatFunc() = default;
  RatFunc(Poly<F> n, Poly<F> d) : num(std::move(n)), den(std::move(d)) { normalize(); }
  explicit RatFunc(Poly<F> n) : num(std::move(n)), den(Poly<F>::one(num.field_ptr())) {}

  static RatFunc raw(Poly<F> n, Poly<F> d) {
    RatFunc r;
    r.num = std::move(n);
    r.den = std::move(d);
    return r;
  }

  bool is_zero() const { return num.is_zero(); }
  bool is_polynomial() const { return den.degree() == 0; }
  bool is_constant() const { return den.degree() == 0 && num.degree() <= 0; }
  const std::shared_ptr<const F>& field_ptr() const { return num.field_ptr(); }
  // max(deg num, deg den)
  int height() const { return std::max(num.degree(), den.degree()); }

  void normalize() {
    if (den.is_zero()) throw division_by_zero();
    if (num.is_zero()) {
      den = Poly<F>::one(num.field_ptr());
      return;
    }
    if (den.degree() > 0) {
      auto g = gcd(num, den);
      if (g.degree() > 0) {
        num = num / g;
        den = den / g;
      }
    }
    if (!den.is_monic()) {
      auto li = den.field().inv(den.lc());
      num = num.scale(li);
      den = den.scale(li);
    }
  }

  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num == b.num && a.den == b.den; }

  std::string to_string(const std::string& var = "t") const {
    if (den.degree() == 0) return num.to_string(var);
    return "(" + num.to_string(var) + ")/(" + den.to_string(var) + ")";
  }
};

template <class F>
RatFunc<F> operator+(const RatFunc<F>& a, const RatFunc<F>& b) {
  if (a.den.degree() == 0 && b.den.degree() == 0) return RatFunc<F>::raw(a.num + b.num, a.den);
  if (a.den == b.den) return RatFunc<F>(a.num + b.num, a.den);
  return RatFunc<F>(a.num * b.den + b.num * a.den, a.den * b.den);
}
template <class F>
RatFunc<F> operator-(const RatFunc<F>& a) { return RatFunc<F>::raw(-a.num, a.den); }
template <class F>
RatFunc<F> operator-(const RatFunc<F>& a, const RatFunc<F>& b) { return a + (-b); }
template <class F>
RatFunc<F> operator*(const RatFunc<F>& a, const RatFunc<F>& b) {
  if (a.den.degree() == 0 && b.den.degree() == 0) return RatFunc<F>::raw(a.num * b.num, a.den);
  if (a.is_zero() || b.is_zero()) return RatFunc<F>(Poly<F>(a.num.field_ptr()));
  auto g1 = gcd(a.num, b.den), g2 = gcd(b.num, a.den);
  auto n = (a.num / g1) * (b.num / g2);
  auto d = (a.den / g2) * (b.den / g1);
  if (!d.is_monic()) return RatFunc<F>(n, d);
  return RatFunc<F>::raw(std::move(n), std::move(d));
}
template <class F>
RatFunc<F> inverse(const RatFunc<F>& a) {
  if (a.is_zero()) throw division_by_zero();
  auto li = a.num.field().inv(a.num.lc());
  return RatFunc<F>::raw(a.den.scale(li), a.num.scale(li));
}
template <class F>
RatFunc<F> operator/(const RatFunc<F>& a, const RatFunc<F>& b) {
  if (b.is_zero()) throw division_by_zero();
  if (a.den.degree() == 0 && b.den.degree() == 0 && b.num.degree() >= 0) {
    // exact polynomial division keeps everything polynomial
    auto [q, r] = divmod(a.num, b.num);
    if (r.is_zero()) return RatFunc<F>::raw(q, a.den);
  }
  return a * inverse(b);
}

// a(g(t)) for rational a, g
template <class F>
RatFunc<F> compose(const RatFunc<F>& a, const RatFunc<F>& g) {
  auto fp = a.field_ptr();
  auto horner = [&](const Poly<F>& p) {
    RatFunc<F> r{Poly<F>(fp)};
    for (std::size_t i = p.coeffs().size(); i-- > 0;) r = r * g + RatFunc<F>(Poly<F>::constant(fp, p.coeffs()[i]));
    return r;
  };
  return horner(a.num) / horner(a.den);
}

// value at a finite point, nullopt at a pole
template <class F>
std::optional<typename F::Elem> eval(const RatFunc<F>& a, const typename F::Elem& x) {
  const auto& f = a.num.field();
  auto d = a.den.eval(x);
  if (f.is_zero(d)) return std::nullopt;
  return f.div(a.num.eval(x), d);
}

// k(var) over a base field
template <class B>
class FunctionField {
 public:
  using Elem = RatFunc<B>;
  using BasePtr = std::shared_ptr<const B>;

  FunctionField(BasePtr base, std::string var) : base_(std::move(base)), var_(std::move(var)) {}

  const BasePtr& base_ptr() const { return base_; }
  const B& base() const { return *base_; }
  const std::string& var() const { return var_; }

  Elem constant(const typename B::Elem& c) const { return Elem(Poly<B>::constant(base_, c)); }
  Elem variable() const { return Elem(Poly<B>::x(base_)); }
  Elem zero() const { return Elem(Poly<B>(base_)); }
  Elem one() const { return constant(base_->one()); }
  Elem from_int(long n) const { return constant(base_->from_int(n)); }
  Elem from_mpz(const mpz_class& n) const { return constant(base_->from_mpz(n)); }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inv(const Elem& a) const { return inverse(a); }
  Elem div(const Elem& a, const Elem& b) const { return a / b; }
  bool is_zero(const Elem& a) const { return a.is_zero(); }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  int compare(const Elem& a, const Elem& b) const {
    int c = a.den.compare(b.den);
    return c ? c : a.num.compare(b.num);
  }
  std::string format(const Elem& a) const { return a.to_string(var_); }
  std::optional<Elem> symbol(std::string_view s) const {
    if (s == var_) return variable();
    if (auto c = base_->symbol(s)) return constant(*c);
    return std::nullopt;
  }
  unsigned long characteristic() const { return base_->characteristic(); }
  std::string describe() const { return base_->describe() + "(" + var_ + ")"; }
  bool operator==(const FunctionField& o) const { return var_ == o.var_ && *base_ == *o.base_; }

  // constant elements of the base
  std::optional<typename B::Elem> as_constant(const Elem& a) const {
    if (!a.is_constant()) return std::nullopt;
    return a.num.coeff(0);
  }

 private:
  BasePtr base_;
  std::string var_;
};

template <class B>
using FunctionFieldPtr = std::shared_ptr<const FunctionField<B>>;

// Lift a polynomial over B to constant coefficients in B(v).
template <class B>
Poly<FunctionField<B>> embed_constants(const Poly<B>& p, const FunctionFieldPtr<B>& K) {
  std::vector<RatFunc<B>> c;
  for (auto& x : p.coeffs()) c.push_back(K->constant(x));
  return Poly<FunctionField<B>>(K, std::move(c));
}

template <class F>
struct is_function_field : std::false_type {};
template <class B>
struct is_function_field<FunctionField<B>> : std::true_type {};

}  // namespace chowmod
