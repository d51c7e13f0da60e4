#pragma once

#include <cctype>
#include <variant>

#include "chowmod/factor.hpp"

namespace chowmod {

struct parse_error : std::invalid_argument {
  explicit parse_error(const std::string& w) : std::invalid_argument(w) {}
};

namespace detail {

// Recursive descent over any field-like domain D (D::symbol resolves identifiers).
template <class D>
class ExprParser {
 public:
  using Elem = typename D::Elem;
  ExprParser(const D& d, std::string_view s) : d_(d), s_(s) {}

  Elem run() {
    Elem r = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& m) const {
    throw parse_error("cannot parse '" + std::string(s_) + "': " + m);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) { ++i_; return true; }
    return false;
  }
  char peek() {
    skip();
    return i_ < s_.size() ? s_[i_] : '\0';
  }

  Elem expr() {
    Elem r = d_.zero();
    bool first = true;
    while (true) {
      bool neg = false;
      if (eat('+')) {
      } else if (eat('-')) {
        neg = true;
      } else if (!first) {
        break;
      }
      Elem t = term();
      r = neg ? d_.sub(r, t) : d_.add(r, t);
      first = false;
    }
    return r;
  }

  Elem term() {
    Elem r = unary();
    while (true) {
      char c = peek();
      if (c == '*') { ++i_; r = d_.mul(r, unary()); }
      else if (c == '/') {
        ++i_;
        Elem b = unary();
        if (d_.is_zero(b)) fail("division by zero");
        r = d_.div(r, b);
      } else if (c == '(' || std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        r = d_.mul(r, unary());
      } else break;
    }
    return r;
  }

  Elem unary() {
    if (eat('-')) return d_.neg(unary());
    if (eat('+')) return unary();
    return power();
  }

  Elem power() {
    Elem b = atom();
    if (eat('^')) {
      bool neg = eat('-');
      skip();
      std::size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (st == i_) fail("expected exponent");
      long e = std::stol(std::string(s_.substr(st, i_ - st)));
      if (neg) {
        if (d_.is_zero(b)) fail("division by zero");
        b = d_.inv(b);
      }
      Elem r = d_.one();
      while (e) {
        if (e & 1) r = d_.mul(r, b);
        e >>= 1;
        if (e) b = d_.mul(b, b);
      }
      return r;
    }
    return b;
  }

  Elem atom() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end");
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      Elem r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      return d_.from_mpz(mpz_class(std::string(s_.substr(st, i_ - st))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t st = i_;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
      auto name = s_.substr(st, i_ - st);
      auto v = d_.symbol(name);
      if (!v) fail("unknown symbol '" + std::string(name) + "'");
      return *v;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const D& d_;
  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace detail

template <class F>
typename F::Elem parse_elem(const F& f, std::string_view s) {
  return detail::ExprParser<F>(f, s).run();
}

// rational function in `var` with coefficients in f
template <class F>
RatFunc<F> parse_ratfunc(const std::shared_ptr<const F>& f, std::string_view s, const std::string& var = "t") {
  FunctionField<F> K(f, var);
  return detail::ExprParser<FunctionField<F>>(K, s).run();
}

template <class F>
Poly<F> parse_poly(const std::shared_ptr<const F>& f, std::string_view s, const std::string& var = "u") {
  auto r = parse_ratfunc(f, s, var);
  if (!r.is_polynomial()) throw parse_error("'" + std::string(s) + "' is not a polynomial");
  return r.num;
}

// "1,0,2" = 1 + 2u^2
template <class F>
Poly<F> parse_coeff_list(const std::shared_ptr<const F>& f, std::string_view s) {
  std::vector<typename F::Elem> c;
  std::size_t st = 0;
  int depth = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i < s.size() && s[i] == '(') ++depth;
    if (i < s.size() && s[i] == ')') --depth;
    if (i == s.size() || (s[i] == ',' && depth == 0)) {
      auto part = s.substr(st, i - st);
      if (part.find_first_not_of(" \t") == std::string_view::npos) throw parse_error("empty coefficient in '" + std::string(s) + "'");
      c.push_back(parse_elem(*f, part));
      st = i + 1;
    }
  }
  return Poly<F>(f, std::move(c));
}

template <class F>
std::string format_coeff_list(const Poly<F>& p, std::size_t min_len = 0) {
  std::string s;
  std::size_t n = std::max<std::size_t>(p.coeffs().size(), min_len);
  for (std::size_t i = 0; i < n; ++i) {
    if (i) s += ",";
    s += p.field().format(p.coeff(i));
  }
  return s.empty() ? "0" : s;
}

using AnyField = std::variant<FieldPtrQ, FieldPtrFq, FunctionFieldPtr<Rationals>, FunctionFieldPtr<FiniteField>>;

// `Q`, `F2`, `F9`, `F9=F3[x]/(x^2+1)`, `Q(v)`, `F3(v)`
AnyField parse_field(std::string_view s);
std::string describe(const AnyField& f);

}  // namespace chowmod
