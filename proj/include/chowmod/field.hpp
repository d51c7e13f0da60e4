#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace chowmod {

struct field_mismatch : std::invalid_argument {
  field_mismatch() : std::invalid_argument("field-descriptor mismatch") {}
};

struct division_by_zero : std::domain_error {
  division_by_zero() : std::domain_error("division by zero") {}
};

template <class F>
concept Field = requires(const F& f, const typename F::Elem& a, std::string_view s) {
  { f.zero() } -> std::same_as<typename F::Elem>;
  { f.one() } -> std::same_as<typename F::Elem>;
  { f.from_int(long{}) } -> std::same_as<typename F::Elem>;
  { f.add(a, a) } -> std::same_as<typename F::Elem>;
  { f.sub(a, a) } -> std::same_as<typename F::Elem>;
  { f.neg(a) } -> std::same_as<typename F::Elem>;
  { f.mul(a, a) } -> std::same_as<typename F::Elem>;
  { f.inv(a) } -> std::same_as<typename F::Elem>;
  { f.div(a, a) } -> std::same_as<typename F::Elem>;
  { f.is_zero(a) } -> std::same_as<bool>;
  { f.eq(a, a) } -> std::same_as<bool>;
  { f.compare(a, a) } -> std::same_as<int>;
  { f.format(a) } -> std::same_as<std::string>;
  { f.symbol(s) } -> std::same_as<std::optional<typename F::Elem>>;
  { f.characteristic() } -> std::same_as<unsigned long>;
  { f.describe() } -> std::same_as<std::string>;
};

// Q with canonical mpq_class values.
class Rationals {
 public:
  using Elem = mpq_class;

  static std::shared_ptr<const Rationals> instance();

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(long n) const { return n; }
  Elem from_mpz(const mpz_class& n) const { return mpq_class(n); }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inv(const Elem& a) const {
    if (a == 0) throw division_by_zero();
    return 1 / a;
  }
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
  bool is_zero(const Elem& a) const { return sgn(a) == 0; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  int compare(const Elem& a, const Elem& b) const {
    int c = cmp(a, b);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  std::string format(const Elem& a) const { return a.get_str(); }
  std::optional<Elem> symbol(std::string_view) const { return std::nullopt; }
  unsigned long characteristic() const { return 0; }
  std::string describe() const { return "Q"; }
  bool operator==(const Rationals&) const { return true; }
};

// F_{p^e}. Elements are packed base-p digit codes (digit i = coefficient of a^i).
// e = 1 uses direct modular arithmetic; e > 1 uses log/Zech tables.
class FiniteField {
 public:
  struct Elem {
    std::uint32_t v = 0;
    friend bool operator==(Elem, Elem) = default;
    friend auto operator<=>(Elem, Elem) = default;
  };

  static constexpr std::uint64_t kMaxSize = 1u << 22;

  static std::shared_ptr<const FiniteField> prime(std::uint32_t p);
  // Canonical F_{p^e}: the first primitive monic polynomial in code order.
  static std::shared_ptr<const FiniteField> canonical(std::uint32_t p, std::uint32_t e);
  // modulus: monic, low degree first, coefficients in [0,p).
  static std::shared_ptr<const FiniteField> with_modulus(std::uint32_t p,
                                                         std::vector<std::uint32_t> modulus,
                                                         std::string gen = "a");

  std::uint32_t p() const { return p_; }
  std::uint32_t degree() const { return e_; }
  std::uint64_t size() const { return q_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  const std::string& generator_name() const { return gen_; }

  Elem zero() const { return {0}; }
  Elem one() const { return {1}; }
  Elem from_int(long n) const;
  Elem from_mpz(const mpz_class& n) const;
  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, const mpz_class& n) const;
  Elem pow(Elem a, std::uint64_t n) const;
  bool is_zero(Elem a) const { return a.v == 0; }
  bool eq(Elem a, Elem b) const { return a.v == b.v; }
  int compare(Elem a, Elem b) const { return a.v < b.v ? -1 : (a.v > b.v ? 1 : 0); }
  std::string format(Elem a) const;
  std::optional<Elem> symbol(std::string_view s) const;
  unsigned long characteristic() const { return p_; }
  std::string describe() const;
  bool operator==(const FiniteField& o) const { return p_ == o.p_ && modulus_ == o.modulus_; }

  // digits(a)[i] = coefficient of gen^i
  std::vector<std::uint32_t> digits(Elem a) const;
  Elem from_digits(const std::vector<std::uint32_t>& d) const;
  Elem generator() const { return e_ == 1 ? Elem{prim_} : Elem{p_}; }
  // a fixed primitive element of the multiplicative group
  Elem primitive() const { return Elem{prim_}; }
  // code -> element, 0 <= code < size
  Elem element(std::uint64_t code) const { return Elem{static_cast<std::uint32_t>(code)}; }
  bool in_prime_field(Elem a) const { return a.v < p_; }

  FiniteField(std::uint32_t p, std::vector<std::uint32_t> modulus, std::string gen);

 private:
  std::uint32_t p_, e_;
  std::uint64_t q_;
  std::vector<std::uint32_t> modulus_;
  std::string gen_;
  std::uint32_t prim_ = 1;
  static constexpr std::uint32_t kNone = 0xffffffffu;
  std::vector<std::uint32_t> exp_, log_, zech_;
  std::vector<std::uint32_t> pw_;  // p^i
};

using FieldPtrQ = std::shared_ptr<const Rationals>;
using FieldPtrFq = std::shared_ptr<const FiniteField>;

template <class F>
inline bool same_field(const std::shared_ptr<const F>& a, const std::shared_ptr<const F>& b) {
  return a == b || (a && b && *a == *b);
}

template <class F>
inline void require_same(const std::shared_ptr<const F>& a, const std::shared_ptr<const F>& b) {
  if (!same_field(a, b)) throw field_mismatch();
}

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

}  // namespace chowmod
