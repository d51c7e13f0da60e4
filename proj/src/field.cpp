#include "chowmod/field.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace chowmod {

std::shared_ptr<const Rationals> Rationals::instance() {
  static const auto q = std::make_shared<const Rationals>();
  return q;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

namespace {

// Dense polynomials over Z/p on plain vectors, low degree first. Only used to
// build the tables; the public polynomial type sits on top of FiniteField.
using Vec = std::vector<std::uint32_t>;

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = a;
  while (nr) {
    std::int64_t q = r / nr;
    t -= q * nt; std::swap(t, nt);
    r -= q * nr; std::swap(r, nr);
  }
  if (r != 1) throw division_by_zero();
  return static_cast<std::uint32_t>((t % p + p) % p);
}

void trim(Vec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Vec rem(Vec a, const Vec& m, std::uint32_t p) {
  trim(a);
  std::uint64_t li = inv_mod(m.back(), p);
  while (a.size() >= m.size()) {
    std::uint64_t c = a.back() * li % p;
    std::size_t s = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i)
      a[s + i] = static_cast<std::uint32_t>((a[s + i] + (p - c) * m[i]) % p);
    trim(a);
  }
  return a;
}

Vec mulmod(const Vec& a, const Vec& b, const Vec& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Vec r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t(a[i]) * b[j]) % p);
  return rem(std::move(r), m, p);
}

Vec powmod(Vec a, mpz_class n, const Vec& m, std::uint32_t p) {
  Vec r{1};
  r = rem(r, m, p);
  a = rem(a, m, p);
  while (n > 0) {
    if (mpz_odd_p(n.get_mpz_t())) r = mulmod(r, a, m, p);
    n >>= 1;
    if (n > 0) a = mulmod(a, a, m, p);
  }
  return r;
}

Vec sub(Vec a, const Vec& b, std::uint32_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

Vec gcd(Vec a, Vec b, std::uint32_t p) {
  trim(a); trim(b);
  while (!b.empty()) {
    a = rem(std::move(a), b, p);
    std::swap(a, b);
  }
  return a;
}

// Rabin's test
bool irreducible(const Vec& f, std::uint32_t p) {
  std::size_t n = f.size() - 1;
  if (n == 0) return false;
  if (n == 1) return true;
  mpz_class q = p;
  Vec x{0, 1};
  auto xpow = [&](std::size_t k) {
    mpz_class e;
    mpz_pow_ui(e.get_mpz_t(), q.get_mpz_t(), k);
    return powmod(x, e, f, p);
  };
  if (!sub(xpow(n), rem(x, f, p), p).empty()) return false;
  for (auto r : prime_factors(n)) {
    Vec g = gcd(f, sub(xpow(n / r), rem(x, f, p), p), p);
    if (g.size() > 1) return false;
  }
  return true;
}

bool has_order(const Vec& g, std::uint64_t order, const Vec& m, std::uint32_t p) {
  for (auto r : prime_factors(order)) {
    Vec t = powmod(g, mpz_class(std::to_string(order / r)), m, p);
    if (t.size() == 1 && t[0] == 1) return false;
  }
  return true;
}

Vec code_to_vec(std::uint64_t c, std::uint32_t p) {
  Vec v;
  while (c) { v.push_back(static_cast<std::uint32_t>(c % p)); c /= p; }
  return v;
}

}  // namespace

FiniteField::FiniteField(std::uint32_t p, std::vector<std::uint32_t> modulus, std::string gen)
    : p_(p), modulus_(std::move(modulus)), gen_(std::move(gen)) {
  if (!is_prime(p)) throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
  trim(modulus_);
  if (modulus_.size() < 2) throw std::invalid_argument("modulus must have degree >= 1");
  for (auto c : modulus_)
    if (c >= p) throw std::invalid_argument("modulus coefficient out of range");
  if (modulus_.back() != 1) throw std::invalid_argument("modulus must be monic");
  e_ = static_cast<std::uint32_t>(modulus_.size() - 1);
  q_ = 1;
  for (std::uint32_t i = 0; i < e_; ++i) {
    pw_.push_back(static_cast<std::uint32_t>(q_));
    q_ *= p;
    if (q_ > kMaxSize && e_ > 1) throw std::invalid_argument("field too large for table arithmetic");
  }
  if (e_ == 1) {
    if (modulus_[0] != 0) throw std::invalid_argument("prime field modulus must be x");
    for (std::uint32_t g = 1; g < p; ++g)
      if (p == 2 || has_order(Vec{g}, p - 1, Vec{0, 1}, p)) { prim_ = g; break; }
    return;
  }
  if (!irreducible(modulus_, p)) throw std::invalid_argument("reducible modulus");
  std::uint64_t n = q_ - 1;
  for (std::uint64_t c = p; c < q_; ++c)
    if (has_order(code_to_vec(c, p), n, modulus_, p)) { prim_ = static_cast<std::uint32_t>(c); break; }
  exp_.assign(n, 0);
  log_.assign(q_, kNone);
  zech_.assign(n, kNone);
  Vec g = code_to_vec(prim_, p), cur{1};
  for (std::uint64_t i = 0; i < n; ++i) {
    std::uint64_t code = 0;
    for (std::size_t k = cur.size(); k-- > 0;) code = code * p + cur[k];
    exp_[i] = static_cast<std::uint32_t>(code);
    log_[code] = static_cast<std::uint32_t>(i);
    cur = mulmod(cur, g, modulus_, p);
  }
  for (std::uint64_t i = 0; i < n; ++i) {
    std::uint32_t c = exp_[i];
    std::uint32_t d0 = c % p;
    std::uint32_t c1 = c - d0 + (d0 + 1) % p;
    zech_[i] = c1 == 0 ? kNone : log_[c1];
  }
}

namespace {
std::mutex g_cache_mutex;
std::map<std::pair<std::uint32_t, std::uint32_t>, std::shared_ptr<const FiniteField>> g_cache;
}  // namespace

std::shared_ptr<const FiniteField> FiniteField::prime(std::uint32_t p) { return canonical(p, 1); }

std::shared_ptr<const FiniteField> FiniteField::canonical(std::uint32_t p, std::uint32_t e) {
  if (e == 0) throw std::invalid_argument("extension degree must be >= 1");
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  auto key = std::make_pair(p, e);
  if (auto it = g_cache.find(key); it != g_cache.end()) return it->second;
  std::shared_ptr<const FiniteField> f;
  if (e == 1) {
    f = std::make_shared<const FiniteField>(p, Vec{0, 1}, "a");
  } else {
    if (!is_prime(p)) throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
      q *= p;
      if (q > kMaxSize) throw std::invalid_argument("field too large for table arithmetic");
    }
    std::uint64_t pe = q;
    Vec found;
    for (std::uint64_t c = 1; c < pe && found.empty(); ++c) {
      Vec m = code_to_vec(c, p);
      m.resize(e, 0);
      m.push_back(1);
      if (irreducible(m, p) && has_order(Vec{0, 1}, q - 1, m, p)) found = m;
    }
    f = std::make_shared<const FiniteField>(p, found, "a");
  }
  g_cache.emplace(key, f);
  return f;
}

std::shared_ptr<const FiniteField> FiniteField::with_modulus(std::uint32_t p, std::vector<std::uint32_t> modulus,
                                                             std::string gen) {
  return std::make_shared<const FiniteField>(p, std::move(modulus), std::move(gen));
}

FiniteField::Elem FiniteField::from_int(long n) const {
  long r = n % static_cast<long>(p_);
  if (r < 0) r += p_;
  return {static_cast<std::uint32_t>(r)};
}

FiniteField::Elem FiniteField::from_mpz(const mpz_class& n) const {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), n.get_mpz_t(), p_);
  return {static_cast<std::uint32_t>(r.get_ui())};
}

FiniteField::Elem FiniteField::add(Elem a, Elem b) const {
  if (e_ == 1) {
    std::uint32_t s = a.v + b.v;
    return {s >= p_ ? s - p_ : s};
  }
  if (p_ == 2) return {a.v ^ b.v};
  if (a.v == 0) return b;
  if (b.v == 0) return a;
  std::uint64_t n = q_ - 1;
  std::uint32_t la = log_[a.v], lb = log_[b.v];
  std::uint32_t k = lb >= la ? lb - la : static_cast<std::uint32_t>(lb + n - la);
  std::uint32_t z = zech_[k];
  if (z == kNone) return {0};
  return {exp_[(la + static_cast<std::uint64_t>(z)) % n]};
}

FiniteField::Elem FiniteField::neg(Elem a) const {
  if (a.v == 0) return a;
  if (e_ == 1) return {p_ - a.v};
  if (p_ == 2) return a;
  std::uint64_t n = q_ - 1;
  return {exp_[(log_[a.v] + n / 2) % n]};
}

FiniteField::Elem FiniteField::mul(Elem a, Elem b) const {
  if (e_ == 1) return {static_cast<std::uint32_t>(std::uint64_t(a.v) * b.v % p_)};
  if (a.v == 0 || b.v == 0) return {0};
  std::uint64_t n = q_ - 1;
  return {exp_[(std::uint64_t(log_[a.v]) + log_[b.v]) % n]};
}

FiniteField::Elem FiniteField::inv(Elem a) const {
  if (a.v == 0) throw division_by_zero();
  if (e_ == 1) return {inv_mod(a.v, p_)};
  std::uint64_t n = q_ - 1;
  return {exp_[(n - log_[a.v]) % n]};
}

FiniteField::Elem FiniteField::pow(Elem a, std::uint64_t n) const {
  Elem r = one();
  while (n) {
    if (n & 1) r = mul(r, a);
    n >>= 1;
    if (n) a = mul(a, a);
  }
  return r;
}

FiniteField::Elem FiniteField::pow(Elem a, const mpz_class& n) const {
  if (n < 0) return pow(inv(a), mpz_class(-n));
  if (a.v == 0) return n == 0 ? one() : zero();
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(q_ - 1));
  return pow(a, static_cast<std::uint64_t>(r.get_ui()));
}

std::vector<std::uint32_t> FiniteField::digits(Elem a) const {
  std::vector<std::uint32_t> d(e_, 0);
  std::uint32_t c = a.v;
  for (std::uint32_t i = 0; i < e_; ++i) { d[i] = c % p_; c /= p_; }
  return d;
}

FiniteField::Elem FiniteField::from_digits(const std::vector<std::uint32_t>& d) const {
  std::uint64_t c = 0;
  for (std::size_t k = std::min<std::size_t>(d.size(), e_); k-- > 0;) c = c * p_ + d[k] % p_;
  return {static_cast<std::uint32_t>(c)};
}

std::string FiniteField::format(Elem a) const {
  if (e_ == 1) return std::to_string(a.v);
  auto d = digits(a);
  std::string s;
  for (std::size_t i = d.size(); i-- > 0;) {
    if (!d[i]) continue;
    if (!s.empty()) s += "+";
    if (i == 0) { s += std::to_string(d[i]); continue; }
    if (d[i] != 1) s += std::to_string(d[i]) + "*";
    s += gen_;
    if (i > 1) s += "^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

std::optional<FiniteField::Elem> FiniteField::symbol(std::string_view s) const {
  if (e_ > 1 && s == gen_) return Elem{p_};
  return std::nullopt;
}

std::string FiniteField::describe() const {
  if (e_ == 1) return "F" + std::to_string(p_);
  std::ostringstream os;
  os << "F" << q_ << "=F" << p_ << "[" << gen_ << "]/(";
  bool first = true;
  for (std::size_t i = modulus_.size(); i-- > 0;) {
    if (!modulus_[i]) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0 || modulus_[i] != 1) os << modulus_[i];
    if (i > 0 && modulus_[i] != 1) os << "*";
    if (i > 0) os << gen_;
    if (i > 1) os << "^" << i;
  }
  os << ")";
  return os.str();
}

}  // namespace chowmod
