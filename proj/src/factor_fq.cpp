#include "chowmod/factor.hpp"

namespace chowmod {

namespace {

using P = Poly<FiniteField>;

std::uint64_t seed_of(const P& f) {
  std::uint64_t h = 0x9e3779b97f4a7c15ull;
  for (auto& c : f.coeffs()) h = (h ^ c.v) * 0x100000001b3ull;
  return h;
}

P random_poly(const FieldPtrFq& fp, int deg, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> d(0, fp->size() - 1);
  std::vector<FiniteField::Elem> c(deg + 1);
  for (auto& x : c) x = fp->element(d(rng));
  return P(fp, c);
}

void edf(const P& f, int d, std::mt19937_64& rng, std::vector<P>& out) {
  if (f.degree() == d) {
    out.push_back(f.monic());
    return;
  }
  auto fp = f.field_ptr();
  mpz_class q = static_cast<unsigned long>(fp->size());
  mpz_class qd;
  mpz_pow_ui(qd.get_mpz_t(), q.get_mpz_t(), d);
  while (true) {
    P r = random_poly(fp, f.degree() - 1, rng);
    if (r.degree() <= 0) continue;
    P a(fp);
    if (fp->p() == 2) {
      // trace to F_2 of the degree-d extension: sum r^{2^i}, i < e*d
      std::uint32_t k = fp->degree() * static_cast<std::uint32_t>(d);
      P t = r % f;
      a = t;
      for (std::uint32_t i = 1; i < k; ++i) {
        t = mul_mod(t, t, f);
        a = a + t;
      }
    } else {
      a = pow_mod(r, (qd - 1) / 2, f) - P::one(fp);
    }
    P g = gcd(f, a);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      edf(g, d, rng, out);
      edf(f / g, d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<std::pair<P, int>> distinct_degree(const P& f0) {
  auto fp = f0.field_ptr();
  std::vector<std::pair<P, int>> out;
  P f = f0.monic();
  P x = P::x(fp);
  P h = x % f;
  mpz_class q = static_cast<unsigned long>(fp->size());
  for (int i = 1; 2 * i <= f.degree(); ++i) {
    h = pow_mod(h, q, f);
    P g = gcd(f, h - x);
    if (g.degree() > 0) {
      out.emplace_back(g, i);
      f = f / g;
      h = h % f;
    }
  }
  if (f.degree() > 0) out.emplace_back(f, f.degree());
  return out;
}

std::vector<P> equal_degree(const P& f, int d) {
  std::vector<P> out;
  if (f.degree() <= 0) return out;
  std::mt19937_64 rng(seed_of(f));
  edf(f.monic(), d, rng, out);
  return out;
}

Factorization<FiniteField> factor(const P& p) {
  if (p.is_zero()) throw std::invalid_argument("factor of zero polynomial");
  Factorization<FiniteField> out{p.lc(), {}};
  for (auto& [s, e] : squarefree_decomposition(p))
    for (auto& [g, d] : distinct_degree(s))
      for (auto& h : equal_degree(g, d)) out.factors.emplace_back(h, e);
  sort_factors(out.factors);
  return out;
}

bool is_irreducible(const P& p) {
  if (p.degree() <= 0) return false;
  auto f = factor(p);
  return f.factors.size() == 1 && f.factors[0].second == 1;
}

std::vector<FiniteField::Elem> roots(const P& p) {
  std::vector<FiniteField::Elem> out;
  if (p.is_zero()) throw std::invalid_argument("roots of zero polynomial");
  if (p.degree() <= 0) return out;
  auto fp = p.field_ptr();
  P f = p.monic();
  P x = P::x(fp);
  P g = gcd(f, pow_mod(x, mpz_class(static_cast<unsigned long>(fp->size())), f) - x);
  for (auto& h : equal_degree(g, 1)) out.push_back(fp->neg(h.coeff(0)));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<P> monic_irreducibles(const FieldPtrFq& fp, int d) {
  std::vector<P> out;
  std::uint64_t q = fp->size(), total = 1;
  for (int i = 0; i < d; ++i) {
    total *= q;
    if (total > (1ull << 26)) throw std::invalid_argument("irreducible enumeration too large");
  }
  for (std::uint64_t c = 0; c < total; ++c) {
    std::vector<FiniteField::Elem> co(d + 1);
    std::uint64_t t = c;
    for (int i = 0; i < d; ++i) { co[i] = fp->element(t % q); t /= q; }
    co[d] = fp->one();
    P f(fp, co);
    if (is_irreducible(f)) out.push_back(f);
  }
  std::sort(out.begin(), out.end(), PolyLess<FiniteField>());
  return out;
}

}  // namespace chowmod
