#include <functional>
#include <numeric>

#include "chowmod/factor.hpp"

namespace chowmod {

namespace {

using Z = mpz_class;
using ZPoly = std::vector<Z>;  // low degree first
using PQ = Poly<Rationals>;
using PF = Poly<FiniteField>;

void trim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

ZPoly zsub(ZPoly a, const ZPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

// symmetric residue mod m
Z smod(const Z& a, const Z& m) {
  Z r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  if (2 * r > m) r -= m;
  return r;
}

ZPoly zmod(ZPoly a, const Z& m) {
  for (auto& c : a) c = smod(c, m);
  trim(a);
  return a;
}

Z content(const ZPoly& a) {
  Z g = 0;
  for (auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

ZPoly primitive(ZPoly a) {
  Z g = content(a);
  if (g == 0) return a;
  if (a.back() < 0) g = -g;
  for (auto& c : a) c /= g;
  return a;
}

// exact division over Z; nullopt if b does not divide a
std::optional<ZPoly> zdiv(ZPoly a, const ZPoly& b) {
  trim(a);
  if (a.size() < b.size()) {
    if (a.empty()) return ZPoly{};
    return std::nullopt;
  }
  ZPoly q(a.size() - b.size() + 1, 0);
  for (std::size_t k = q.size(); k-- > 0;) {
    Z& top = a[k + b.size() - 1];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), b.back().get_mpz_t())) return std::nullopt;
    Z c = top / b.back();
    q[k] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[k + i] -= c * b[i];
  }
  trim(a);
  if (!a.empty()) return std::nullopt;
  return q;
}

PF to_fp(const ZPoly& a, const FieldPtrFq& fp) {
  std::vector<FiniteField::Elem> c;
  for (auto& x : a) c.push_back(fp->from_mpz(x));
  return PF(fp, c);
}

ZPoly from_fp(const PF& a) {
  ZPoly r;
  for (auto& c : a.coeffs()) r.push_back(Z(c.v));
  return r;
}

// Lift A = G*H mod p (G monic) to mod p^a.
std::pair<ZPoly, ZPoly> hensel2(const ZPoly& A, ZPoly G, ZPoly H, const FieldPtrFq& fp, unsigned a) {
  Z p = fp->p();
  auto [g, s, t] = xgcd(to_fp(G, fp), to_fp(H, fp));
  if (g.degree() != 0) throw std::logic_error("hensel: factors not coprime");
  Z pk = p;
  for (unsigned k = 1; k < a; ++k) {
    ZPoly E = zsub(A, zmul(G, H));
    for (auto& c : E) {
      if (!mpz_divisible_p(c.get_mpz_t(), pk.get_mpz_t())) throw std::logic_error("hensel: lifting invariant broken");
      c /= pk;
    }
    PF e = to_fp(E, fp);
    PF Gp = to_fp(G, fp), Hp = to_fp(H, fp);
    PF sigma = (t * e) % Gp;
    PF tau = (e - sigma * Hp) / Gp;
    ZPoly sg = from_fp(sigma), ta = from_fp(tau);
    if (G.size() < sg.size()) G.resize(sg.size(), 0);
    for (std::size_t i = 0; i < sg.size(); ++i) G[i] += pk * sg[i];
    if (H.size() < ta.size()) H.resize(ta.size(), 0);
    for (std::size_t i = 0; i < ta.size(); ++i) H[i] += pk * ta[i];
    pk *= p;
    G = zmod(G, pk);
    H = zmod(H, pk);
  }
  return {G, H};
}

void hensel_multi(const ZPoly& A, const std::vector<PF>& fs, const FieldPtrFq& fp, unsigned a, const Z& pa,
                  std::vector<ZPoly>& out) {
  if (fs.size() == 1) {
    // A = lc * f; return monic f mod p^a
    Z lc = A.back(), inv;
    mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), pa.get_mpz_t());
    ZPoly f = A;
    for (auto& c : f) c = smod(c * inv, pa);
    out.push_back(f);
    return;
  }
  std::size_t half = fs.size() / 2;
  PF g = PF::one(fp), h = PF::one(fp);
  for (std::size_t i = 0; i < half; ++i) g = g * fs[i];
  for (std::size_t i = half; i < fs.size(); ++i) h = h * fs[i];
  h = h.scale(fp->from_mpz(A.back()));
  auto [G, H] = hensel2(A, from_fp(g), from_fp(h), fp, a);
  hensel_multi(G, std::vector<PF>(fs.begin(), fs.begin() + half), fp, a, pa, out);
  hensel_multi(H, std::vector<PF>(fs.begin() + half, fs.end()), fp, a, pa, out);
}

void for_each_subset(std::size_t n, std::size_t k, const std::function<bool(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > n) return;
  while (true) {
    if (fn(idx)) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// A primitive, squarefree, positive leading coefficient.
std::vector<ZPoly> factor_squarefree_z(ZPoly A) {
  std::vector<ZPoly> out;
  std::size_t n = A.size() - 1;
  if (n <= 1) return {A};
  if (A[0] == 0) {
    out.push_back({0, 1});
    A.erase(A.begin());
    for (auto& f : factor_squarefree_z(primitive(A))) out.push_back(f);
    return out;
  }
  // pick a good prime with few modular factors
  std::vector<PF> best;
  FieldPtrFq bestp;
  int tried = 0;
  for (std::uint32_t p = 3; tried < 6 && p < 2000; p += 2) {
    if (!is_prime(p)) continue;
    if (mpz_divisible_ui_p(A.back().get_mpz_t(), p)) continue;
    auto fp = FiniteField::prime(p);
    PF Ap = to_fp(A, fp);
    if (gcd(Ap, Ap.derivative()).degree() != 0) continue;
    ++tried;
    std::vector<PF> fs;
    for (auto& [g, d] : distinct_degree(Ap))
      for (auto& h : equal_degree(g, d)) fs.push_back(h);
    if (!bestp || fs.size() < best.size()) {
      best = fs;
      bestp = fp;
    }
    if (best.size() == 1) break;
  }
  if (!bestp) throw factorization_incomplete("no good prime found");
  if (best.size() == 1) return {A};
  if (best.size() > 20) throw factorization_incomplete("too many modular factors for recombination");
  // coefficient bound for factors: 2^n * ||A||_2 * |lc|
  Z norm2 = 0;
  for (auto& c : A) norm2 += c * c;
  Z nrm = sqrt(norm2) + 1;
  Z bound = (Z(1) << static_cast<unsigned long>(n)) * nrm * abs(A.back()) * 2 + 1;
  Z p = bestp->p(), pa = p;
  unsigned a = 1;
  while (pa <= bound) {
    pa *= p;
    ++a;
  }
  std::vector<ZPoly> lifted;
  hensel_multi(A, best, bestp, a, pa, lifted);

  std::vector<ZPoly> rest = lifted;
  for (std::size_t k = 1; 2 * k <= rest.size(); ++k) {
    bool found = true;
    while (found && 2 * k <= rest.size()) {
      found = false;
      for_each_subset(rest.size(), k, [&](const std::vector<std::size_t>& idx) {
        ZPoly g{A.back()};
        for (auto i : idx) g = zmod(zmul(g, rest[i]), pa);
        g = primitive(g);
        auto q = zdiv(A, g);
        if (!q) return false;
        out.push_back(g);
        A = primitive(*q);
        std::vector<ZPoly> keep;
        for (std::size_t i = 0, j = 0; i < rest.size(); ++i) {
          if (j < idx.size() && idx[j] == i) { ++j; continue; }
          keep.push_back(rest[i]);
        }
        rest = keep;
        found = true;
        return true;
      });
    }
  }
  if (A.size() > 1) out.push_back(A);
  return out;
}

ZPoly to_z(const PQ& p) {
  Z l = 1;
  for (auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  ZPoly r;
  for (auto& c : p.coeffs()) r.push_back(Z(c * l));
  return primitive(r);
}

PQ to_q_monic(const ZPoly& a) {
  auto q = Rationals::instance();
  std::vector<mpq_class> c;
  for (auto& x : a) c.push_back(mpq_class(x, a.back()));
  for (auto& x : c) x.canonicalize();
  return PQ(q, c);
}

}  // namespace

Factorization<Rationals> factor(const PQ& p, int bound) {
  if (p.is_zero()) throw std::invalid_argument("factor of zero polynomial");
  Factorization<Rationals> out{p.lc(), {}};
  for (auto& [s, e] : squarefree_decomposition(p)) {
    for (auto& g : factor_squarefree_z(to_z(s))) {
      PQ m = to_q_monic(g);
      if (bound > 0 && m.degree() > bound)
        throw factorization_incomplete("irreducible factor of degree " + std::to_string(m.degree()) +
                                       " exceeds the bound " + std::to_string(bound) + ": " + m.to_string());
      out.factors.emplace_back(m, e);
    }
  }
  sort_factors(out.factors);
  return out;
}

bool is_irreducible(const PQ& p) {
  if (p.degree() <= 0) return false;
  auto f = factor(p, 0);
  return f.factors.size() == 1 && f.factors[0].second == 1;
}

}  // namespace chowmod
