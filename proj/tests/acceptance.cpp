// Acceptance run: one PASS/FAIL line per criterion. `acceptance N` runs criterion N only.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "chowmod/chow.hpp"
#include "chowmod/suite.hpp"
#include "cubical_gen.hpp"
#include "gen.hpp"
#include "oracles.hpp"

namespace chowmod {
namespace {

using testgen::Gen;
using FF = FiniteField;
using PF = Poly<FF>;
using WF = WittVector<FF>;
using WQ = WittVector<Rationals>;

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& what) {
    if (pass) detail = what;
    pass = false;
  }
};

struct Criterion {
  int id;
  std::string name;
  double limit_s;
  std::function<Outcome()> run;
};

// ---------------------------------------------------------------- 1

Outcome generator_law() {
  Outcome o;
  std::size_t n = 0;
  for (auto f : {FF::prime(2), FF::prime(3), FF::canonical(2, 2), FF::prime(5)}) {
    for (int m = 1; m <= 16; ++m)
      for (std::uint64_t i = 0; i < f->size(); ++i)
        for (std::uint64_t j = 0; j < f->size(); ++j) {
          auto a = f->element(i), b = f->element(j);
          auto want = WF::from_series(PF::one(f) - PF::x(f) * PF::constant(f, f->mul(a, b)), m);
          ++n;
          if (!(star(WF::teichmuller(f, m, a), WF::teichmuller(f, m, b)) == want))
            o.fail(describe(AnyField(f)) + " m=" + std::to_string(m) + " a=" + f->format(a) + " b=" + f->format(b));
        }
  }
  Gen g(101);
  auto Q = Rationals::instance();
  for (int k = 0; k < 500; ++k) {
    int m = static_cast<int>(g.range(1, 16));
    auto a = g.rational(), b = g.rational();
    mpq_class ab = a * b;
    auto want = WQ::from_series(Poly<Rationals>(Q, {mpq_class(1), mpq_class(-ab)}), m);
    ++n;
    if (!(star(WQ::teichmuller(Q, m, a), WQ::teichmuller(Q, m, b)) == want))
      o.fail("Q m=" + std::to_string(m) + " a=" + a.get_str() + " b=" + b.get_str());
  }
  if (o.pass) o.detail = std::to_string(n) + " products";
  return o;
}

// ---------------------------------------------------------------- 2, 4

WQ random_wq(Gen& g, int m) {
  std::vector<mpq_class> c;
  for (int i = 0; i < m; ++i) c.push_back(g.rational(5));
  return WQ(Rationals::instance(), c);
}

Outcome dual_algorithms() {
  Outcome o;
  Gen g(102);
  for (int k = 0; k < 500; ++k) {
    int m = static_cast<int>(g.range(1, 16));
    auto x = random_wq(g, m), y = random_wq(g, m);
    if (!(star_ghost(x, y) == star_generators(x, y))) o.fail("x=" + x.to_string() + " y=" + y.to_string());
  }
  if (o.pass) o.detail = "500 pairs, m <= 16";
  return o;
}

Outcome ghost_ring_map() {
  Outcome o;
  Gen g(104);
  for (int k = 0; k < 500; ++k) {
    int m = static_cast<int>(g.range(1, 32));
    auto x = random_wq(g, m), y = random_wq(g, m);
    auto gx = ghost(x), gy = ghost(y), gp = ghost(star(x, y));
    for (int i = 0; i < m; ++i)
      if (gp[i] != gx[i] * gy[i]) o.fail("entry " + std::to_string(i + 1) + " x=" + x.to_string() + " y=" + y.to_string());
  }
  if (o.pass) o.detail = "500 pairs, m <= 32";
  return o;
}

// ---------------------------------------------------------------- 3

// 1 + sum c_i u^i raised to N modulo (p, u^{n+1}); dense, independent of the Witt code
std::vector<unsigned> series_pow(const std::vector<unsigned>& c, unsigned p, unsigned long N) {
  std::size_t n = c.size();
  std::vector<unsigned> base(n + 1, 0), acc(n + 1, 0);
  base[0] = 1;
  acc[0] = 1;
  for (std::size_t i = 0; i < n; ++i) base[i + 1] = c[i];
  auto mul = [&](const std::vector<unsigned>& a, const std::vector<unsigned>& b) {
    std::vector<unsigned> r(n + 1, 0);
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t j = 0; i + j <= n; ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return r;
  };
  for (; N; N >>= 1) {
    if (N & 1) acc = mul(acc, base);
    base = mul(base, base);
  }
  return acc;
}

bool is_one(const std::vector<unsigned>& s) {
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i]) return false;
  return true;
}

Outcome p_torsion() {
  Outcome o;
  std::ostringstream msg;
  for (auto [p, e] : std::vector<std::pair<unsigned, int>>{{2, 1}, {3, 1}, {2, 2}, {2, 3}, {3, 2}, {2, 4}}) {
    auto f = FF::prime(p);
    int n = 1;
    for (int i = 0; i < e; ++i) n *= static_cast<int>(p);
    unsigned long N = static_cast<unsigned long>(n) * p;  // p^{e+1}
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) total *= p;
    std::vector<unsigned> c(n, 0);
    for (std::uint64_t code = 0; code < total; ++code) {
      std::uint64_t r = code;
      std::vector<FF::Elem> w;
      for (int i = 0; i < n; ++i, r /= p) {
        c[i] = static_cast<unsigned>(r % p);
        w.push_back(f->element(c[i]));
      }
      WF x(f, w);
      if (!x.times(static_cast<long>(N)).is_zero() || !is_one(series_pow(c, p, N)))
        o.fail("W_" + std::to_string(n) + "(F" + std::to_string(p) + ") x=" + x.to_string());
    }
    auto one = WF::one(f, n);
    std::vector<unsigned> gen(n, 0);
    gen[0] = p - 1;  // 1 - u
    bool sharp = !is_one(series_pow(gen, p, N / p)) && is_one(series_pow(gen, p, N));
    if (additive_order(one) != static_cast<long>(N) || !sharp)
      o.fail("additive order of 1-u in W_" + std::to_string(n) + "(F" + std::to_string(p) + ") is " + additive_order(one).get_str());
    msg << "W_" << n << "(F" << p << "):" << total << " ";
  }
  if (o.pass) o.detail = msg.str();
  return o;
}

// ---------------------------------------------------------------- 5

Outcome div_multiplicative() {
  Outcome o;
  std::size_t pairs = 0;
  auto check = [&](const PF& a, const PF& b, const ZeroCycleA1<FF>& da, const ZeroCycleA1<FF>& db) {
    ++pairs;
    int M = std::max(1, a.degree() * b.degree());
    auto prod = star(WF::from_series(a, M), WF::from_series(b, M));
    if (!(div_witt(prod) == mult_convolution(da, db))) o.fail(a.to_string("u") + " * " + b.to_string("u"));
  };
  for (unsigned p : {2u, 3u}) {
    auto f = FF::prime(p);
    std::vector<PF> fs;
    std::vector<ZeroCycleA1<FF>> ds;
    for (unsigned code = 0; code < p * p * p * p; ++code) {
      std::vector<FF::Elem> c{f->one()};
      for (unsigned r = code, i = 0; i < 4; ++i, r /= p) c.push_back(f->element(r % p));
      fs.emplace_back(f, c);
      ds.push_back(div_witt(fs.back()));
    }
    for (std::size_t i = 0; i < fs.size(); ++i)
      for (std::size_t j = 0; j < fs.size(); ++j) check(fs[i], fs[j], ds[i], ds[j]);
  }
  Gen g(105);
  for (int k = 0; k < 200; ++k) {
    auto f = FF::prime(g.coin() ? 2 : 3);
    auto a = PF::one(f) + PF::x(f) * g.poly(f, 5), b = PF::one(f) + PF::x(f) * g.poly(f, 5);
    check(a, b, div_witt(a), div_witt(b));
  }
  if (o.pass) o.detail = std::to_string(pairs) + " pairs";
  return o;
}

// ---------------------------------------------------------------- 6

struct ChowFixture {
  std::string field;
  int m, D, H;
};
// (D, H) where the computed order no longer changes from H-1 to H
const std::vector<ChowFixture> kChowFixtures{{"F2", 1, 2, 3}, {"F2", 2, 3, 4}, {"F3", 1, 2, 3}};

Outcome chow_reproduction() {
  Outcome o;
  std::ostringstream msg;
  for (auto& fx : kChowFixtures) {
    ChowComputationConfig c;
    c.field = fx.field;
    c.m = fx.m;
    c.deg_bound = fx.D;
    c.height = fx.H;
    auto r = compute_ch0(c);
    c.height = fx.H - 1;
    auto below = compute_ch0(c);
    c.height = fx.H;
    c.m = fx.m + 1;
    auto shifted = compute_ch0(c);
    std::string ord = r.order ? r.order->get_str() : "inf";
    msg << fx.field << " m=" << fx.m << " D=" << fx.D << " H=" << fx.H << ": order " << ord << " (q^m=" << r.expected_order.get_str()
        << ", H-1 gives " << (below.order ? below.order->get_str() : "inf") << "), " << r.relation_count
        << " relations, identity mod u^m " << (r.relations_identity ? "yes" : "NO") << ", not identity mod u^{m+1}: "
        << r.nonidentity_in_Wm << ", modulus m+1 gives " << (shifted.order ? shifted.order->get_str() : "inf") << "; ";
    if (!r.relations_identity) o.fail("relation with non-identity Witt image at " + fx.field);
    if (!r.homomorphism) o.fail("div map not a homomorphism at " + fx.field);
    if (!r.order_matches) o.pass = false;
  }
  o.detail = msg.str();
  return o;
}

// ---------------------------------------------------------------- 7

Outcome cubical_engine() {
  Outcome o;
  Gen g(107);
  for (int t = 0; t < 50 && o.pass; ++t) {
    auto [a, top] = testgen::random_instance(g);
    auto where = "instance " + std::to_string(t);
    if (auto v = a.identity_violation()) {
      o.fail(where + ": " + *v);
      break;
    }
    auto c = alternating_differential(a);
    if (!c.is_complex()) o.fail(where + ": d^2 != 0");
    std::map<int, IntMatrix> p0, pd;
    for (int q = 0; q <= top; ++q) {
      auto s = split_degenerate(a, q);
      auto I = IntMatrix::identity(a.rank(q));
      if (!(s.reduced * s.reduced == s.reduced) || !(s.degenerate * s.degenerate == s.degenerate) ||
          !(s.reduced * s.degenerate).is_zero() || !(s.reduced + s.degenerate == I))
        o.fail(where + ": projections at q=" + std::to_string(q));
      for (int i = 1; i <= q; ++i)
        if (!(s.reduced * a.degeneracy(q, i)).is_zero()) o.fail(where + ": degeneracy escapes the degenerate part");
      p0[q] = s.reduced;
      pd[q] = s.degenerate;
    }
    for (int q = 1; q <= top; ++q)
      if (!(c.boundary(q) * p0[q] == p0[q - 1] * c.boundary(q)) || !(c.boundary(q) * pd[q] == pd[q - 1] * c.boundary(q)))
        o.fail(where + ": splitting is not a chain map");
    auto red = image_subcomplex(c, p0), deg = image_subcomplex(c, pd);
    for (int q = 0; q < top; ++q) {
      auto h = homology(c, q);
      if (!(h == direct_sum(homology(red, q), homology(deg, q)))) o.fail(where + ": H != H(red) + H(deg) at q=" + std::to_string(q));
      std::map<int, std::pair<IntMatrix, IntMatrix>> G;
      for (int r = 0; r <= top; ++r) G[r] = testgen::random_unimodular(g, c.rank(r));
      std::map<int, IntMatrix> d2;
      std::vector<std::size_t> ranks;
      for (int r = 0; r <= top; ++r) ranks.push_back(c.rank(r));
      for (int r = 1; r <= top; ++r) d2[r] = G[r - 1].second * c.boundary(r) * G[r].first;
      if (!(homology(ChainComplex(0, ranks, d2), q) == h)) o.fail(where + ": homology depends on the basis");
    }
  }
  if (o.pass) o.detail = "50 instances";
  return o;
}

// ---------------------------------------------------------------- 8, 9

Outcome rigidity_homotopy() {
  Outcome o;
  int q1 = 0;
  for (auto& V : phi_corpus(20, 108)) {
    q1 += V.q == 1;
    auto r = verify_phi_homotopy(V);
    if (!r.holds) o.fail(V.to_string());
  }
  if (o.pass) o.detail = "20 curves (" + std::to_string(q1) + " with q=1)";
  return o;
}

Outcome tilde_claims() {
  Outcome o;
  int n = 0;
  for (auto& t : tilde_corpus(50, 109)) {
    ++n;
    if (!t.i0_holds) o.fail("i_0: " + t.label);
    if (!t.i1_holds) o.fail("i_1: " + t.label + " " + t.detail);
    if (!t.boundary_identity || !t.modulus_ok || !t.w_ok) o.fail("boundary: " + t.label);
  }
  if (o.pass) o.detail = std::to_string(n) + " (Z, f) pairs over F2, F3, Q";
  return o;
}

// ---------------------------------------------------------------- 10

Outcome modulus_ground_truth() {
  Outcome o;
  for (auto f : {FF::prime(2), FF::prime(5)}) {
    auto diag = [&](long c) {
      ModulusPair<FF> P(f, {true}, {DivisorTerm<FF>{0, std::nullopt, c}});
      return check_modulus(make_curve(P, 1, {RatFunc<FF>(PF::x(f)), RatFunc<FF>(PF::x(f))}));
    };
    auto one = diag(1), two = diag(2);
    if (!one.pass || one.entries.size() != 1 || one.entries[0].left != 1 || one.entries[0].right != 1)
      o.fail("diagonal, coefficient 1: " + one.to_string());
    if (two.pass || two.entries.empty() || two.entries[0].left != 2) o.fail("diagonal, coefficient 2: " + two.to_string());
  }
  int agree = 0, passes = 0;
  for (auto& V : effective_corpus(30, 110)) {
    bool naive = check_modulus(V, ModulusVariant::naive).pass;
    passes += naive;
    if (naive != !oracle::meets_support(V)) o.fail(V.to_string());
    else ++agree;
  }
  if (passes == 0 || passes == 30) o.fail("corpus does not mix passing and failing curves");
  if (o.pass) o.detail = "diagonal 1/1 PASS, 2 FAIL; " + std::to_string(agree) + "/30 agree (" + std::to_string(passes) + " admissible)";
  return o;
}

// ---------------------------------------------------------------- 11

Outcome translation_bound() {
  Outcome o;
  int shapes = 0, above_one = 0;
  for (auto& s : translation_corpus()) {
    ++shapes;
    int want = oracle::dv_oracle(s.pair, s.coords);
    above_one += want > 1;
    std::vector<long> dir(s.coords.size(), 1);
    for (int d = 1; d <= want + 2; ++d) {
      auto r = generic_translation_H(s.cycle, s.coords, dir, d);
      auto where = s.pair.to_string() + " d=" + std::to_string(d);
      if (r.d_V != want) o.fail(where + ": d_V " + std::to_string(r.d_V) + " vs " + std::to_string(want));
      if (r.cert_d.pass != (d >= want)) o.fail(where + ": certificate " + r.cert_d.to_string());
      if (!(r.a_holds && r.b_holds && r.c_holds && r.d_holds)) o.fail(where + ": homotopy properties");
    }
  }
  if (above_one == 0) o.fail("no shape with d_V > 1");
  if (o.pass) o.detail = std::to_string(shapes) + " shapes, " + std::to_string(above_one) + " with d_V > 1";
  return o;
}

}  // namespace
}  // namespace chowmod

int main(int argc, char** argv) {
  using namespace chowmod;
  const std::vector<Criterion> all{
      {1, "Witt generator law", 5, generator_law},
      {2, "star_ghost = star_generators", 10, dual_algorithms},
      {3, "p-torsion", 10, p_torsion},
      {4, "ghost ring map", 10, ghost_ring_map},
      {5, "div onto convolution", 30, div_multiplicative},
      {6, "Chow group reproduction", 300, chow_reproduction},
      {7, "cubical engine", 30, cubical_engine},
      {8, "rigidity homotopy", 10, rigidity_homotopy},
      {9, "tilde chain endpoints", 30, tilde_claims},
      {10, "modulus checker ground truth", 5, modulus_ground_truth},
      {11, "powered translation bound", 10, translation_bound},
  };
  int only = argc > 1 ? std::atoi(argv[1]) : 0;
  bool ok = true;
  for (auto& c : all) {
    if (only && c.id != only) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r.fail(std::string("exception: ") + e.what());
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool pass = r.pass && s <= c.limit_s;
    ok = ok && pass;
    std::printf("criterion %2d %s  %s  [%.2fs / %.0fs]  %s\n", c.id, pass ? "PASS" : "FAIL", c.name.c_str(), s, c.limit_s,
                r.detail.c_str());
    std::fflush(stdout);
  }
  return ok ? 0 : 1;
}
