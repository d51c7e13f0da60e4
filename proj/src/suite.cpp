#include "chowmod/suite.hpp"

#include "chowmod/cubical.hpp"
#include "chowmod/parse.hpp"

namespace chowmod {

namespace {

using FF = FiniteField;
using PF = Poly<FF>;
using RF = RatFunc<FF>;
using PairF = ModulusPair<FF>;

struct Rng {
  std::mt19937_64 g;
  explicit Rng(std::uint64_t seed) : g(seed) {}
  long range(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g); }
  bool coin() { return range(0, 1) == 1; }

  FF::Elem elem(const FF& f) { return f.element(static_cast<std::uint64_t>(range(0, long(f.size()) - 1))); }
  FF::Elem nonzero(const FF& f) { return f.element(static_cast<std::uint64_t>(range(1, long(f.size()) - 1))); }
  mpq_class elem(const Rationals&) {
    mpq_class r(range(-9, 9), range(1, 9));
    r.canonicalize();
    return r;
  }
  mpq_class nonzero(const Rationals& q) {
    mpq_class r;
    do r = elem(q); while (r == 0);
    return r;
  }
  template <class F>
  Poly<F> poly(const std::shared_ptr<const F>& f, int maxdeg) {
    std::vector<typename F::Elem> c;
    for (long i = 0, d = range(0, maxdeg); i <= d; ++i) c.push_back(elem(*f));
    return Poly<F>(f, c);
  }
  template <class F>
  Poly<F> nonzero_poly(const std::shared_ptr<const F>& f, int maxdeg) {
    Poly<F> p(f);
    while (p.is_zero()) p = poly(f, maxdeg);
    return p;
  }
  PF monic(const FieldPtrFq& f, int deg) {
    std::vector<FF::Elem> c;
    for (int i = 0; i < deg; ++i) c.push_back(elem(*f));
    c.push_back(f->one());
    return PF(f, c);
  }
  RF rf(const FieldPtrFq& f, int deg) { return RF(poly(f, deg), nonzero_poly(f, deg)); }
  FieldPtrFq small_field() {
    static const std::uint32_t ps[] = {2, 3, 5};
    return FF::prime(ps[range(0, 2)]);
  }
};

PairF a1_at_zero(const FieldPtrFq& f, long m) { return PairF(f, {false}, {DivisorTerm<FF>{0, PF::x(f), m}}); }
PairF p1_inf(const FieldPtrFq& f, long c) { return PairF(f, {true}, {DivisorTerm<FF>{0, std::nullopt, c}}); }

std::optional<ParamCurve<FF>> try_curve(const PairF& pair, int q, std::vector<RF> cs) {
  try {
    return make_curve(pair, q, std::move(cs));
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

template <class F>
std::string coeffs_of(const WittVector<F>& w) {
  return w.to_string();
}

// ---------------------------------------------------------------- Witt checks

template <class F>
void witt_checks(SuiteReport& rep, const std::shared_ptr<const F>& f, int m, Rng& rng, int trials) {
  using W = WittVector<F>;
  auto label = describe(AnyField(f)) + ", m=" + std::to_string(m);
  auto rand_w = [&] {
    std::vector<typename F::Elem> c;
    for (int i = 0; i < m; ++i) c.push_back(rng.elem(*f));
    return W(f, c);
  };
  CheckResult ring{"ring axioms " + label, "(W_m, +, *) is a commutative ring with unit 1-u"};
  CheckResult law{"generator law " + label, "(1-au)*(1-bu) = 1-abu"};
  CheckResult trunc{"truncation " + label, "truncation is a ring map W_m -> W_k"};
  auto one = W::one(f, m);
  for (int i = 0; i < trials; ++i) {
    auto x = rand_w(), y = rand_w(), z = rand_w();
    ++ring.cases;
    if (!(star(x, y) == star(y, x))) ring.fail("x*y != y*x for x=" + x.to_string() + " y=" + y.to_string());
    if (!(star(star(x, y), z) == star(x, star(y, z)))) ring.fail("associativity at " + x.to_string());
    if (!(star(x, y + z) == star(x, y) + star(x, z))) ring.fail("distributivity at " + x.to_string());
    if (!(star(x, one) == x)) ring.fail("unit at " + x.to_string());
    if (!(x + (-x)).is_zero()) ring.fail("additive inverse at " + x.to_string());
    auto a = rng.elem(*f), b = rng.elem(*f);
    ++law.cases;
    if (!(star(W::teichmuller(f, m, a), W::teichmuller(f, m, b)) == W::teichmuller(f, m, f->mul(a, b))))
      law.fail("a=" + f->format(a) + " b=" + f->format(b));
    int k = static_cast<int>(rng.range(1, m));
    ++trunc.cases;
    if (!(star(x, y).truncate(k) == star(x.truncate(k), y.truncate(k))) || !((x + y).truncate(k) == x.truncate(k) + y.truncate(k)))
      trunc.fail("k=" + std::to_string(k) + " x=" + x.to_string());
  }
  rep.checks.push_back(ring);
  rep.checks.push_back(law);
  rep.checks.push_back(trunc);

  if (f->characteristic() == 0) {
    if constexpr (std::is_same_v<F, Rationals>) {
      CheckResult agree{"star_ghost = star_generators " + label, "ghost and generator products agree"};
      CheckResult gh{"ghost ring map " + label, "ghost(x*y) = ghost(x) ghost(y), ghost(x+y) = ghost(x) + ghost(y)"};
      for (int i = 0; i < trials; ++i) {
        auto x = rand_w(), y = rand_w();
        ++agree.cases;
        if (!(star_ghost(x, y) == star_generators(x, y))) agree.fail("x=" + x.to_string() + " y=" + y.to_string());
        ++gh.cases;
        auto gx = ghost(x), gy = ghost(y), gp = ghost(star(x, y)), gs = ghost(x + y);
        for (int n = 0; n < m; ++n)
          if (gp[n] != gx[n] * gy[n] || gs[n] != gx[n] + gy[n]) gh.fail("x=" + x.to_string() + " y=" + y.to_string());
      }
      rep.checks.push_back(agree);
      rep.checks.push_back(gh);
    }
  } else {
    unsigned long p = f->characteristic();
    int e = 0;
    for (unsigned long pk = p; pk <= static_cast<unsigned long>(m); pk *= p) ++e;
    long N = 1;
    for (int i = 0; i <= e; ++i) N *= static_cast<long>(p);
    CheckResult tor{"p-torsion " + label, "p^{e+1} W_m = 0 for p^e <= m < p^{e+1}; additive order of 1-u is p^{e+1}"};
    for (int i = 0; i < trials; ++i) {
      auto x = rand_w();
      ++tor.cases;
      if (!x.times(N).is_zero()) tor.fail("x=" + x.to_string());
    }
    if (additive_order(one) != N) tor.fail("additive_order(1-u) = " + additive_order(one).get_str());
    rep.checks.push_back(tor);
    CheckResult frob{"Frobenius identity " + label, "(1-u)^{p^k} = 1-u^{p^k} in characteristic p"};
    for (unsigned long pk = 1; pk <= static_cast<unsigned long>(m); pk *= p) {
      ++frob.cases;
      if (!(one.times(static_cast<long>(pk)) == W::generator(f, m, f->one(), static_cast<int>(pk)))) frob.fail("p^k=" + std::to_string(pk));
    }
    rep.checks.push_back(frob);
  }
}

// ---------------------------------------------------------------- divisor checks

void divisor_checks(SuiteReport& rep, Rng& rng) {
  CheckResult ringmap{"div ring map", "div(f*g) = conv(div f, div g)"};
  CheckResult deg{"convolution degree", "deg conv(a, b) = deg a deg b"};
  CheckResult round{"witt_of_cycle o div_witt", "witt_of_cycle(div_witt f) = f"};
  for (auto p : {2u, 3u}) {
    auto f = FF::prime(p);
    for (int i = 0; i < 100; ++i) {
      auto sf = PF::one(f) + PF::x(f) * rng.nonzero_poly(f, 3);
      auto sg = PF::one(f) + PF::x(f) * rng.nonzero_poly(f, 3);
      int M = sf.degree() * sg.degree();
      auto prod = star(WittVector<FF>::from_series(sf, M), WittVector<FF>::from_series(sg, M));
      auto a = div_witt(sf), b = div_witt(sg);
      auto c = mult_convolution(a, b);
      ++ringmap.cases;
      if (!(div_witt(prod) == c)) ringmap.fail(sf.to_string() + " * " + sg.to_string());
      ++deg.cases;
      if (c.degree() != a.degree() * b.degree()) deg.fail(a.to_string() + " | " + b.to_string());
      ++round.cases;
      if (!(witt_of_cycle(a) == sf)) round.fail(sf.to_string());
    }
  }
  rep.checks.push_back(ringmap);
  rep.checks.push_back(deg);
  rep.checks.push_back(round);
}

// ---------------------------------------------------------------- cycle checks

void cycle_checks(SuiteReport& rep, std::uint64_t seed) {
  CheckResult phi{"rigidity homotopy", "d Phi + Phi d = i_1^* - i_0^*"};
  for (auto& V : phi_corpus(20, seed)) {
    ++phi.cases;
    auto r = verify_phi_homotopy(V);
    if (!r.holds) phi.fail(V.to_string());
  }
  rep.checks.push_back(phi);

  CheckResult c1{"tilde chain at 0", "i_0^* Z~ = deg f . pr_1^*(i_0^* Z)"};
  CheckResult c2{"tilde chain at 1", "i_1^* Z~ = div(f) . Z"};
  CheckResult cb{"tilde boundary", "d Phi(Z~) = i_1^* Z~ - i_0^* Z~"};
  for (auto& t : tilde_corpus(50, seed)) {
    ++c1.cases, ++c2.cases, ++cb.cases;
    if (!t.i0_holds) c1.fail(t.label);
    if (!t.i1_holds) c2.fail(t.label + " " + t.detail);
    if (!t.boundary_identity || !t.modulus_ok || !t.w_ok) cb.fail(t.label);
  }
  rep.checks.push_back(c1);
  rep.checks.push_back(c2);
  rep.checks.push_back(cb);

  CheckResult cont{"containment", "boundary points of admissible curves are admissible"};
  for (auto& V : admissible_corpus(30, seed)) {
    ++cont.cases;
    try {
      auto d = boundary(V);
      for (auto& [P, m] : d.terms()) {
        PointCycle<FF> z(d.pair(), 0);
        z.add(P, 1);
        if (!check_modulus(z).pass) cont.fail(V.to_string());
      }
    } catch (const std::logic_error& e) {
      cont.fail(V.to_string() + ": " + e.what());
    }
  }
  rep.checks.push_back(cont);

  CheckResult dd{"boundary of boundary", "d^2 = 0 on the cubical group of sampled curves"};
  {
    auto G = curve_cubical_group(face_proper_corpus(12, seed));
    ++dd.cases;
    if (auto v = G.identity_violation()) dd.fail(*v);
    else if (!alternating_differential(G).is_complex()) dd.fail("d^2 != 0");
  }
  rep.checks.push_back(dd);

  CheckResult act{"Witt action", "[{1}].Z = Z and (a+b).Z = a.Z + b.Z"};
  {
    Rng rng(seed);
    for (int i = 0; i < 30; ++i) {
      auto f = rng.small_field();
      auto X = tensor(PairF::affine(f, 1), PairF::affine(f, 1));
      auto Z = PointCycle<FF>::rational(X, 0, {rng.elem(*f), rng.nonzero(*f)}, rng.range(-2, 2) | 1);
      auto a = div_witt(PF::one(f) + PF::x(f) * rng.nonzero_poly(f, 2));
      auto b = div_witt(PF::one(f) + PF::x(f) * rng.nonzero_poly(f, 2));
      ++act.cases;
      if (!(witt_action(div_witt(PF::one(f) - PF::x(f)), Z) == Z)) act.fail("unit on " + Z.to_string());
      if (!(witt_action(a + b, Z) == witt_action(a, Z) + witt_action(b, Z))) act.fail(a.to_string() + " | " + b.to_string());
    }
  }
  rep.checks.push_back(act);

  CheckResult tr{"powered translation", "H = h^{d+1} - h^d: (a) boundary, (b) w, (c) i_0^* H = V, (d) (*) iff d >= d_V"};
  for (auto& s : translation_corpus()) {
    for (int d = 1; d <= 4; ++d) {
      ++tr.cases;
      std::vector<long> dir(s.coords.size(), 1);
      auto r = generic_translation_H(s.cycle, s.coords, dir, d);
      if (!(r.a_holds && r.b_holds && r.c_holds && r.d_holds)) tr.fail(s.pair.to_string() + " d=" + std::to_string(d));
    }
  }
  rep.checks.push_back(tr);
}

// ---------------------------------------------------------------- tilde cases

template <class F>
TildeSummary summarize(const std::string& label, const PointCycle<F>& Z, const Poly<F>& f, int m) {
  TildeSummary s;
  s.label = label + " Z=" + Z.to_string() + " f=" + f.to_string("u");
  auto r = homotopy_chain_tilde(Z, f, m);
  s.i0_holds = r.i0_holds;
  s.i1_holds = r.i1_holds;
  s.boundary_identity = r.boundary_identity;
  s.modulus_ok = r.modulus_ok;
  s.w_ok = r.w_ok;
  if (!r.i1_holds) s.detail = r.i1.to_string() + " vs " + r.i1_expected.to_string();
  return s;
}

}  // namespace

// ---------------------------------------------------------------- corpora

std::vector<ParamCurve<FF>> phi_corpus(std::size_t count, std::uint64_t seed) {
  Rng rng(seed * 7919 + 1);
  std::vector<ParamCurve<FF>> out;
  bool want_q1 = true;
  while (out.size() < count) {
    auto f = rng.small_field();
    auto X = tensor(a1_at_zero(f, 1), PairF::minus_cube(f));
    int q = want_q1 ? 1 : 0;
    auto x = RF(rng.nonzero_poly(f, 2));
    std::vector<RF> cs{x, RF(rng.nonzero_poly(f, 2), x.num * rng.monic(f, static_cast<int>(rng.range(0, 1))))};
    for (int j = 0; j < q; ++j) cs.push_back(rng.rf(f, 2));
    auto V = try_curve(X, q, cs);
    if (!V || !check_faces(*V) || !check_modulus(*V).pass || !w_defects(*V).empty()) continue;
    out.push_back(*V);
    want_q1 = !want_q1;
  }
  return out;
}

std::vector<ParamCurve<FF>> admissible_corpus(std::size_t count, std::uint64_t seed) {
  Rng rng(seed * 104729 + 3);
  std::vector<ParamCurve<FF>> out;
  while (out.size() < count) {
    auto f = rng.small_field();
    long m = rng.range(1, 3);
    auto x = RF(rng.nonzero_poly(f, 2));
    auto den = pow(x.num, static_cast<unsigned long>(rng.range(0, 1) * m));
    if (rng.coin()) den = den * rng.monic(f, 1);
    auto V = try_curve(a1_at_zero(f, m), 1, {x, RF(rng.nonzero_poly(f, 2), den)});
    if (!V || !check_faces(*V) || !check_modulus(*V).pass) continue;
    out.push_back(*V);
  }
  return out;
}

std::vector<ParamCurve<FF>> effective_corpus(std::size_t count, std::uint64_t seed) {
  Rng rng(seed * 15485863 + 5);
  std::vector<ParamCurve<FF>> out;
  while (out.size() < count) {
    auto f = FF::prime(rng.coin() ? 2 : 3);
    std::vector<PairF> pairs{a1_at_zero(f, 1), PairF(f, {false}, {DivisorTerm<FF>{0, PF::linear(f, f->one()), 2}}),
                             p1_inf(f, 1), tensor(a1_at_zero(f, 1), p1_inf(f, 2))};
    auto& X = pairs[rng.range(0, 3)];
    std::vector<RF> cs;
    for (int i = 0; i < X.dim(); ++i) cs.push_back(X.compact(i) ? rng.rf(f, 2) : RF(rng.nonzero_poly(f, 2)));
    cs.push_back(rng.rf(f, 2));
    auto V = try_curve(X, 1, cs);
    if (!V) continue;
    try {
      check_modulus(*V, ModulusVariant::naive);
    } catch (const modulus_error&) {
      continue;
    }
    out.push_back(*V);
  }
  return out;
}

std::vector<TildeSummary> tilde_corpus(std::size_t count, std::uint64_t seed) {
  Rng rng(seed * 32452843 + 7);
  std::vector<TildeSummary> out;
  for (std::size_t i = 0; out.size() < count; ++i) {
    int kind = static_cast<int>(i % 3);
    int m = static_cast<int>(rng.range(1, 2));
    if (kind < 2) {
      auto f = FF::prime(kind == 0 ? 2 : 3);
      auto X = tensor(a1_at_zero(f, 1), PairF::affine(f, 1));
      PointCycle<FF> Z(X, 0);
      for (long k = 0, n = rng.range(1, 2); k < n; ++k) {
        unsigned L = rng.coin() ? 2 : 1;
        auto E = fq::level(f, L);
        FF::Elem x, u;
        std::pair<unsigned, std::vector<FF::Elem>> ct;
        do {
          x = rng.nonzero(*E);
          u = rng.nonzero(*E);
          ct = fq::canonical_tuple(f, L, {x, u});
        } while (ct.first != L);
        ClosedPoint<FF> P;
        P.degree = static_cast<int>(L);
        P.coords = ct.second;
        Z.add(P, rng.range(1, 2));
      }
      auto fp = PF::one(f) + pow(PF::x(f), static_cast<unsigned long>(m)) * rng.nonzero_poly(f, 2);
      out.push_back(summarize(kind == 0 ? "F2" : "F3", Z, fp, m));
    } else {
      auto Q = Rationals::instance();
      auto X = tensor(ModulusPair<Rationals>(Q, {false}, {DivisorTerm<Rationals>{0, Poly<Rationals>::x(Q), 1}}),
                      ModulusPair<Rationals>::affine(Q, 1));
      PointCycle<Rationals> Z(X, 0);
      for (long k = 0, n = rng.range(1, 2); k < n; ++k) {
        ClosedPoint<Rationals> P;
        P.coords = {rng.nonzero(*Q), rng.nonzero(*Q)};
        Z.add(P, rng.range(1, 2));
      }
      std::vector<mpq_class> c{1};
      for (int j = 1; j < m; ++j) c.push_back(0);
      for (long j = 0, d = rng.range(1, 2); j < d; ++j) c.push_back(mpq_class(rng.range(-3, 3)));
      if (c.back() == 0) c.back() = 1;
      out.push_back(summarize("Q", Z, Poly<Rationals>(Q, c), m));
    }
  }
  return out;
}

std::vector<TranslationShape> translation_corpus() {
  std::vector<TranslationShape> out;
  for (auto p : {2u, 3u, 5u}) {
    auto f = FF::prime(p);
    std::vector<std::pair<PairF, std::vector<int>>> shapes{
        {p1_inf(f, -1), {0}},
        {p1_inf(f, 1), {0}},
        {p1_inf(f, 2), {0}},
        {p1_inf(f, -2), {0}},
        {tensor(p1_inf(f, 2), p1_inf(f, 1)), {0, 1}},
        {tensor(PairF(f, {false}, {DivisorTerm<FF>{0, PF::x(f), 1}}), tensor(p1_inf(f, 2), p1_inf(f, 2))), {1, 2}},
        {tensor(p1_inf(f, 3), PairF::affine(f, 1)), {0, 1}},
        {tensor(p1_inf(f, 1), p1_inf(f, 1)), {0}},
    };
    for (auto& [Y, coords] : shapes) {
      std::vector<FF::Elem> c(Y.dim(), f->one());
      out.push_back({Y, coords, PointCycle<FF>::rational(Y, 0, c)});
    }
  }
  return out;
}

std::vector<ParamCurve<FF>> face_proper_corpus(std::size_t count, std::uint64_t seed) {
  Rng rng(seed * 49979687 + 11);
  auto f = FF::prime(3);
  auto A = PairF::affine(f, 1);
  std::vector<ParamCurve<FF>> out;
  while (out.size() < count) {
    auto V = try_curve(A, 2, {rng.rf(f, 2), rng.rf(f, 2), rng.rf(f, 1)});
    if (V && check_faces(*V)) out.push_back(*V);
  }
  return out;
}

namespace {

struct Cell {
  int q = 0;
  std::optional<ParamCurve<FF>> curve;
  std::optional<ClosedPoint<FF>> point;
  std::string key;
};
struct CellLess {
  bool operator()(const Cell& a, const Cell& b) const { return std::tie(a.q, a.key) < std::tie(b.q, b.key); }
};

}  // namespace

CubicalGroup curve_cubical_group(const std::vector<ParamCurve<FF>>& curves) {
  if (curves.empty()) throw std::invalid_argument("no curves");
  auto f = curves[0].pair.field_ptr();
  auto A = curves[0].pair;
  std::vector<Cell> gens;
  for (auto& V : curves) {
    if (V.q != 2 || V.n() != 1) throw std::invalid_argument("curves must live in A^1 x box^2");
    gens.push_back(Cell{2, V, std::nullopt, V.to_string()});
  }
  CubicalSaturation<Cell, CellLess> sat;
  sat.degree = [](const Cell& c) { return c.q; };
  sat.face = [&](const Cell& c, int i, int e) {
    typename CubicalSaturation<Cell, CellLess>::Combo out;
    if (!c.curve) return out;  // points of A^1 x box^1 off the faces
    auto z = slice(*c.curve, c.curve->n() + i - 1, f->from_int(e)).cycle;
    if (!check_faces(z)) throw improper_intersection("face point on a face");
    for (auto& [P, m] : z.terms()) out.emplace_back(Cell{1, std::nullopt, P, format_point(f, P)}, m);
    return out;
  };
  sat.degeneracy = [&](const Cell& c, int i) {
    auto K = fq::level(f, c.point->degree);
    std::vector<RF> cs;
    for (auto& v : c.point->coords) cs.push_back(RF(PF::constant(K, v)));
    cs.insert(cs.begin() + A.dim() + (i - 1), RF(PF::x(K)));
    auto V = make_curve(A, 2, cs, 1, true, K, c.point->degree);
    return Cell{2, V, std::nullopt, V.to_string()};
  };
  return sat.run(gens, 2);
}

// ---------------------------------------------------------------- suites

nlohmann::json SuiteReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (auto& c : checks) {
    nlohmann::json j{{"name", c.name}, {"anchor", c.anchor}, {"status", c.passed ? "pass" : "fail"}, {"cases", c.cases}};
    if (!c.passed) j["counterexample"] = c.counterexample;
    arr.push_back(j);
  }
  return {{"checks", arr}, {"pass", pass()}};
}

Scope parse_scope(const std::string& s) {
  if (s == "witt") return Scope::witt;
  if (s == "divisors") return Scope::divisors;
  if (s == "cycles") return Scope::cycles;
  throw std::invalid_argument("unknown scope " + s);
}

SuiteReport witt_selftest(const std::string& field, int m, std::uint64_t seed) {
  SuiteReport rep;
  Rng rng(seed);
  auto f = parse_field(field);
  if (auto* q = std::get_if<FieldPtrQ>(&f)) witt_checks(rep, *q, m, rng, 100);
  else if (auto* p = std::get_if<FieldPtrFq>(&f)) witt_checks(rep, *p, m, rng, 100);
  else throw std::invalid_argument("selftest needs Q or a finite field");
  return rep;
}

SuiteReport run_suite(const std::set<Scope>& scopes, std::uint64_t seed) {
  SuiteReport rep;
  Rng rng(seed);
  if (scopes.count(Scope::witt)) {
    witt_checks(rep, Rationals::instance(), 16, rng, 60);
    for (auto f : {FF::prime(2), FF::prime(3), FF::canonical(2, 2)}) witt_checks(rep, f, 8, rng, 60);
  }
  if (scopes.count(Scope::divisors)) divisor_checks(rep, rng);
  if (scopes.count(Scope::cycles)) cycle_checks(rep, seed);
  return rep;
}

}  // namespace chowmod
