#pragma once

#include "chowmod/cycles.hpp"

namespace chowmod {

// ---------------------------------------------------------------- vanishing of div(1 + u^m k[u])

template <class F>
struct TildeResult {
  std::vector<ParamCurve<F>> curves;  // Z~ on X (x) A^1 (x) minus cube, one per point of Z
  int m_min = 1;
  bool modulus_ok = true;
  bool w_ok = true;
  PointCycle<F> i0, i0_expected;  // i_0^* Z~ and deg f . pr_1^*(i_0^* Z)
  PointCycle<F> i1, i1_expected;  // i_1^* Z~ and div(f) . Z
  PointCycle<F> boundary, boundary_expected;  // d Phi(Z~) and i_1^* - i_0^*
  bool i0_holds = false, i1_holds = false, boundary_identity = false;
};

namespace detail {

template <class F>
std::vector<RatFunc<F>> point_coordinates(const ModulusPair<F>& pair, const ClosedPoint<F>& P,
                                          std::shared_ptr<const F>& K, unsigned& Ld) {
  auto f = pair.field_ptr();
  std::vector<RatFunc<F>> xs;
  if constexpr (is_finite_v<F>) {
    Ld = P.degree;
    K = fq::level(f, Ld);
  } else {
    if (P.degree != 1) throw unsupported_shape("non-rational point over a field without explicit residue fields");
    Ld = 1;
    K = f;
  }
  for (auto& c : P.coords) xs.push_back(constant_rf(K, c));
  return xs;
}

template <class F>
Poly<F> lift_to(const std::shared_ptr<const F>& base, unsigned Ld, const Poly<F>& p) {
  if constexpr (is_finite_v<F>) return fq::lift(base, 1, Ld, p);
  else {
    (void)base;
    (void)Ld;
    return p;
  }
}

}  // namespace detail

// Smallest m >= 1 with V on X (x) A^1 (x) (P^1, -m{0}) admissible; V2 is (x0, u0 t, t).
template <class F>
int tilde_modulus_bound(const PointCycle<F>& Z) {
  auto f = Z.field_ptr();
  int best = 1;
  for (auto& [P, mult] : Z.terms()) {
    std::shared_ptr<const F> K;
    unsigned Ld;
    auto xs = detail::point_coordinates(Z.pair(), P, K, Ld);
    auto u0 = xs.back();
    std::vector<RatFunc<F>> cs(xs.begin(), xs.end() - 1);
    auto t = RatFunc<F>(Poly<F>::x(K));
    cs.push_back(u0 * t);
    cs.push_back(t);
    int m = 1;
    for (; m <= 64; ++m) {
      auto E = ModulusPair<F>(f, {true}, {DivisorTerm<F>{0, Poly<F>::x(f), -static_cast<long>(m)}});
      auto V2 = make_curve(tensor(Z.pair(), E), 0, cs, 1, true, K, Ld);
      if (check_modulus(V2).pass) break;
    }
    if (m > 64) throw std::domain_error("no admissible modulus for the hyperbola");
    best = std::max(best, m);
  }
  return best;
}

// Z a point cycle on X (x) A^1 (the A^1 coordinate last), f in 1 + u^m k[u].
// Z~ : t -> (x0, u0 t, 1/(1 - f(t))) after V1 = hyperbola, V2 = inversion, V3 = F_* j^*, Z~ = tau^* V3.
template <class F>
TildeResult<F> homotopy_chain_tilde(const PointCycle<F>& Z, const Poly<F>& fpoly, int m) {
  auto f = Z.field_ptr();
  const int n = Z.n();
  if (Z.q() != 0) throw unsupported_shape("the tilde homotopy is implemented at q = 0");
  if (n < 1 || Z.pair().compact(n - 1) || std::any_of(Z.pair().terms().begin(), Z.pair().terms().end(),
                                                      [&](auto& t) { return t.coord == n - 1; }))
    throw std::invalid_argument("the last coordinate must be the affine line");
  if (fpoly.degree() < 1 || !f->eq(fpoly.coeff(0), f->one())) throw std::invalid_argument("f must be nonconstant with f(0) = 1");
  if (m < 1 || static_cast<int>((fpoly - Poly<F>::one(f)).low_order()) < m)
    throw std::invalid_argument("f is not congruent to 1 modulo u^m");
  for (auto& [P, mult] : Z.terms()) {
    auto [res, vals] = Residue<F>::of_point(f, P);
    if (res.equals(vals[n - 1], f->zero())) throw w_condition_violated("Z meets {u = 0}");
  }
  TildeResult<F> r;
  r.m_min = tilde_modulus_bound(Z);
  if (m < r.m_min) throw std::invalid_argument("m below the certificate bound " + std::to_string(r.m_min));

  auto pair = tensor(Z.pair(), ModulusPair<F>::minus_cube(f));
  const int y = n;
  r.i0 = r.i0_expected = r.i1 = PointCycle<F>(Z.pair(), 0);
  r.boundary = PointCycle<F>(Z.pair(), 0);
  for (auto& [P, mult] : Z.terms()) {
    std::shared_ptr<const F> K;
    unsigned Ld;
    auto xs = detail::point_coordinates(Z.pair(), P, K, Ld);
    auto t = RatFunc<F>(Poly<F>::x(K));
    auto fl = RatFunc<F>(detail::lift_to(f, Ld, fpoly));
    std::vector<RatFunc<F>> cs(xs.begin(), xs.end() - 1);
    cs.push_back(xs.back() * t);
    cs.push_back(inverse(RatFunc<F>(Poly<F>::one(K)) - fl));
    auto V = make_curve(pair, 0, cs, mult, true, K, Ld);
    r.modulus_ok = r.modulus_ok && check_modulus(V).pass;
    r.w_ok = r.w_ok && w_defects(V).empty() && slice(V, n - 1, f->zero()).cycle.is_zero();
    r.i0 = r.i0 + restrict_to(V, y, f->zero());
    r.i1 = r.i1 + restrict_to(V, y, f->one());
    r.boundary = r.boundary + boundary(phi_shift(V));
    r.curves.push_back(std::move(V));
  }
  // i_0^* Z is empty: Z avoids {u = 0}
  r.i1_expected = witt_action(div_witt(fpoly), Z, n - 1);
  r.boundary_expected = r.i1 - r.i0;
  r.i0_holds = r.i0 == r.i0_expected;
  r.i1_holds = r.i1 == r.i1_expected;
  r.boundary_identity = r.boundary == r.boundary_expected;
  return r;
}

// ---------------------------------------------------------------- powered generic translation

template <class B>
using KField = FunctionField<B>;

template <class B>
ModulusPair<KField<B>> base_change(const ModulusPair<B>& pair, const FunctionFieldPtr<B>& K) {
  std::vector<bool> c;
  for (int i = 0; i < pair.dim(); ++i) c.push_back(pair.compact(i));
  std::vector<DivisorTerm<KField<B>>> ts;
  for (auto& t : pair.terms()) {
    DivisorTerm<KField<B>> s{t.coord, std::nullopt, t.coeff};
    if (t.at) s.at = embed_constants(*t.at, K);
    ts.push_back(s);
  }
  return ModulusPair<KField<B>>(K, std::move(c), std::move(ts));
}

template <class B>
PointCycle<KField<B>> base_change(const PointCycle<B>& Z, const FunctionFieldPtr<B>& K) {
  PointCycle<KField<B>> r(base_change(Z.pair(), K), Z.q());
  for (auto& [P, m] : Z.terms()) {
    if (P.degree != 1) throw unsupported_shape("translation of a non-rational point");
    ClosedPoint<KField<B>> Q;
    for (auto& c : P.coords) Q.coords.push_back(K->constant(c));
    r.add(Q, m);
  }
  return r;
}

template <class B>
struct TranslationReport {
  using K = KField<B>;
  FunctionFieldPtr<B> field;
  std::vector<ParamCurve<K>> h_d, h_d1;  // h^d and h^{d+1}; H = h^{d+1} - h^d
  ModulusCertificate cert_d, cert_d1;
  int d = 1;
  int d_V = 1;
  bool c_holds = false;        // i_0^* H = V_K
  bool a_holds = false;        // d H = (-1)^{q+1} (i_1^* H - i_0^* H) at q = 0
  bool a_plus_sign = false;    // the same with sign +1
  bool b_holds = false;        // i_1^* H avoids every member of w
  bool d_holds = false;        // H admissible iff d >= d_V
  bool generic_point_checked = false;  // G_a case: one translated coordinate
  PointCycle<K> i0, i1;
};

// Faces of Y° that i_1^* H must avoid: each is a list of (coordinate, value) constraints.
template <class B>
using FaceList = std::vector<std::vector<std::pair<int, typename B::Elem>>>;

namespace detail {

template <class B>
std::vector<ParamCurve<KField<B>>> translation_curves(const PointCycle<B>& V, const ModulusPair<KField<B>>& pairK,
                                                      const FunctionFieldPtr<B>& K, const std::vector<int>& coords,
                                                      const std::vector<long>& dir, int d) {
  using KF = KField<B>;
  std::vector<ParamCurve<KF>> out;
  auto tau = RatFunc<KF>(Poly<KF>::x(K));
  for (auto& [P, m] : V.terms()) {
    if (P.degree != 1) throw unsupported_shape("translation of a non-rational point");
    std::vector<RatFunc<KF>> cs;
    for (auto& c : P.coords) cs.push_back(constant_rf(K, K->constant(c)));
    for (std::size_t k = 0; k < coords.size(); ++k) {
      auto shift = K->mul(K->variable(), K->from_int(dir[k]));
      cs[coords[k]] = cs[coords[k]] - tau * constant_rf(K, shift);
    }
    cs.push_back(RatFunc<KF>(pow(Poly<KF>::x(K), static_cast<unsigned long>(d))));
    out.push_back(make_curve(pairK, 1, cs, m));
  }
  return out;
}

}  // namespace detail

// V a point cycle on Y = X (x) cubes (q = 0); coords are the translated cube coordinates of Y.
// h^d(V) : tau -> (x0, s0 - tau v dir; tau^d), the pushforward of Psi^*(V_K x A^1) along tau -> tau^d.
template <class B>
TranslationReport<B> generic_translation_H(const PointCycle<B>& V, const std::vector<int>& coords,
                                           const std::vector<long>& dir, int d, const FaceList<B>& w = {}) {
  using KF = KField<B>;
  if (V.q() != 0) throw unsupported_shape("generic translation is implemented at q = 0");
  if (d < 1) throw std::invalid_argument("d must be >= 1");
  if (coords.empty() || coords.size() != dir.size()) throw std::invalid_argument("one direction entry per translated coordinate");
  for (auto c : dir)
    if (c == 0) throw std::invalid_argument("direction vector with a zero entry");
  for (auto i : coords) {
    if (i < 0 || i >= V.n()) throw std::invalid_argument("translated coordinate out of range");
    for (auto& t : V.pair().terms())
      if (t.coord == i && t.at) throw std::invalid_argument("translated coordinate must be a cube factor");
  }
  auto base = V.field_ptr();
  auto K = std::make_shared<const KF>(base, "v");
  auto pairK = base_change(V.pair(), K);
  TranslationReport<B> r;
  r.field = K;
  r.d = d;
  r.h_d = detail::translation_curves(V, pairK, K, coords, dir, d);
  r.h_d1 = detail::translation_curves(V, pairK, K, coords, dir, d + 1);

  auto passes = [](const std::vector<ParamCurve<KF>>& cs, ModulusCertificate* out) {
    bool ok = true;
    ModulusCertificate all;
    for (auto& c : cs) {
      auto cert = check_modulus(c);
      ok = ok && cert.pass;
      all.entries.insert(all.entries.end(), cert.entries.begin(), cert.entries.end());
    }
    all.pass = ok;
    if (out) *out = all;
    return ok;
  };
  bool pd = passes(r.h_d, &r.cert_d), pd1 = passes(r.h_d1, &r.cert_d1);
  r.d_V = 0;
  std::vector<bool> ok_at(1, false);
  for (int e = 1; e <= 64 && !r.d_V; ++e) {
    ok_at.push_back(passes(detail::translation_curves(V, pairK, K, coords, dir, e), nullptr));
    if (e >= 2 && ok_at[e - 1] && ok_at[e]) r.d_V = e - 1;
  }
  if (!r.d_V) throw std::domain_error("no admissible power of the translation");
  r.d_holds = (pd && pd1) == (d >= r.d_V);

  const int n = V.n();
  auto one = K->one(), zero = K->zero();
  PointCycle<KF> i0(pairK, 0), i1(pairK, 0), dH(pairK, 0);
  for (auto [cs, sign] : {std::pair{&r.h_d1, 1L}, std::pair{&r.h_d, -1L}}) {
    for (auto& c : *cs) {
      i0 = i0 + slice(c, n, zero).cycle.scaled(sign);
      i1 = i1 + slice(c, n, one).cycle.scaled(sign);
      dH = dH + boundary(c).scaled(sign);
    }
  }
  r.i0 = i0;
  r.i1 = i1;
  r.c_holds = i0 == base_change(V, K);
  r.a_holds = dH == -(i1 - i0);
  r.a_plus_sign = dH == i1 - i0;

  FaceList<B> faces = w;
  if (faces.empty())
    for (auto i : coords)
      for (long e = 0; e < 2; ++e) faces.push_back({{i, base->from_int(e)}});
  r.b_holds = true;
  for (auto* cs : {&r.h_d, &r.h_d1})
    for (auto& c : *cs) {
      auto pts = slice(c, n, one).cycle;
      for (auto& [P, m] : pts.terms()) {
        auto [res, vals] = Residue<KF>::of_point(K, P);
        for (auto& W : faces) {
          bool inside = true;
          for (auto& [i, val] : W) inside = inside && res.equals(vals.at(i), K->constant(val));
          if (inside) r.b_holds = false;
        }
      }
    }
  r.generic_point_checked = coords.size() == 1;
  return r;
}

}  // namespace chowmod
