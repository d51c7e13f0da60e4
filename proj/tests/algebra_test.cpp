#include <gtest/gtest.h>

#include "chowmod/extension.hpp"
#include "chowmod/linalg.hpp"
#include "chowmod/place.hpp"
#include "gen.hpp"

namespace chowmod {
namespace {

using testgen::Gen;
using PQ = Poly<Rationals>;
using PF = Poly<FiniteField>;

auto Q() { return Rationals::instance(); }

PQ qpoly(std::string_view s) { return parse_poly(Q(), s, "t"); }

// Sylvester determinant, an independent resultant oracle
template <class F>
typename F::Elem sylvester(const Poly<F>& p, const Poly<F>& q) {
  const F& f = p.field();
  int m = p.degree(), n = q.degree();
  std::size_t N = m + n;
  std::vector<std::vector<typename F::Elem>> a(N, std::vector<typename F::Elem>(N, f.zero()));
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) a[r][r + i] = p.coeff(m - i);
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) a[n + r][r + i] = q.coeff(n - i);
  return determinant(f, a);
}

TEST(Resultant, LinearCase) {
  // Res(t-a, t-b) = (t-b)(a) = a-b
  EXPECT_EQ(resultant(qpoly("t-3"), qpoly("t-2")), 1);
  EXPECT_EQ(resultant(qpoly("t-2"), qpoly("t-3")), -1);
  EXPECT_EQ(resultant(qpoly("t-5"), qpoly("t+1")), 6);
}

TEST(Resultant, ConstantSecondArgument) {
  Gen g(1);
  for (int i = 0; i < 20; ++i) {
    auto p = g.nonzero_poly(Q(), 5);
    EXPECT_EQ(resultant(p, PQ::one(Q())), 1);
  }
}

TEST(Resultant, QuadraticsMatchSylvester) {
  auto p = qpoly("t^2+1"), q = qpoly("t^2-2");
  EXPECT_EQ(sylvester(p, q), 9);
  EXPECT_EQ(resultant(p, q), 9);
}

TEST(Resultant, RandomAgreesWithSylvester) {
  Gen g(2);
  for (int i = 0; i < 200; ++i) {
    auto p = g.nonzero_poly(Q(), 5), q = g.nonzero_poly(Q(), 5);
    if (p.degree() + q.degree() == 0) continue;
    ASSERT_EQ(resultant(p, q), sylvester(p, q)) << p.to_string() << " ; " << q.to_string();
  }
  auto f7 = FiniteField::canonical(7, 2);
  for (int i = 0; i < 200; ++i) {
    auto p = g.nonzero_poly(f7, 6), q = g.nonzero_poly(f7, 6);
    if (p.degree() + q.degree() == 0) continue;
    ASSERT_EQ(resultant(p, q), sylvester(p, q));
  }
}

TEST(Resultant, MultiplicativeOverF5) {
  Gen g(3);
  auto f = FiniteField::prime(5);
  for (int i = 0; i < 500; ++i) {
    auto p = g.nonzero_poly(f, 5), q = g.nonzero_poly(f, 5), r = g.nonzero_poly(f, 5);
    ASSERT_EQ(resultant(p, q * r), f->mul(resultant(p, q), resultant(p, r)));
    ASSERT_EQ(resultant(q * r, p), f->mul(resultant(q, p), resultant(r, p)));
  }
}

TEST(Resultant, FieldMismatch) {
  auto a = PF::x(FiniteField::prime(3)), b = PF::x(FiniteField::prime(5));
  EXPECT_THROW(resultant(a, b), field_mismatch);
}

TEST(Factor, Examples) {
  auto f3 = FiniteField::prime(3);
  auto r = factor(parse_poly(f3, "u^2-1"));
  ASSERT_EQ(r.factors.size(), 2u);
  EXPECT_EQ(r.factors[0].first, parse_poly(f3, "u+1"));
  EXPECT_EQ(r.factors[1].first, parse_poly(f3, "u-1"));
  EXPECT_EQ(r.lc, f3->one());

  auto f2 = FiniteField::prime(2);
  auto s = factor(parse_poly(f2, "u^2+u+1"));
  ASSERT_EQ(s.factors.size(), 1u);
  EXPECT_EQ(s.factors[0].second, 1);

  auto q = factor(parse_poly(Q(), "2u^2-2"));
  ASSERT_EQ(q.factors.size(), 2u);
  EXPECT_EQ(q.lc, 2);
  EXPECT_EQ(q.factors[0].first, parse_poly(Q(), "u-1"));
  EXPECT_EQ(q.factors[1].first, parse_poly(Q(), "u+1"));
}

// no roots and degree <= 3 means irreducible; exhaustive root search as oracle
TEST(Factor, LowDegreeIrreducibilityByRootSearch) {
  for (auto f : {FiniteField::prime(2), FiniteField::prime(3), FiniteField::canonical(2, 2), FiniteField::prime(5)}) {
    Gen g(f->size());
    for (int i = 0; i < 200; ++i) {
      int d = static_cast<int>(g.range(2, 3));
      auto p = g.monic(f, d);
      bool has_root = false;
      for (std::uint64_t c = 0; c < f->size(); ++c) has_root |= f->is_zero(p.eval(f->element(c)));
      ASSERT_EQ(is_irreducible(p), !has_root) << p.to_string();
    }
  }
}

template <class F>
void check_factorization(const Poly<F>& p, const Factorization<F>& r) {
  ASSERT_EQ(r.expand(p.field_ptr()), p);
  for (std::size_t i = 0; i < r.factors.size(); ++i) {
    EXPECT_TRUE(r.factors[i].first.is_monic());
    EXPECT_GE(r.factors[i].second, 1);
    if (i) EXPECT_LT(r.factors[i - 1].first.compare(r.factors[i].first), 0);
  }
}

TEST(Factor, RoundTripFiniteFields) {
  Gen g(4);
  for (auto f : {FiniteField::prime(2), FiniteField::prime(3), FiniteField::canonical(2, 2), FiniteField::canonical(3, 2),
                 FiniteField::prime(5), FiniteField::canonical(2, 3)}) {
    for (int i = 0; i < 100; ++i) {
      auto p = g.nonzero_poly(f, 3) * g.nonzero_poly(f, 4) * g.nonzero_poly(f, 2);
      p = p * p.derivative().monic().compose(PF::x(f)) ;
      if (p.is_zero()) continue;
      auto r = factor(p);
      check_factorization(p, r);
      for (auto& [h, e] : r.factors) ASSERT_TRUE(is_irreducible(h));
    }
  }
}

TEST(Factor, RoundTripRationals) {
  Gen g(5);
  for (int i = 0; i < 100; ++i) {
    auto p = g.nonzero_poly(Q(), 2) * g.nonzero_poly(Q(), 2) * g.nonzero_poly(Q(), 3);
    auto r = factor(p);
    check_factorization(p, r);
    for (auto& [h, e] : r.factors) ASSERT_LE(h.degree(), 4);
  }
}

TEST(Factor, RationalsIrreducibleQuartic) {
  auto p = qpoly("t^4+1");
  auto r = factor(p);
  ASSERT_EQ(r.factors.size(), 1u);
  EXPECT_TRUE(is_irreducible(p));
  auto s = factor(qpoly("t^4-4"));  // (t^2-2)(t^2+2)
  ASSERT_EQ(s.factors.size(), 2u);
}

TEST(Factor, RationalsBoundExceeded) {
  EXPECT_THROW(factor(qpoly("t^5-t-1")), factorization_incomplete);
  EXPECT_EQ(factor(qpoly("t^5-t-1"), 0).factors.size(), 1u);
}

TEST(Factor, SquarefreeCharacteristicP) {
  auto f = FiniteField::prime(3);
  auto p = pow(parse_poly(f, "u+1"), 3) * pow(parse_poly(f, "u^2+1"), 2);
  auto r = factor(p);
  ASSERT_EQ(r.factors.size(), 2u);
  EXPECT_EQ(r.factors[0].second, 3);
  EXPECT_EQ(r.factors[1].second, 2);
}

TEST(Factor, CountIrreduciblesByNecklaceFormula) {
  // number of monic irreducibles of degree d over F_q: (1/d) sum mu(d/e) q^e
  auto f = FiniteField::canonical(2, 2);
  EXPECT_EQ(monic_irreducibles(f, 1).size(), 4u);
  EXPECT_EQ(monic_irreducibles(f, 2).size(), 6u);
  EXPECT_EQ(monic_irreducibles(f, 3).size(), 20u);
  EXPECT_EQ(monic_irreducibles(FiniteField::prime(3), 4).size(), 18u);
}

TEST(Valuation, Examples) {
  auto t = RatFunc<Rationals>(PQ::x(Q()));
  EXPECT_EQ(valuation(t, PlaceP1<Rationals>::rational(Q(), 0)), 1);
  auto f = parse_ratfunc(Q(), "1/(t-1)^2");
  EXPECT_EQ(valuation(f, PlaceP1<Rationals>::rational(Q(), 1)), -2);
  auto g = parse_ratfunc(Q(), "(t^2+1)/t");
  EXPECT_EQ(valuation(g, PlaceP1<Rationals>::infinity()), -1);
  // oracle: g(1/s) = (1+s^2)/s has order -1 at s = 0
  auto s = parse_ratfunc(Q(), "1/t");
  EXPECT_EQ(valuation(compose(g, s), PlaceP1<Rationals>::rational(Q(), 0)), -1);
  EXPECT_EQ(valuation(parse_ratfunc(Q(), "(t^2+1)^3/(t-2)"), PlaceP1<Rationals>::finite(qpoly("t^2+1"))), 3);
}

TEST(Valuation, InfinityMatchesSubstitution) {
  Gen g(6);
  auto s = parse_ratfunc(Q(), "1/t");
  for (int i = 0; i < 100; ++i) {
    RatFunc<Rationals> f(g.nonzero_poly(Q(), 4), g.nonzero_poly(Q(), 4));
    EXPECT_EQ(valuation(f, PlaceP1<Rationals>::infinity()), valuation(compose(f, s), PlaceP1<Rationals>::rational(Q(), 0)));
  }
}

TEST(Valuation, DegreeSumVanishes) {
  Gen g(7);
  for (auto f : {FiniteField::prime(2), FiniteField::prime(3), FiniteField::canonical(2, 2), FiniteField::prime(7)}) {
    for (int i = 0; i < 100; ++i) {
      RatFunc<FiniteField> r(g.nonzero_poly(f, 6), g.nonzero_poly(f, 6));
      long sum = 0;
      for (auto& [P, v] : principal_divisor(r)) {
        ASSERT_EQ(v, valuation(r, P));
        sum += long(v) * P.degree();
      }
      ASSERT_EQ(sum, 0);
    }
  }
}

TEST(Valuation, ZeroThrows) {
  EXPECT_THROW(valuation(RatFunc<Rationals>(PQ(Q())), PlaceP1<Rationals>::infinity()), std::invalid_argument);
}

TEST(Extension, F4NormByMultiplicationTable) {
  auto f2 = FiniteField::prime(2);
  auto ext = Extension::field_extend(f2, parse_poly(f2, "u^2+u+1"));
  const auto& F4 = *ext.big();
  ASSERT_EQ(F4.size(), 4u);
  auto u = ext.root();
  // exhaustive table oracle: u*u*u
  EXPECT_EQ(F4.mul(F4.mul(u, u), u), F4.one());
  EXPECT_EQ(ext.norm(u), f2->one());
  EXPECT_EQ(ext.norm(F4.one()), f2->one());
  // every element: norm = x^(1+2) restricted
  for (std::uint32_t c = 0; c < 4; ++c) {
    auto x = F4.element(c);
    EXPECT_EQ(ext.embed(ext.norm(x)), F4.mul(x, F4.mul(x, x)));
  }
}

TEST(Extension, RootsOfT2PlusTPlus1OverF4) {
  auto f4 = FiniteField::with_modulus(2, {1, 1, 1}, "u");
  auto p = parse_poly(f4, "t^2+t+1", "t");
  std::vector<FiniteField::Elem> brute;
  for (std::uint32_t c = 0; c < 4; ++c)
    if (f4->is_zero(p.eval(f4->element(c)))) brute.push_back(f4->element(c));
  auto r = roots(p);
  std::sort(r.begin(), r.end());
  EXPECT_EQ(r, brute);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(f4->format(r[0]), "u");
  EXPECT_EQ(f4->format(r[1]), "u+1");
}

TEST(Extension, ReducibleModulusRejected) {
  auto f3 = FiniteField::prime(3);
  EXPECT_THROW(Extension::field_extend(f3, parse_poly(f3, "u^2-1")), std::invalid_argument);
}

TEST(Extension, EmbeddingIsRingHomomorphism) {
  Gen g(8);
  auto f4 = FiniteField::canonical(2, 2);
  auto ext = Extension::of_degree(f4, 3);
  const auto& B = *ext.big();
  for (int i = 0; i < 200; ++i) {
    auto a = g.elem(*f4), b = g.elem(*f4);
    ASSERT_EQ(ext.embed(f4->add(a, b)), B.add(ext.embed(a), ext.embed(b)));
    ASSERT_EQ(ext.embed(f4->mul(a, b)), B.mul(ext.embed(a), ext.embed(b)));
    auto x = g.elem(B), y = g.nonzero(B);
    ASSERT_EQ(ext.from_basis(ext.to_basis(x)), x);
    ASSERT_EQ(ext.norm(B.mul(x, y)), f4->mul(ext.norm(x), ext.norm(y)));
    ASSERT_EQ(ext.trace(B.add(x, y)), f4->add(ext.trace(x), ext.trace(y)));
    auto mp = ext.minpoly(x);
    ASSERT_TRUE(B.is_zero(ext.embed(mp).eval(x)));
    ASSERT_TRUE(is_irreducible(mp));
  }
}

TEST(Extension, TowerComposition) {
  auto f2 = FiniteField::prime(2);
  auto a = Extension::of_degree(f2, 2);
  auto b = Extension::of_degree(a.big(), 3);
  auto c = Extension::compose(a, b);
  EXPECT_EQ(c.degree(), 6u);
  EXPECT_EQ(c.big()->size(), 64u);
  Gen g(9);
  for (int i = 0; i < 50; ++i) {
    auto x = g.elem(*c.big());
    EXPECT_EQ(c.norm(x), a.norm(b.norm(x)));
  }
}

// Field axioms on random triples for every descriptor kind.
template <class F>
void field_axioms(const F& f, Gen& g, int n) {
  for (int i = 0; i < n; ++i) {
    auto a = g.elem(f), b = g.elem(f), c = g.elem(f);
    ASSERT_TRUE(f.eq(f.add(a, b), f.add(b, a)));
    ASSERT_TRUE(f.eq(f.mul(a, b), f.mul(b, a)));
    ASSERT_TRUE(f.eq(f.add(f.add(a, b), c), f.add(a, f.add(b, c))));
    ASSERT_TRUE(f.eq(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c))));
    ASSERT_TRUE(f.eq(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c))));
    ASSERT_TRUE(f.eq(f.add(a, f.zero()), a));
    ASSERT_TRUE(f.eq(f.mul(a, f.one()), a));
    ASSERT_TRUE(f.is_zero(f.add(a, f.neg(a))));
    ASSERT_TRUE(f.eq(f.sub(a, b), f.add(a, f.neg(b))));
    if (!f.is_zero(a)) {
      ASSERT_TRUE(f.eq(f.mul(a, f.inv(a)), f.one()));
      ASSERT_TRUE(f.eq(f.div(b, a), f.mul(b, f.inv(a))));
    }
    // canonical form: equal values are equal representations
    ASSERT_TRUE(f.eq(parse_elem(f, f.format(a)), a)) << f.format(a);
  }
  EXPECT_THROW(f.inv(f.zero()), division_by_zero);
}

TEST(FieldAxioms, EveryKind) {
  Gen g(10);
  field_axioms(*Q(), g, 300);
  for (auto [p, e] : std::vector<std::pair<int, int>>{{2, 1}, {7, 1}, {2, 2}, {2, 3}, {3, 2}, {5, 2}, {2, 8}})
    field_axioms(*FiniteField::canonical(p, e), g, 300);
  field_axioms(*FiniteField::with_modulus(3, {1, 0, 1}, "x"), g, 300);
  field_axioms(FunctionField<Rationals>(Q(), "v"), g, 100);
  field_axioms(FunctionField<FiniteField>(FiniteField::prime(3), "v"), g, 100);
  field_axioms(FunctionField<FiniteField>(FiniteField::canonical(2, 2), "v"), g, 100);
}

TEST(FiniteField, CharacteristicTwoAndOrders) {
  for (auto [p, e] : std::vector<std::pair<int, int>>{{2, 4}, {3, 3}, {5, 2}, {13, 1}}) {
    auto f = FiniteField::canonical(p, e);
    auto g = f->primitive();
    std::uint64_t ord = 1;
    for (auto x = g; x != f->one(); x = f->mul(x, g)) ++ord;
    EXPECT_EQ(ord, f->size() - 1);
    EXPECT_TRUE(f->is_zero(f->from_int(p)));
  }
}

TEST(Parse, FieldDescriptors) {
  EXPECT_EQ(describe(parse_field("Q")), "Q");
  EXPECT_EQ(describe(parse_field("F2")), "F2");
  EXPECT_EQ(describe(parse_field("F9=F3[x]/(x^2+1)")), "F9=F3[x]/(x^2+1)");
  EXPECT_EQ(describe(parse_field("Q(v)")), "Q(v)");
  EXPECT_EQ(describe(parse_field("F3(v)")), "F3(v)");
  EXPECT_THROW(parse_field("F6"), parse_error);
  EXPECT_THROW(parse_field("F9=F3[x]/(x^2-1)"), std::invalid_argument);
  EXPECT_THROW(parse_field("F8=F3[x]/(x^3+x+1)"), parse_error);
  EXPECT_THROW(parse_field("R"), parse_error);
}

TEST(Parse, CoefficientLists) {
  auto f3 = FiniteField::prime(3);
  auto p = parse_coeff_list(f3, "1,0,2");
  EXPECT_EQ(p, parse_poly(f3, "1+2u^2"));
  EXPECT_EQ(format_coeff_list(p), "1,0,2");
  auto f9 = std::get<FieldPtrFq>(parse_field("F9=F3[x]/(x^2+1)"));
  auto q = parse_coeff_list(f9, "x+1,2x,0,1");
  EXPECT_EQ(parse_coeff_list(f9, format_coeff_list(q)), q);
  EXPECT_THROW(parse_coeff_list(f3, "1,,2"), parse_error);
  EXPECT_THROW(parse_elem(*Q(), "1/0"), parse_error);
  EXPECT_EQ(parse_elem(*Q(), "-3/6 + 2^-1"), 0);
  EXPECT_EQ(parse_elem(*f9, "x^2"), f9->from_int(-1));
}

}  // namespace
}  // namespace chowmod
