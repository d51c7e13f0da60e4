#include <gtest/gtest.h>

#include <numeric>

#include "chowmod/cubical.hpp"
#include "cubical_gen.hpp"
#include "gen.hpp"

namespace chowmod {
namespace {

using testgen::Gen;
using testgen::random_instance;
using testgen::random_unimodular;

IntMatrix random_matrix(Gen& g, std::size_t r, std::size_t c, long h) {
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = g.range(-h, h);
  return m;
}

// gcd of all k x k minors (determinantal divisors), brute force
mpz_class minor_gcd(const IntMatrix& m, std::size_t k) {
  mpz_class g = 0;
  std::vector<std::size_t> rs(k), cs(k);
  std::function<void(std::size_t, std::size_t)> pick_c;
  std::function<void(std::size_t, std::size_t)> pick_r = [&](std::size_t idx, std::size_t start) {
    if (idx == k) return pick_c(0, 0);
    for (std::size_t i = start; i < m.rows(); ++i) rs[idx] = i, pick_r(idx + 1, i + 1);
  };
  pick_c = [&](std::size_t idx, std::size_t start) {
    if (idx == k) {
      IntMatrix s(k, k);
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) s(a, b) = m(rs[a], cs[b]);
      mpz_class d = determinant(s);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      return;
    }
    for (std::size_t j = start; j < m.cols(); ++j) cs[idx] = j, pick_c(idx + 1, j + 1);
  };
  pick_r(0, 0);
  return g;
}

TEST(Smith, Examples) {
  EXPECT_EQ(smith_normal_form(IntMatrix{{2}}).S, (IntMatrix{{2}}));
  auto s = smith_normal_form(IntMatrix{{2, 0}, {0, 3}});
  EXPECT_EQ(s.S, (IntMatrix{{1, 0}, {0, 6}}));
  EXPECT_EQ(smith_normal_form(IntMatrix::identity(3)).S, IntMatrix::identity(3));
  // oracle: d1 = gcd of entries, d1 d2 = gcd of 2x2 minors
  IntMatrix m{{2, 0}, {0, 3}};
  EXPECT_EQ(minor_gcd(m, 1), 1);
  EXPECT_EQ(minor_gcd(m, 2), 6);
}

TEST(Smith, RandomAgainstMinors) {
  Gen g(31);
  for (int t = 0; t < 200; ++t) {
    std::size_t r = g.range(1, 4), c = g.range(1, 4);
    auto m = random_matrix(g, r, c, 6);
    auto s = smith_normal_form(m);
    ASSERT_EQ(s.U * m * s.V, s.S);
    ASSERT_EQ(abs(determinant(s.U)), 1);
    ASSERT_EQ(abs(determinant(s.V)), 1);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (i != j) ASSERT_EQ(s.S(i, j), 0);
    mpz_class prod = 1;
    for (std::size_t k = 0; k < std::min(r, c); ++k) {
      mpz_class want = minor_gcd(m, k + 1);
      if (k < s.rank()) {
        if (k) ASSERT_TRUE(mpz_divisible_p(s.diagonal[k].get_mpz_t(), s.diagonal[k - 1].get_mpz_t()));
        prod *= s.diagonal[k];
        ASSERT_EQ(prod, want);
      } else {
        ASSERT_EQ(want, 0);
      }
    }
  }
}

TEST(Smith, LargeEntries) {
  IntMatrix m{{1 << 30, 3}, {7, 1 << 29}};
  auto s = smith_normal_form(m);
  EXPECT_EQ(s.U * m * s.V, s.S);
  EXPECT_EQ(s.diagonal[0] * s.diagonal[1], abs(determinant(m)));
}

TEST(Homology, Examples) {
  ChainComplex c(0, {1, 1}, {{1, IntMatrix{{2}}}});
  EXPECT_EQ(homology(c, 0), (HomologyGroup{0, {2}}));
  EXPECT_EQ(homology(c, 1), (HomologyGroup{0, {}}));
  ChainComplex e(0, {1, 1}, {{1, IntMatrix{{1}}}});
  EXPECT_EQ(homology(e, 0), HomologyGroup{});
  EXPECT_EQ(homology(e, 1), HomologyGroup{});
  ChainComplex f(0, {2, 2}, {{1, IntMatrix{{2, 0}, {0, 3}}}});
  EXPECT_EQ(homology(f, 0), (HomologyGroup{0, {6}}));
  EXPECT_EQ(homology(f, 0).to_string(), "Z/6");
  ChainComplex bad(0, {1, 1, 1}, {{1, IntMatrix{{1}}}, {2, IntMatrix{{1}}}});
  EXPECT_THROW(homology(bad, 1), complex_error);
}

TEST(Differential, Examples) {
  // constant cubical group: every structure map is the identity
  CubicalGroup a({1, 1, 1, 1});
  for (int q = 1; q <= 3; ++q)
    for (int i = 1; i <= q; ++i) {
      a.face(q, i, 0) = a.face(q, i, 1) = a.degeneracy(q, i) = IntMatrix::identity(1);
    }
  auto c = alternating_differential(a);
  for (int q = 1; q <= 3; ++q) EXPECT_TRUE(c.boundary(q).is_zero());
  for (int q = 0; q <= 2; ++q) EXPECT_EQ(homology(c, q), (HomologyGroup{1, {}}));
  // normalized part vanishes above degree 0
  EXPECT_EQ(split_degenerate(a, 0).reduced_rank, 1u);
  EXPECT_EQ(split_degenerate(a, 2).reduced_rank, 0u);
}

TEST(Differential, RejectsIdentityViolation) {
  CubicalGroup a({1, 1});
  a.face(1, 1, 0) = a.face(1, 1, 1) = IntMatrix::identity(1);
  a.degeneracy(1, 1) = IntMatrix{{2}};
  EXPECT_TRUE(a.identity_violation().has_value());
  EXPECT_THROW(alternating_differential(a), complex_error);
}

TEST(StandardCube, CountsAndContractible) {
  EXPECT_EQ(standard_cube_count(1, 0), 2u);
  EXPECT_EQ(standard_cube_count(1, 1), 3u);
  EXPECT_EQ(standard_cube_count(2, 2), 4u + 2 * 2 * 2 + 1);
  for (int n = 0; n <= 2; ++n) {
    auto a = standard_cube(n, 3);
    for (int q = 0; q <= 3; ++q) EXPECT_EQ(a.rank(q), standard_cube_count(n, q));
    auto c = alternating_differential(a);
    std::map<int, IntMatrix> p0;
    for (int q = 0; q <= 3; ++q) p0[q] = split_degenerate(a, q).reduced;
    auto red = image_subcomplex(c, p0);
    // normalized chains of a cube: contractible
    EXPECT_EQ(homology(red, 0), (HomologyGroup{1, {}}));
    for (int q = 1; q < 3; ++q) EXPECT_EQ(homology(red, q), HomologyGroup{});
  }
}

TEST(StandardCube, BoundaryOfSquareIsACircle) {
  // the four edges of the 2-cube: words *0, *1, 0*, 1* (sorted positions 0, 1, 2, 5 at q = 1)
  auto a = standard_cube_generated(2, 2, {{1, 0}, {1, 1}, {1, 2}, {1, 5}});
  auto c = alternating_differential(a);
  std::map<int, IntMatrix> p0;
  for (int q = 0; q <= 2; ++q) p0[q] = split_degenerate(a, q).reduced;
  auto red = image_subcomplex(c, p0);
  EXPECT_EQ(homology(red, 0), (HomologyGroup{1, {}}));
  EXPECT_EQ(homology(red, 1), (HomologyGroup{1, {}}));
}

TEST(CubicalProperties, RandomInstances) {
  Gen g(32);
  for (int t = 0; t < 50; ++t) {
    auto [a, top] = random_instance(g);
    ASSERT_FALSE(a.identity_violation().has_value());
    auto c = alternating_differential(a);
    ASSERT_TRUE(c.is_complex());
    std::map<int, IntMatrix> p0, pd;
    for (int q = 0; q <= top; ++q) {
      auto s = split_degenerate(a, q);
      auto I = IntMatrix::identity(a.rank(q));
      ASSERT_EQ(s.reduced * s.reduced, s.reduced);
      ASSERT_EQ(s.degenerate * s.degenerate, s.degenerate);
      ASSERT_TRUE((s.reduced * s.degenerate).is_zero());
      ASSERT_EQ(s.reduced + s.degenerate, I);
      // brute force: rank of the intersection of face kernels, rank of the sum of degeneracy images
      std::size_t ker = a.rank(q), img = 0;
      if (q > 0) {
        std::vector<std::vector<mpz_class>> rows, cols;
        for (int i = 1; i <= q; ++i) {
          const auto& f = a.face(q, i, 0);
          for (std::size_t r = 0; r < f.rows(); ++r) rows.push_back(f.row(r));
          const auto& p = a.degeneracy(q, i);
          for (std::size_t cc = 0; cc < p.cols(); ++cc) cols.push_back(p.column(cc));
        }
        ker -= rank(IntMatrix::from_rows(rows, a.rank(q)));
        img = rank(IntMatrix::from_rows(cols, a.rank(q)));
      }
      ASSERT_EQ(s.reduced_rank, ker);
      ASSERT_EQ(s.degenerate_rank, img);
      // degenerate summand contains every pi_i(x)
      for (int i = 1; i <= q; ++i) ASSERT_TRUE((s.reduced * a.degeneracy(q, i)).is_zero());
      p0[q] = s.reduced;
      pd[q] = s.degenerate;
    }
    for (int q = 1; q <= top; ++q) {
      ASSERT_EQ(c.boundary(q) * p0[q], p0[q - 1] * c.boundary(q));
      ASSERT_EQ(c.boundary(q) * pd[q], pd[q - 1] * c.boundary(q));
    }
    auto red = image_subcomplex(c, p0), deg = image_subcomplex(c, pd);
    for (int q = 0; q < top; ++q) {
      auto h = homology(c, q);
      ASSERT_EQ(h, direct_sum(homology(red, q), homology(deg, q))) << "q=" << q;
      // basis invariance
      std::map<int, std::pair<IntMatrix, IntMatrix>> G;
      for (int r = 0; r <= top; ++r) G[r] = random_unimodular(g, c.rank(r));
      std::map<int, IntMatrix> d2;
      std::vector<std::size_t> ranks;
      for (int r = 0; r <= top; ++r) ranks.push_back(c.rank(r));
      for (int r = 1; r <= top; ++r) d2[r] = G[r - 1].second * c.boundary(r) * G[r].first;
      ChainComplex c2(0, ranks, d2);
      ASSERT_EQ(homology(c2, q), h);
    }
  }
}

TEST(CubicalProperties, TorsionSurvivesBasisChange) {
  Gen g(33);
  for (int t = 0; t < 50; ++t) {
    std::size_t n0 = g.range(1, 4), n1 = g.range(1, 4), n2 = g.range(1, 3);
    // d1 d2 = 0 by construction: d2 = K X for a kernel basis K of d1
    auto d1 = random_matrix(g, n0, n1, 5);
    auto K = kernel_basis(d1);
    auto X = random_matrix(g, K.cols(), n2, 3);
    auto d2 = K * X;
    ChainComplex c(0, {n0, n1, n2}, {{1, d1}, {2, d2}});
    ASSERT_TRUE(c.is_complex());
    for (int q = 0; q <= 2; ++q) {
      auto h = homology(c, q);
      std::vector<std::pair<IntMatrix, IntMatrix>> G;
      for (auto n : {n0, n1, n2}) G.push_back(random_unimodular(g, n));
      ChainComplex c2(0, {n0, n1, n2}, {{1, G[0].second * d1 * G[1].first}, {2, G[1].second * d2 * G[2].first}});
      ASSERT_EQ(homology(c2, q), h);
    }
    long chi = long(n0) - long(n1) + long(n2);
    long hchi = long(homology(c, 0).free_rank) - long(homology(c, 1).free_rank) + long(homology(c, 2).free_rank);
    ASSERT_EQ(chi, hchi);
  }
}

}  // namespace
}  // namespace chowmod
