#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>

#include "chowmod/intmatrix.hpp"

namespace chowmod {

struct complex_error : std::invalid_argument {
  explicit complex_error(const std::string& w) : std::invalid_argument(w) {}
};

struct HomologyGroup {
  std::size_t free_rank = 0;
  std::vector<mpz_class> torsion;  // each > 1, each dividing the next
  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
  std::string to_string() const;
};

// canonical invariant factors of the direct sum
HomologyGroup direct_sum(const HomologyGroup& a, const HomologyGroup& b);

// Bounded complex of free Z-modules; boundary(q): Z^{rank q} -> Z^{rank q-1}.
class ChainComplex {
 public:
  ChainComplex() = default;
  // ranks[i] is the rank in degree lo + i; boundaries[q] for lo < q <= hi
  ChainComplex(int lo, std::vector<std::size_t> ranks, std::map<int, IntMatrix> boundaries);

  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(ranks_.size()) - 1; }
  std::size_t rank(int q) const;
  // zero matrix outside the stored range
  IntMatrix boundary(int q) const;
  // throws complex_error if d_{q-1} d_q != 0 somewhere
  void check() const;
  bool is_complex() const;

 private:
  int lo_ = 0;
  std::vector<std::size_t> ranks_;
  std::map<int, IntMatrix> d_;
};

HomologyGroup homology(const ChainComplex& c, int q);

// A(q) for 0 <= q <= top with faces d_i^e: A(q) -> A(q-1) and degeneracies pi_i: A(q-1) -> A(q).
class CubicalGroup {
 public:
  explicit CubicalGroup(std::vector<std::size_t> ranks);

  int top() const { return static_cast<int>(ranks_.size()) - 1; }
  std::size_t rank(int q) const { return ranks_.at(q); }
  // 1 <= i <= q, eps in {0,1}
  IntMatrix& face(int q, int i, int eps) { return faces_.at(q).at(i - 1).at(eps); }
  const IntMatrix& face(int q, int i, int eps) const { return faces_.at(q).at(i - 1).at(eps); }
  // pi_i: A(q-1) -> A(q), 1 <= i <= q
  IntMatrix& degeneracy(int q, int i) { return degen_.at(q).at(i - 1); }
  const IntMatrix& degeneracy(int q, int i) const { return degen_.at(q).at(i - 1); }

  // first violated identity, if any
  std::optional<std::string> identity_violation() const;

 private:
  std::vector<std::size_t> ranks_;
  std::vector<std::vector<std::array<IntMatrix, 2>>> faces_;
  std::vector<std::vector<IntMatrix>> degen_;
};

// d_q = sum_{i=1}^q (-1)^i (d_i^1 - d_i^0); rejects inputs violating the cubical identities
ChainComplex alternating_differential(const CubicalGroup& a);

struct Splitting {
  IntMatrix reduced;     // projector onto the intersection of Ker d_i^0
  IntMatrix degenerate;  // projector onto the sum of Im pi_i
  std::size_t reduced_rank = 0, degenerate_rank = 0;
};

// P_0 = (1 - pi_q d_q^0) ... (1 - pi_1 d_1^0), P_degn = 1 - P_0
Splitting split_degenerate(const CubicalGroup& a, int q);

// Subcomplex on the image of a degreewise idempotent family commuting with d.
ChainComplex image_subcomplex(const ChainComplex& c, const std::map<int, IntMatrix>& projectors);

// Saturated columns spanning the image of an idempotent integer matrix.
IntMatrix image_basis(const IntMatrix& idempotent);

// Free cubical abelian group on Hom(cube^q, cube^n), q <= top: maps keep an ordered
// subset of input coordinates and insert constants 0/1.
CubicalGroup standard_cube(int n, int top);
// Sub-cubical group generated by the listed q-cubes of the standard n-cube.
CubicalGroup standard_cube_generated(int n, int top, const std::vector<std::pair<int, std::size_t>>& generators);
std::size_t standard_cube_count(int n, int q);

// Saturation of generators under faces and degeneracies, for any cube-shaped object.
// face(x, i, eps) returns an integer combination of objects of degree q-1.
template <class Obj, class Less = std::less<Obj>>
struct CubicalSaturation {
  using Combo = std::vector<std::pair<Obj, long>>;
  std::function<int(const Obj&)> degree;
  std::function<Combo(const Obj&, int, int)> face;
  std::function<Obj(const Obj&, int)> degeneracy;  // pi_i, degree + 1

  std::vector<std::vector<Obj>> basis;  // per degree, sorted

  CubicalGroup run(const std::vector<Obj>& gens, int top) {
    std::vector<std::map<Obj, std::size_t, Less>> seen(top + 1);
    std::vector<Obj> work;
    auto push = [&](const Obj& x) {
      int q = degree(x);
      if (q < 0 || q > top) return;
      if (seen[q].emplace(x, 0).second) work.push_back(x);
    };
    for (auto& g : gens) push(g);
    while (!work.empty()) {
      Obj x = work.back();
      work.pop_back();
      int q = degree(x);
      for (int i = 1; i <= q; ++i)
        for (int e = 0; e < 2; ++e)
          for (auto& [y, c] : face(x, i, e)) push(y);
      if (q < top)
        for (int i = 1; i <= q + 1; ++i) push(degeneracy(x, i));
    }
    basis.assign(top + 1, {});
    std::vector<std::size_t> ranks;
    for (int q = 0; q <= top; ++q) {
      std::size_t k = 0;
      for (auto& [x, idx] : seen[q]) {
        idx = k++;
        basis[q].push_back(x);
      }
      ranks.push_back(k);
    }
    CubicalGroup g(ranks);
    for (int q = 0; q <= top; ++q)
      for (auto& [x, j] : seen[q]) {
        for (int i = 1; i <= q; ++i)
          for (int e = 0; e < 2; ++e)
            for (auto& [y, c] : face(x, i, e)) g.face(q, i, e)(seen[q - 1].at(y), j) += c;
        if (q < top)
          for (int i = 1; i <= q + 1; ++i) g.degeneracy(q + 1, i)(seen[q + 1].at(degeneracy(x, i)), j) += 1;
      }
    return g;
  }
};

}  // namespace chowmod
