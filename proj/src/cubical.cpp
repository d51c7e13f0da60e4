#include "chowmod/cubical.hpp"

#include <algorithm>

namespace chowmod {

std::string HomologyGroup::to_string() const {
  std::string s;
  if (free_rank) s = free_rank == 1 ? "Z" : "Z^" + std::to_string(free_rank);
  for (auto& t : torsion) s += (s.empty() ? "" : " + ") + std::string("Z/") + t.get_str();
  return s.empty() ? "0" : s;
}

HomologyGroup direct_sum(const HomologyGroup& a, const HomologyGroup& b) {
  HomologyGroup r;
  r.free_rank = a.free_rank + b.free_rank;
  std::size_t n = a.torsion.size() + b.torsion.size();
  IntMatrix d(n, n);
  std::size_t k = 0;
  for (auto& t : a.torsion) d(k, k) = t, ++k;
  for (auto& t : b.torsion) d(k, k) = t, ++k;
  for (auto& t : invariant_factors(d))
    if (t > 1) r.torsion.push_back(t);
  return r;
}

ChainComplex::ChainComplex(int lo, std::vector<std::size_t> ranks, std::map<int, IntMatrix> boundaries)
    : lo_(lo), ranks_(std::move(ranks)), d_(std::move(boundaries)) {
  for (auto& [q, m] : d_) {
    if (q <= lo_ || q > hi()) throw complex_error("boundary outside the degree range");
    if (m.rows() != rank(q - 1) || m.cols() != rank(q))
      throw complex_error("boundary d_" + std::to_string(q) + " has the wrong shape");
  }
}

std::size_t ChainComplex::rank(int q) const {
  if (q < lo_ || q > hi()) return 0;
  return ranks_[q - lo_];
}

IntMatrix ChainComplex::boundary(int q) const {
  auto it = d_.find(q);
  if (it != d_.end()) return it->second;
  return IntMatrix(rank(q - 1), rank(q));
}

bool ChainComplex::is_complex() const {
  for (int q = lo_ + 2; q <= hi(); ++q)
    if (!(boundary(q - 1) * boundary(q)).is_zero()) return false;
  return true;
}

void ChainComplex::check() const {
  if (!is_complex()) throw complex_error("d^2 != 0");
}

HomologyGroup homology(const ChainComplex& c, int q) {
  auto dq = c.boundary(q), dq1 = c.boundary(q + 1);
  if (!(dq * dq1).is_zero()) throw complex_error("d^2 != 0 at degree " + std::to_string(q));
  HomologyGroup h;
  std::size_t rq = rank(dq);
  auto inv = invariant_factors(dq1);
  h.free_rank = c.rank(q) - rq - inv.size();
  for (auto& s : inv)
    if (s > 1) h.torsion.push_back(s);
  return h;
}

CubicalGroup::CubicalGroup(std::vector<std::size_t> ranks) : ranks_(std::move(ranks)) {
  int top = static_cast<int>(ranks_.size()) - 1;
  faces_.resize(top + 1);
  degen_.resize(top + 1);
  for (int q = 1; q <= top; ++q)
    for (int i = 1; i <= q; ++i) {
      faces_[q].push_back({IntMatrix(ranks_[q - 1], ranks_[q]), IntMatrix(ranks_[q - 1], ranks_[q])});
      degen_[q].push_back(IntMatrix(ranks_[q], ranks_[q - 1]));
    }
}

std::optional<std::string> CubicalGroup::identity_violation() const {
  auto tag = [](const char* what, int q, int i, int j) {
    return std::string(what) + " at q=" + std::to_string(q) + " i=" + std::to_string(i) + " j=" + std::to_string(j);
  };
  for (int q = 1; q <= top(); ++q) {
    // d_i^e d_j^h = d_{j-1}^h d_i^e, i < j
    for (int j = 1; j <= q; ++j)
      for (int i = 1; i < j; ++i)
        for (int e = 0; e < 2; ++e)
          for (int h = 0; h < 2; ++h)
            if (!(face(q - 1, i, e) * face(q, j, h) == face(q - 1, j - 1, h) * face(q, i, e)))
              return tag("face/face", q, i, j);
    // d_j^e pi_i
    for (int i = 1; i <= q; ++i)
      for (int j = 1; j <= q; ++j)
        for (int e = 0; e < 2; ++e) {
          auto lhs = face(q, j, e) * degeneracy(q, i);
          IntMatrix rhs;
          if (j == i) rhs = IntMatrix::identity(rank(q - 1));
          else if (j < i) rhs = degeneracy(q - 1, i - 1) * face(q - 1, j, e);
          else rhs = degeneracy(q - 1, i) * face(q - 1, j - 1, e);
          if (!(lhs == rhs)) return tag("face/degeneracy", q, i, j);
        }
    // pi_j pi_i = pi_i pi_{j-1}, i < j, A(q-1) -> A(q+1)
    if (q + 1 <= top())
      for (int j = 1; j <= q + 1; ++j)
        for (int i = 1; i < j; ++i)
          if (!(degeneracy(q + 1, j) * degeneracy(q, i) == degeneracy(q + 1, i) * degeneracy(q, j - 1)))
            return tag("degeneracy/degeneracy", q, i, j);
  }
  return std::nullopt;
}

ChainComplex alternating_differential(const CubicalGroup& a) {
  if (auto v = a.identity_violation()) throw complex_error("cubical identity violated: " + *v);
  std::vector<std::size_t> ranks;
  std::map<int, IntMatrix> d;
  for (int q = 0; q <= a.top(); ++q) ranks.push_back(a.rank(q));
  for (int q = 1; q <= a.top(); ++q) {
    IntMatrix m(a.rank(q - 1), a.rank(q));
    for (int i = 1; i <= q; ++i) {
      auto t = a.face(q, i, 1) - a.face(q, i, 0);
      m = i % 2 ? m - t : m + t;
    }
    d.emplace(q, std::move(m));
  }
  ChainComplex c(0, ranks, d);
  c.check();
  return c;
}

Splitting split_degenerate(const CubicalGroup& a, int q) {
  std::size_t n = a.rank(q);
  auto I = IntMatrix::identity(n);
  IntMatrix P = I;
  for (int i = 1; i <= q; ++i) P = (I - a.degeneracy(q, i) * a.face(q, i, 0)) * P;
  Splitting s;
  s.reduced = P;
  s.degenerate = I - P;
  if (!(P * P == P)) throw complex_error("splitting failure: projector not idempotent (cubical identities violated)");
  s.reduced_rank = rank(s.reduced);
  s.degenerate_rank = rank(s.degenerate);
  if (s.reduced_rank + s.degenerate_rank != n) throw complex_error("splitting failure: ranks do not add up");
  return s;
}

IntMatrix image_basis(const IntMatrix& p) {
  return kernel_basis(IntMatrix::identity(p.rows()) - p);
}

namespace {

// left inverse of a saturated column basis
IntMatrix left_inverse(const IntMatrix& B) {
  auto snf = smith_normal_form(B, true);
  std::size_t k = B.cols();
  if (snf.rank() != k) throw complex_error("basis columns are dependent");
  for (auto& s : snf.diagonal)
    if (s != 1) throw complex_error("basis is not saturated");
  IntMatrix J(k, B.rows());
  for (std::size_t i = 0; i < k; ++i) J(i, i) = 1;
  return snf.V * J * snf.U;
}

}  // namespace

ChainComplex image_subcomplex(const ChainComplex& c, const std::map<int, IntMatrix>& projectors) {
  std::map<int, IntMatrix> B, L;
  std::vector<std::size_t> ranks;
  for (int q = c.lo(); q <= c.hi(); ++q) {
    auto it = projectors.find(q);
    B[q] = it == projectors.end() ? IntMatrix::identity(c.rank(q)) : image_basis(it->second);
    L[q] = B[q].cols() ? left_inverse(B[q]) : IntMatrix(0, c.rank(q));
    ranks.push_back(B[q].cols());
  }
  std::map<int, IntMatrix> d;
  for (int q = c.lo() + 1; q <= c.hi(); ++q) {
    auto dB = c.boundary(q) * B[q];
    auto r = L[q - 1] * dB;
    if (!(B[q - 1] * r == dB)) throw complex_error("image is not a subcomplex at degree " + std::to_string(q));
    d.emplace(q, std::move(r));
  }
  return ChainComplex(c.lo(), ranks, d);
}

namespace {

// f: cube^q -> cube^n, word over {0,1,*}; the k-th star reads input coordinate S[k]
struct CubeMap {
  int q;
  std::string word;
  std::vector<int> S;
  friend bool operator<(const CubeMap& a, const CubeMap& b) {
    return std::tie(a.q, a.word, a.S) < std::tie(b.q, b.word, b.S);
  }
};

std::vector<std::pair<CubeMap, long>> cube_face(const CubeMap& f, int i, int e) {
  CubeMap g{f.q - 1, f.word, {}};
  std::size_t k = 0;
  for (std::size_t pos = 0; pos < g.word.size(); ++pos) {
    if (g.word[pos] != '*') continue;
    int s = f.S[k++];
    if (s == i) g.word[pos] = static_cast<char>('0' + e);
    else g.S.push_back(s < i ? s : s - 1);
  }
  return {{g, 1}};
}

CubeMap cube_degeneracy(const CubeMap& f, int i) {
  CubeMap g{f.q + 1, f.word, f.S};
  for (auto& s : g.S)
    if (s >= i) ++s;
  return g;
}

CubicalSaturation<CubeMap> cube_saturation() {
  CubicalSaturation<CubeMap> sat;
  sat.degree = [](const CubeMap& f) { return f.q; };
  sat.face = cube_face;
  sat.degeneracy = cube_degeneracy;
  return sat;
}

std::vector<CubeMap> all_cube_maps(int n, int q) {
  std::vector<CubeMap> out;
  // base-3 words
  int total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  for (int w = 0; w < total; ++w) {
    std::string word;
    int k = 0;
    for (int i = 0, r = w; i < n; ++i, r /= 3) {
      char ch = "01*"[r % 3];
      word += ch;
      k += ch == '*';
    }
    if (k > q) continue;
    // increasing subsets of size k of 1..q
    std::vector<int> S(k);
    std::function<void(int, int)> rec = [&](int idx, int start) {
      if (idx == k) {
        out.push_back({q, word, S});
        return;
      }
      for (int s = start; s <= q; ++s) {
        S[idx] = s;
        rec(idx + 1, s + 1);
      }
    };
    rec(0, 1);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::size_t standard_cube_count(int n, int q) { return all_cube_maps(n, q).size(); }

CubicalGroup standard_cube(int n, int top) {
  if (n > top) throw std::invalid_argument("standard cube needs n <= top");
  auto sat = cube_saturation();
  return sat.run({CubeMap{n, std::string(n, '*'), [&] {
                            std::vector<int> s(n);
                            for (int i = 0; i < n; ++i) s[i] = i + 1;
                            return s;
                          }()}},
                 top);
}

CubicalGroup standard_cube_generated(int n, int top, const std::vector<std::pair<int, std::size_t>>& generators) {
  auto sat = cube_saturation();
  std::vector<CubeMap> gens;
  for (auto [q, idx] : generators) {
    auto all = all_cube_maps(n, q);
    gens.push_back(all.at(idx % all.size()));
  }
  return sat.run(gens, top);
}

}  // namespace chowmod
