#include "chowmod/residue.hpp"

#include <map>
#include <mutex>

#include "chowmod/extension.hpp"

namespace chowmod::fq {

namespace {

using Key = std::tuple<std::uint32_t, std::vector<std::uint32_t>, unsigned, unsigned>;

std::mutex g_mutex;
std::map<Key, std::vector<Elem>> g_embed;
std::map<Key, std::vector<std::uint32_t>> g_restrict;

constexpr std::uint32_t kMissing = 0xffffffffu;

Key key(const FieldPtrFq& base, unsigned L, unsigned M) { return {base->p(), base->modulus(), L, M}; }

const std::vector<std::uint32_t>& restriction(const FieldPtrFq& base, unsigned L, unsigned M) {
  const auto& emb = embedding(base, L, M);
  std::lock_guard<std::mutex> lock(g_mutex);
  auto k = key(base, L, M);
  auto it = g_restrict.find(k);
  if (it != g_restrict.end()) return it->second;
  std::vector<std::uint32_t> r(level(base, M)->size(), kMissing);
  for (std::uint32_t c = 0; c < emb.size(); ++c) r[emb[c].v] = c;
  return g_restrict.emplace(k, std::move(r)).first->second;
}

}  // namespace

FieldPtrFq level(const FieldPtrFq& base, unsigned M) {
  if (M == 0) throw std::invalid_argument("residue level must be >= 1");
  if (M == 1) return base;
  return FiniteField::canonical(base->p(), base->degree() * M);
}

const std::vector<Elem>& embedding(const FieldPtrFq& base, unsigned L, unsigned M) {
  if (L == 0 || M % L != 0) throw std::invalid_argument("no embedding between residue levels");
  auto k = key(base, L, M);
  {
    std::lock_guard<std::mutex> lock(g_mutex);
    auto it = g_embed.find(k);
    if (it != g_embed.end()) return it->second;
  }
  std::vector<Elem> t;
  if (L == M) {
    t.resize(level(base, L)->size());
    for (std::uint32_t c = 0; c < t.size(); ++c) t[c] = Elem{c};
  } else {
    t = embedding_table(*level(base, L), level(base, M));
  }
  std::lock_guard<std::mutex> lock(g_mutex);
  return g_embed.emplace(k, std::move(t)).first->second;
}

Poly<FiniteField> lift(const FieldPtrFq& base, unsigned L, unsigned M, const Poly<FiniteField>& g) {
  const auto& emb = embedding(base, L, M);
  std::vector<Elem> c;
  for (auto x : g.coeffs()) c.push_back(emb.at(x.v));
  return Poly<FiniteField>(level(base, M), std::move(c));
}

std::pair<unsigned, std::vector<Elem>> canonical_tuple(const FieldPtrFq& base, unsigned M,
                                                       const std::vector<Elem>& xs) {
  auto E = level(base, M);
  std::uint64_t q = base->size();
  auto frob = [&](std::vector<Elem> v) {
    for (auto& x : v) x = E->pow(x, q);
    return v;
  };
  std::vector<std::vector<Elem>> orbit{xs};
  while (true) {
    auto nx = frob(orbit.back());
    if (nx == xs) break;
    orbit.push_back(std::move(nx));
    if (orbit.size() > M) throw std::logic_error("Frobenius orbit longer than the residue degree");
  }
  auto L = static_cast<unsigned>(orbit.size());
  const auto& res = restriction(base, L, M);
  std::vector<Elem> best;
  for (auto& t : orbit) {
    std::vector<Elem> r;
    for (auto x : t) {
      auto c = res[x.v];
      if (c == kMissing) throw std::logic_error("orbit element outside the fixed subfield");
      r.push_back(Elem{c});
    }
    if (best.empty() || r < best) best = std::move(r);
  }
  return {L, best};
}

Poly<FiniteField> minpoly(const FieldPtrFq& base, unsigned M, Elem x) {
  auto [L, c] = canonical_tuple(base, M, {x});
  auto E = level(base, L);
  auto m = Poly<FiniteField>::one(E);
  std::uint64_t q = base->size();
  Elem y = c[0];
  for (unsigned i = 0; i < L; ++i) {
    m = m * Poly<FiniteField>::linear(E, y);
    y = E->pow(y, q);
  }
  const auto& res = restriction(base, 1, L);
  std::vector<Elem> out;
  for (auto a : m.coeffs()) {
    auto v = res[a.v];
    if (v == kMissing) throw std::logic_error("minimal polynomial not over the base");
    out.push_back(Elem{v});
  }
  return Poly<FiniteField>(base, std::move(out));
}

}  // namespace chowmod::fq
