#include "chowmod/chow.hpp"

#include <chrono>
#include <deque>
#include <set>
#include <thread>

#include "chowmod/parse.hpp"

namespace chowmod {

namespace {

using PF = Poly<FiniteField>;
using RF = RatFunc<FiniteField>;
using ZF = ZeroCycleA1<FiniteField>;
using WF = WittVector<FiniteField>;

FieldPtrFq finite_field(const std::string& s) {
  auto f = parse_field(s);
  if (!std::holds_alternative<FieldPtrFq>(f)) throw std::invalid_argument("the Chow computation needs a finite field");
  return std::get<FieldPtrFq>(f);
}

void validate(const ChowComputationConfig& c) {
  if (c.m < 1 || c.deg_bound < 1 || c.height < 1) throw std::invalid_argument("m, D and H must be >= 1");
  if (c.x_degree < 1 || c.x_degree > 2) throw std::invalid_argument("x degree must be 1 or 2");
}

std::vector<PF> polys_of_degree(const FieldPtrFq& f, int d, bool monic) {
  std::vector<PF> out;
  std::uint64_t q = f->size(), n = 1;
  for (int i = 0; i < d; ++i) n *= q;
  std::uint64_t leads = monic ? 1 : q - 1;
  for (std::uint64_t lead = 0; lead < leads; ++lead)
    for (std::uint64_t code = 0; code < n; ++code) {
      std::vector<FiniteField::Elem> c;
      for (std::uint64_t r = code, i = 0; i < std::uint64_t(d); ++i, r /= q) c.push_back(f->element(r % q));
      c.push_back(monic ? f->one() : f->element(lead + 1));
      out.emplace_back(f, std::move(c));
    }
  return out;
}

// x(t): t, and for x_degree 2 every a t^2 + b t + c
std::vector<PF> x_candidates(const FieldPtrFq& f, int x_degree) {
  std::vector<PF> xs{PF::x(f)};
  if (x_degree >= 2)
    for (auto& p : polys_of_degree(f, 2, false)) xs.push_back(p);
  return xs;
}

// s = g / (x^m h): the pole along x = 0 that (*) needs on (A^1, m{0})
struct Candidate {
  std::size_t x;
  PF den;
  PF g;
};

std::vector<Candidate> enumerate(const FieldPtrFq& f, const ChowComputationConfig& c, const std::vector<PF>& xs,
                                 bool materialize, std::size_t& count) {
  std::vector<Candidate> out;
  count = 0;
  std::uint64_t q = f->size(), ng = 1;
  for (int i = 0; i <= c.height; ++i) ng *= q;
  std::vector<PF> gs;
  if (materialize)
    for (int d = 0; d <= c.height; ++d)
      for (auto& p : polys_of_degree(f, d, false)) gs.push_back(p);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    auto am = pow(xs[i], static_cast<unsigned long>(c.m));
    int room = c.height - am.degree();
    for (int k = 0; k <= room; ++k) {
      std::uint64_t nh = 1;
      for (int j = 0; j < k; ++j) nh *= q;
      count += nh * (ng - 1);
      if (count > c.cap) throw cap_exceeded(std::to_string(count) + "+ relation candidates exceed the cap of " + std::to_string(c.cap));
      if (!materialize) continue;
      for (auto& h : polys_of_degree(f, k, true))
        for (auto& g : gs) out.push_back({i, am * h, g});
    }
  }
  return out;
}

struct Outcome {
  bool admissible = false;
  std::optional<ZF> relation;
  std::string discarded;
};

Outcome evaluate(const ModulusPair<FiniteField>& pair, const std::vector<PF>& xs,
                 const Candidate& cand, int D) {
  Outcome o;
  RF s(cand.g, cand.den);
  if (s.is_constant()) return o;
  ParamCurve<FiniteField> V;
  try {
    V = make_curve(pair, 1, {RF(xs[cand.x]), s});
  } catch (const std::invalid_argument&) {
    return o;
  }
  if (!check_faces(V) || !check_modulus(V).pass) return o;
  o.admissible = true;
  auto z = boundary(V).to_zero_cycle();
  for (auto& [pi, k] : z.terms())
    if (pi.degree() > D) {
      o.discarded = V.to_string() + " -> " + z.to_string();
      return o;
    }
  if (!z.is_zero()) o.relation = z;
  return o;
}

std::vector<std::uint32_t> key(const WF& w) {
  std::vector<std::uint32_t> k;
  for (auto& c : w.coeffs()) k.push_back(c.v);
  return k;
}

// Closure of {0} under adding generator images; the first cycle reaching each element.
std::map<std::vector<std::uint32_t>, std::pair<WF, ZF>> reach(const FieldPtrFq& f, const std::vector<PF>& gens, int level) {
  std::map<std::vector<std::uint32_t>, std::pair<WF, ZF>> seen;
  auto zero = WF::zero(f, level);
  seen.emplace(key(zero), std::pair{zero, ZF(f)});
  std::deque<std::vector<std::uint32_t>> work{key(zero)};
  std::vector<std::pair<WF, ZF>> steps;
  for (auto& g : gens) {
    auto z = ZF::place(g);
    steps.emplace_back(witt_class(z, level), z);
  }
  while (!work.empty()) {
    auto [w, z] = seen.at(work.front());
    work.pop_front();
    for (auto& [dw, dz] : steps) {
      auto nw = w + dw;
      if (seen.emplace(key(nw), std::pair{nw, z + dz}).second) work.push_back(key(nw));
    }
  }
  return seen;
}

}  // namespace

std::size_t chow_candidate_count(const ChowComputationConfig& config) {
  validate(config);
  auto f = finite_field(config.field);
  std::size_t n;
  enumerate(f, config, x_candidates(f, config.x_degree), false, n);
  return n;
}

ChowReport compute_ch0(const ChowComputationConfig& config) {
  auto start = std::chrono::steady_clock::now();
  validate(config);
  auto f = finite_field(config.field);
  ChowReport r;
  r.config = config;

  std::vector<PF> gens;
  std::map<PF, std::size_t, PolyLess<FiniteField>> index;
  for (int d = 1; d <= config.deg_bound; ++d)
    for (auto& p : monic_irreducibles(f, d)) {
      if (p == PF::x(f)) continue;
      index.emplace(p, gens.size());
      gens.push_back(p);
      r.generators.push_back("[" + p.to_string("u") + "]");
    }

  auto xs = x_candidates(f, config.x_degree);
  auto cands = enumerate(f, config, xs, true, r.candidates);
  auto pair = ModulusPair<FiniteField>(f, {false}, {DivisorTerm<FiniteField>{0, PF::x(f), config.m}});

  std::vector<Outcome> outcomes(cands.size());
  unsigned nt = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  nt = std::min<unsigned>(nt, 16);
  {
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex err_mutex;
    for (unsigned t = 0; t < nt; ++t)
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < cands.size(); i += nt) outcomes[i] = evaluate(pair, xs, cands[i], config.deg_bound);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mutex);
          if (!err) err = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
  }

  // distinct relation vectors up to sign, in a deterministic order
  std::set<std::vector<long>> vectors;
  std::vector<ZF> relations;
  for (auto& o : outcomes) {
    r.admissible += o.admissible;
    if (!o.discarded.empty()) {
      ++r.discarded;
      if (r.discarded_log.size() < 200) r.discarded_log.push_back(o.discarded);
    }
    if (!o.relation) continue;
    std::vector<long> v(gens.size(), 0);
    for (auto& [pi, k] : o.relation->terms()) v[index.at(pi)] = k;
    auto first = std::find_if(v.begin(), v.end(), [](long x) { return x != 0; });
    bool flip = *first < 0;
    if (flip)
      for (auto& x : v) x = -x;
    if (vectors.insert(v).second) relations.push_back(flip ? -*o.relation : *o.relation);
  }
  r.relation_count = vectors.size();

  IntMatrix M(gens.size(), vectors.size());
  std::size_t j = 0;
  for (auto& v : vectors) {
    for (std::size_t i = 0; i < v.size(); ++i) M(i, j) = v[i];
    ++j;
  }
  auto diag = invariant_factors(M);
  mpz_class order = 1;
  for (auto& d : diag) {
    order *= abs(d);
    if (abs(d) > 1) r.invariant_factors.push_back(mpz_class(abs(d)).get_str());
  }
  if (diag.size() == gens.size()) r.order = order;
  mpz_class qm = 1;
  for (int i = 0; i < config.m; ++i) qm *= f->size();
  r.expected_order = qm;
  r.order_matches = r.order && *r.order == qm;

  // witt_of_cycle is well defined on the quotient: relations are 1 modulo u^m
  for (auto& z : relations) {
    if (config.m >= 2 && !witt_class(z, config.m - 1).is_zero()) {
      r.relations_identity = false;
      if (r.well_definedness_log.size() < 50) r.well_definedness_log.push_back("non-identity class mod u^m: " + z.to_string());
    }
    if (!witt_class(z, config.m).is_zero()) ++r.nonidentity_in_Wm;
  }
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t b = a; b < gens.size(); ++b) {
      auto za = ZF::place(gens[a]), zb = ZF::place(gens[b]);
      if (!(witt_class(za + zb, config.m) == witt_class(za, config.m) + witt_class(zb, config.m))) r.homomorphism = false;
    }

  std::uint64_t below = 1;
  for (int i = 0; i < config.m - 1; ++i) below *= f->size();
  r.surjective_below = config.m == 1 || reach(f, gens, config.m - 1).size() == below;
  if (qm <= kWittTableCap) {
    auto seen = reach(f, gens, config.m);
    r.surjective_Wm = seen.size() == qm.get_ui();
    for (auto& [k, wz] : seen) r.witnesses.emplace_back(wz.first.to_string(), wz.second.to_string());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

nlohmann::json ChowReport::to_json() const {
  nlohmann::json j;
  j["config"] = {{"field", config.field}, {"m", config.m}, {"deg_bound", config.deg_bound}, {"height", config.height},
                 {"x_degree", config.x_degree}, {"cap", config.cap}};
  j["generators"] = generators;
  j["candidates"] = candidates;
  j["admissible"] = admissible;
  j["relation_count"] = relation_count;
  j["discarded"] = {{"count", discarded}, {"log", discarded_log}};
  j["invariant_factors"] = invariant_factors;
  j["order"] = order ? nlohmann::json(order->get_str()) : nlohmann::json("infinite");
  j["expected_order"] = expected_order.get_str();
  j["order_matches"] = order_matches;
  j["well_definedness"] = {{"relations_identity_mod_u^m", relations_identity},
                           {"nonidentity_in_W_m", nonidentity_in_Wm},
                           {"homomorphism", homomorphism},
                           {"log", well_definedness_log}};
  nlohmann::json w = nlohmann::json::array();
  for (auto& [e, z] : witnesses) w.push_back({{"element", e}, {"cycle", z}});
  j["surjectivity"] = {{"onto_W_(m-1)", surjective_below}, {"onto_W_m", surjective_Wm}, {"witnesses", w}};
  j["pass"] = pass();
  j["seconds"] = seconds;
  return j;
}

// ---------------------------------------------------------------- Witt tables

WittTable witt_table(const std::string& field, int m) {
  auto f = finite_field(field);
  std::uint64_t q = f->size(), n = 1;
  for (int i = 0; i < m; ++i) {
    n *= q;
    if (n > kWittTableCap) throw cap_exceeded("q^m above " + std::to_string(kWittTableCap));
  }
  WittTable t;
  t.field = describe(AnyField(f));
  t.m = m;
  std::vector<WF> el;
  std::map<std::vector<std::uint32_t>, std::uint32_t> idx;
  for (std::uint64_t code = 0; code < n; ++code) {
    std::vector<FiniteField::Elem> c;
    for (std::uint64_t r = code, i = 0; i < std::uint64_t(m); ++i, r /= q) c.push_back(f->element(r % q));
    WF w(f, c);
    idx.emplace(key(w), static_cast<std::uint32_t>(el.size()));
    t.elements.push_back(w.to_string());
    el.push_back(std::move(w));
  }
  t.add.assign(n, std::vector<std::uint32_t>(n));
  t.star.assign(n, std::vector<std::uint32_t>(n));
  for (std::uint64_t a = 0; a < n; ++a)
    for (std::uint64_t b = 0; b < n; ++b) {
      t.add[a][b] = idx.at(key(el[a] + el[b]));
      t.star[a][b] = idx.at(key(star(el[a], el[b])));
    }
  auto fail = [&](const std::string& what) {
    if (t.axiom_failures.size() < 20) t.axiom_failures.push_back(what);
  };
  auto zero = idx.at(key(WF::zero(f, m))), one = idx.at(key(WF::one(f, m)));
  for (std::uint64_t a = 0; a < n; ++a) {
    if (t.add[a][zero] != a) fail("additive unit at " + t.elements[a]);
    if (t.star[a][one] != a) fail("multiplicative unit at " + t.elements[a]);
    for (std::uint64_t b = 0; b < n; ++b) {
      if (t.add[a][b] != t.add[b][a]) fail("+ not commutative");
      if (t.star[a][b] != t.star[b][a]) fail("* not commutative");
    }
  }
  // triples: exhaustive up to 256 elements, otherwise a fixed stride
  std::uint64_t stride = n <= 256 ? 1 : n / 64 + 1;
  for (std::uint64_t a = 0; a < n; a += stride)
    for (std::uint64_t b = 0; b < n; b += stride)
      for (std::uint64_t c = 0; c < n; c += stride) {
        if (t.add[t.add[a][b]][c] != t.add[a][t.add[b][c]]) fail("+ not associative");
        if (t.star[t.star[a][b]][c] != t.star[a][t.star[b][c]]) fail("* not associative");
        if (t.star[a][t.add[b][c]] != t.add[t.star[a][b]][t.star[a][c]]) fail("* not distributive");
      }
  for (auto& w : el) t.additive_orders.push_back(additive_order(w).get_str());
  // a finite abelian p-group: #{x : p^k x = 0} = prod_i min(p^k, d_i) determines the cyclic factors d_i
  std::vector<std::uint64_t> killed;
  for (std::uint64_t pk = 1;; pk *= f->p()) {
    std::uint64_t cnt = 0;
    for (auto& w : el) cnt += w.times(static_cast<long>(pk)).is_zero();
    killed.push_back(cnt);
    if (cnt == n) break;
  }
  auto logp = [&](std::uint64_t x) {
    int e = 0;
    for (; x > 1; x /= f->p()) ++e;
    return e;
  };
  std::vector<int> at_least;  // factors of order >= p^{k+1}
  for (std::size_t k = 1; k < killed.size(); ++k) at_least.push_back(logp(killed[k] / killed[k - 1]));
  std::string g;
  for (std::size_t k = 0; k < at_least.size(); ++k) {
    int exact = at_least[k] - (k + 1 < at_least.size() ? at_least[k + 1] : 0);
    mpz_class ord;
    mpz_ui_pow_ui(ord.get_mpz_t(), f->p(), k + 1);
    for (int i = 0; i < exact; ++i) g += (g.empty() ? "" : " + ") + ("Z/" + ord.get_str());
  }
  t.additive_group = g.empty() ? "0" : g;
  return t;
}

std::string WittTable::render() const {
  std::string s = "W_" + std::to_string(m) + "(" + field + "), " + std::to_string(elements.size()) + " elements, additive group " +
                  additive_group + "\n";
  for (std::size_t i = 0; i < elements.size(); ++i)
    s += "  " + std::to_string(i) + ": " + elements[i] + "  order " + additive_orders[i] + "\n";
  auto table = [&](const char* name, const std::vector<std::vector<std::uint32_t>>& tb) {
    s += std::string(name) + "\n";
    for (auto& row : tb) {
      s += " ";
      for (auto v : row) s += " " + std::to_string(v);
      s += "\n";
    }
  };
  table("+", add);
  table("*", star);
  s += axioms_ok() ? "axioms: ok\n" : "axioms: FAILED (" + axiom_failures[0] + ")\n";
  return s;
}

nlohmann::json WittTable::to_json() const {
  return {{"field", field}, {"m", m}, {"elements", elements}, {"add", add}, {"star", star}, {"additive_orders", additive_orders},
          {"additive_group", additive_group}, {"axioms_ok", axioms_ok()}, {"axiom_failures", axiom_failures}};
}

}  // namespace chowmod
