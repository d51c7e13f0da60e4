#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "chowmod/chow.hpp"
#include "chowmod/suite.hpp"

using namespace chowmod;
using nlohmann::json;

namespace {

// exit codes
constexpr int kPass = 0, kFail = 1, kError = 2;

struct usage_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Calls fn with the field pointer for Q and finite fields.
template <class Fn>
auto with_field(const std::string& desc, Fn&& fn) {
  auto f = parse_field(desc);
  if (auto* q = std::get_if<FieldPtrQ>(&f)) return fn(*q);
  if (auto* p = std::get_if<FieldPtrFq>(&f)) return fn(*p);
  throw usage_error("field " + desc + " is not supported here (use Q or a finite field)");
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw usage_error("cannot open " + path);
  return json::parse(in);
}

void write_or_print(const json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream o(out);
  if (!o) throw usage_error("cannot write " + out);
  o << j.dump(2) << "\n";
}

// ---------------------------------------------------------------- witt

template <class F>
WittVector<F> witt_arg(const std::shared_ptr<const F>& f, const std::string& s, int m) {
  auto p = parse_coeff_list(f, s);
  std::vector<typename F::Elem> c(m, f->zero());
  if (p.coeffs().size() > static_cast<std::size_t>(m)) throw usage_error("'" + s + "' has more than m coefficients");
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) c[i] = p.coeff(static_cast<int>(i));
  return WittVector<F>(f, c);
}

// ---------------------------------------------------------------- cycles

template <class F>
ModulusPair<F> pair_from_json(const std::shared_ptr<const F>& f, const json& j) {
  std::vector<bool> compact;
  for (auto& c : j.at("coords")) {
    auto s = c.get<std::string>();
    if (s != "A1" && s != "P1") throw usage_error("coords entries are A1 or P1, got " + s);
    compact.push_back(s == "P1");
  }
  std::vector<DivisorTerm<F>> terms;
  for (auto& t : j.value("divisor", json::array())) {
    auto at = t.at("at").get<std::string>();
    std::optional<Poly<F>> place;
    if (at != "inf") place = parse_poly(f, at, "x");
    terms.push_back(DivisorTerm<F>{t.at("coord").get<int>(), place, t.at("coeff").get<long>()});
  }
  return ModulusPair<F>(f, compact, terms);
}

template <class F>
int check_cycles(const std::shared_ptr<const F>& f, const json& in, ModulusVariant variant) {
  auto pair = pair_from_json(f, in.at("pair"));
  json out = json::array();
  bool all = true;
  for (auto& c : in.at("curves")) {
    json r;
    try {
      std::vector<RatFunc<F>> tuple;
      for (auto& x : c.at("tuple")) tuple.push_back(parse_ratfunc(f, x.get<std::string>(), "t"));
      auto V = make_curve(pair, c.value("q", 0), tuple, c.value("mult", 1L));
      auto cert = check_modulus(V, variant);
      json entries = json::array();
      for (auto& e : cert.entries) entries.push_back({{"place", e.place}, {"left", e.left}, {"right", e.right}});
      r = {{"curve", V.to_string()}, {"faces_proper", check_faces(V)}, {"variant", variant_name(variant)},
           {"status", cert.pass ? "pass" : "fail"}, {"entries", entries}};
      all = all && cert.pass;
    } catch (const std::exception& e) {
      r = {{"status", "error"}, {"error", e.what()}};
      all = false;
    }
    out.push_back(r);
  }
  std::cout << json{{"field", in.at("field")}, {"pair", pair.to_string()}, {"certificates", out}}.dump(2) << "\n";
  return all ? kPass : kFail;
}

// ---------------------------------------------------------------- cubical

int cubical_homology(const std::string& path, std::optional<int> q) {
  auto j = read_json(path);
  std::map<int, json> by_q;
  for (auto& d : j.at("degrees")) by_q[d.at("q").get<int>()] = d;
  if (by_q.empty()) throw usage_error("no degrees");
  int lo = by_q.begin()->first, hi = by_q.rbegin()->first;
  std::vector<std::size_t> ranks;
  std::map<int, IntMatrix> bd;
  for (int k = lo; k <= hi; ++k) {
    if (!by_q.count(k)) throw usage_error("missing degree " + std::to_string(k));
    ranks.push_back(by_q[k].at("rank").get<std::size_t>());
  }
  for (int k = lo + 1; k <= hi; ++k) {
    std::vector<std::vector<mpz_class>> rows;
    for (auto& row : by_q[k].value("boundary", json::array())) {
      std::vector<mpz_class> r;
      for (auto& x : row) r.emplace_back(x.is_string() ? x.get<std::string>() : std::to_string(x.get<long>()));
      rows.push_back(r);
    }
    auto M = IntMatrix::from_rows(rows, ranks[k - lo]);
    if (M.rows() != ranks[k - lo - 1]) throw usage_error("boundary at q=" + std::to_string(k) + " has the wrong number of rows");
    bd[k] = M;
  }
  ChainComplex c(lo, ranks, bd);
  json out = json::array();
  for (int k = lo; k <= hi; ++k) {
    if (q && *q != k) continue;
    auto h = homology(c, k);
    json tors = json::array();
    for (auto& t : h.torsion) tors.push_back(t.get_str());
    out.push_back({{"q", k}, {"free_rank", h.free_rank}, {"torsion", tors}, {"group", h.to_string()}});
  }
  std::cout << json{{"is_complex", c.is_complex()}, {"homology", out}}.dump(2) << "\n";
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chowmod: Witt vectors, divisors on the line, cubical homology and cycles with modulus"};
  app.require_subcommand(1);

  std::string field = "F2", x, y, a, b, in, variant = "star";
  int m = 1;
  std::uint64_t seed = 1;
  bool as_json = false;
  std::optional<int> hq;
  std::vector<std::string> scopes{"witt", "divisors", "cycles"};
  ChowComputationConfig cc;

  auto* witt = app.add_subcommand("witt", "truncated big Witt vectors")->require_subcommand(1);
  auto* w_star = witt->add_subcommand("star", "product of two Witt vectors given as coefficient lists");
  w_star->add_option("--field", field)->required();
  w_star->add_option("--m", m)->required()->check(CLI::PositiveNumber);
  w_star->add_option("--x", x)->required();
  w_star->add_option("--y", y)->required();
  auto* w_self = witt->add_subcommand("selftest", "ring, torsion, Frobenius and ghost checks");
  w_self->add_option("--field", field)->required();
  w_self->add_option("--m", m)->required()->check(CLI::PositiveNumber);
  w_self->add_option("--seed", seed);
  auto* w_table = witt->add_subcommand("table", "full + and * tables of W_m(F_q)");
  w_table->add_option("--field", field)->required();
  w_table->add_option("--m", m)->required()->check(CLI::PositiveNumber);
  w_table->add_flag("--json", as_json);

  auto* div = app.add_subcommand("divisor", "zero-cycles on the line")->require_subcommand(1);
  auto* d_conv = div->add_subcommand("conv", "multiplicative convolution of two cycles");
  d_conv->add_option("--field", field)->required();
  d_conv->add_option("--a", a)->required();
  d_conv->add_option("--b", b)->required();

  auto* cub = app.add_subcommand("cubical", "chain complexes of free abelian groups")->require_subcommand(1);
  auto* c_hom = cub->add_subcommand("homology", "integral homology of a complex read from JSON");
  c_hom->add_option("--in", in)->required();
  c_hom->add_option("--q", hq);

  auto* cyc = app.add_subcommand("cycles", "curves on modulus pairs")->require_subcommand(1);
  auto* c_check = cyc->add_subcommand("check", "modulus certificates for every curve of a corpus");
  c_check->add_option("--in", in)->required();
  c_check->add_option("--variant", variant)->check(CLI::IsMember({"star", "naive"}));

  auto* chow = app.add_subcommand("chow", "CH_0(A^1 | m{0}) over a finite field")->require_subcommand(1);
  auto* ch_comp = chow->add_subcommand("compute", "relations, Smith form and comparison with W_m");
  ch_comp->add_option("--field", cc.field)->required();
  ch_comp->add_option("--m", cc.m)->required()->check(CLI::PositiveNumber);
  ch_comp->add_option("--deg-bound", cc.deg_bound)->required()->check(CLI::PositiveNumber);
  ch_comp->add_option("--height", cc.height)->required()->check(CLI::PositiveNumber);
  ch_comp->add_option("--x-degree", cc.x_degree)->check(CLI::Range(1, 2));
  ch_comp->add_option("--cap", cc.cap);
  ch_comp->add_option("--threads", cc.threads);
  ch_comp->add_option("--out", cc.out);

  auto* suite = app.add_subcommand("suite", "invariant suites");
  suite->add_option("--scope", scopes)->delimiter(',')->check(CLI::IsMember({"witt", "divisors", "cycles"}));
  suite->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kPass : kError;
  }

  try {
    if (*w_star) {
      return with_field(field, [&](const auto& f) {
        std::cout << star(witt_arg(f, x, m), witt_arg(f, y, m)).to_string() << "\n";
        return kPass;
      });
    }
    if (*w_self) {
      auto r = witt_selftest(field, m, seed);
      std::cout << r.to_json().dump(2) << "\n";
      return r.pass() ? kPass : kFail;
    }
    if (*w_table) {
      auto t = witt_table(field, m);
      if (as_json) std::cout << t.to_json().dump(2) << "\n";
      else std::cout << t.render();
      return t.axioms_ok() ? kPass : kFail;
    }
    if (*d_conv) {
      return with_field(field, [&](const auto& f) {
        std::cout << mult_convolution(parse_cycle(f, a), parse_cycle(f, b)).to_string() << "\n";
        return kPass;
      });
    }
    if (*c_hom) return cubical_homology(in, hq);
    if (*c_check) {
      auto j = read_json(in);
      auto v = variant == "naive" ? ModulusVariant::naive : ModulusVariant::star;
      return with_field(j.at("field").get<std::string>(), [&](const auto& f) { return check_cycles(f, j, v); });
    }
    if (*ch_comp) {
      auto n = chow_candidate_count(cc);
      std::cerr << "candidates: " << n << "\n";
      auto r = compute_ch0(cc);
      write_or_print(r.to_json(), cc.out);
      std::cerr << "order " << (r.order ? r.order->get_str() : "infinite") << ", q^m = " << r.expected_order.get_str() << "\n";
      return r.pass() ? kPass : kFail;
    }
    if (*suite) {
      std::set<Scope> s;
      for (auto& x : scopes) s.insert(parse_scope(x));
      auto r = run_suite(s, seed);
      std::cout << r.to_json().dump(2) << "\n";
      return r.pass() ? kPass : kFail;
    }
  } catch (const cap_exceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
