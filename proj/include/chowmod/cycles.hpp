#pragma once

#include <map>
#include <numeric>
#include <random>

#include "chowmod/divisor.hpp"
#include "chowmod/linalg.hpp"
#include "chowmod/residue.hpp"

namespace chowmod {

struct improper_intersection : std::domain_error {
  explicit improper_intersection(const std::string& w) : std::domain_error(w) {}
};
// the cycle lies inside |X^inf|, or a face point lands there
struct modulus_error : std::domain_error {
  explicit modulus_error(const std::string& w) : std::domain_error(w) {}
};
struct root_field_error : std::domain_error {
  explicit root_field_error(const std::string& w) : std::domain_error(w) {}
};
struct unsupported_shape : std::invalid_argument {
  explicit unsupported_shape(const std::string& w) : std::invalid_argument(w) {}
};
struct w_condition_violated : std::domain_error {
  explicit w_condition_violated(const std::string& w) : std::domain_error(w) {}
};

template <class F>
inline constexpr bool is_finite_v = std::is_same_v<F, FiniteField>;

namespace detail {

inline int elem_order(FiniteField::Elem a, FiniteField::Elem b) { return a.v < b.v ? -1 : (a.v > b.v ? 1 : 0); }
inline int elem_order(const mpq_class& a, const mpq_class& b) {
  int c = cmp(a, b);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}
template <class B>
int elem_order(const RatFunc<B>& a, const RatFunc<B>& b) {
  int c = a.den.compare(b.den);
  return c ? c : a.num.compare(b.num);
}

template <class F>
bool try_irreducible(const Poly<F>& p) {
  if (p.degree() == 1) return true;
  try {
    return is_irreducible(p);
  } catch (const std::domain_error&) {
    return true;  // not decidable here; accepted as given
  }
}

}  // namespace detail

// ---------------------------------------------------------------- modulus pairs

// c * {x_coord = at}; at = nullopt is the point at infinity of a compactified coordinate.
template <class F>
struct DivisorTerm {
  int coord = 0;
  std::optional<Poly<F>> at;
  long coeff = 0;
};

template <class F>
class ModulusPair {
 public:
  using FieldPtr = std::shared_ptr<const F>;
  using Term = DivisorTerm<F>;

  ModulusPair() = default;
  ModulusPair(FieldPtr f, std::vector<bool> compact, std::vector<Term> terms)
      : f_(std::move(f)), compact_(std::move(compact)) {
    for (auto& t : terms) add(t);
  }

  static ModulusPair affine(FieldPtr f, int n) { return ModulusPair(std::move(f), std::vector<bool>(n, false), {}); }
  // the cube with multiplicity m at infinity; m = 0 is the affine line
  static ModulusPair cube(FieldPtr f, long m) {
    if (m == 0) return affine(std::move(f), 1);
    return ModulusPair(std::move(f), {true}, {Term{0, std::nullopt, m}});
  }
  static ModulusPair minus_cube(FieldPtr f) { return cube(std::move(f), -1); }

  const FieldPtr& field_ptr() const { return f_; }
  int dim() const { return static_cast<int>(compact_.size()); }
  bool compact(int i) const { return compact_.at(i); }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_effective() const {
    return std::all_of(terms_.begin(), terms_.end(), [](auto& t) { return t.coeff >= 0; });
  }
  bool has_infinity_term(int i) const {
    return std::any_of(terms_.begin(), terms_.end(), [&](auto& t) { return t.coord == i && !t.at; });
  }
  bool is_minus_cube_coordinate(int i) const {
    int count = 0;
    bool ok = compact(i);
    for (auto& t : terms_)
      if (t.coord == i) {
        ++count;
        ok = ok && !t.at && t.coeff == -1;
      }
    return ok && count == 1;
  }

  // X^{(n)}
  ModulusPair scaled(long n) const {
    if (n == 0) throw std::invalid_argument("scaling a modulus by 0");
    ModulusPair r(f_, compact_, {});
    for (auto t : terms_) {
      t.coeff *= n;
      r.add(t);
    }
    return r;
  }

  // the first k coordinates with their divisor terms
  ModulusPair take(int k) const {
    std::vector<bool> c(compact_.begin(), compact_.begin() + k);
    std::vector<Term> ts;
    for (auto& t : terms_)
      if (t.coord < k) ts.push_back(t);
    return ModulusPair(f_, std::move(c), std::move(ts));
  }
  ModulusPair drop(int i) const {
    std::vector<bool> c;
    for (int j = 0; j < dim(); ++j)
      if (j != i) c.push_back(compact_[j]);
    std::vector<Term> ts;
    for (auto t : terms_) {
      if (t.coord == i) continue;
      if (t.coord > i) --t.coord;
      ts.push_back(t);
    }
    return ModulusPair(f_, std::move(c), std::move(ts));
  }

  friend ModulusPair tensor(const ModulusPair& a, const ModulusPair& b) {
    if (a.f_ && b.f_) require_same(a.f_, b.f_);
    std::vector<bool> c = a.compact_;
    c.insert(c.end(), b.compact_.begin(), b.compact_.end());
    ModulusPair r(a.f_ ? a.f_ : b.f_, std::move(c), a.terms_);
    for (auto t : b.terms_) {
      t.coord += a.dim();
      r.add(t);
    }
    // support of the sum is the union of the supports: terms on disjoint coordinates never cancel
    if (r.terms_.size() != a.terms_.size() + b.terms_.size())
      throw std::logic_error("tensor product support is not the union of the supports");
    return r;
  }

  friend bool operator==(const ModulusPair& a, const ModulusPair& b) {
    if (a.compact_ != b.compact_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      auto &s = a.terms_[i], &t = b.terms_[i];
      if (s.coord != t.coord || s.coeff != t.coeff || bool(s.at) != bool(t.at)) return false;
      if (s.at && !(*s.at == *t.at)) return false;
    }
    return true;
  }

  std::string to_string() const {
    std::string s = "(";
    for (int i = 0; i < dim(); ++i) s += (i ? " x " : "") + std::string(compact_[i] ? "P1" : "A1");
    s += "; ";
    if (terms_.empty()) s += "0";
    for (std::size_t k = 0; k < terms_.size(); ++k) {
      auto& t = terms_[k];
      if (k) s += " + ";
      s += std::to_string(t.coeff) + "*{x" + std::to_string(t.coord + 1) + "=" +
           (t.at ? "[" + t.at->to_string("x") + "]" : std::string("inf")) + "}";
    }
    return s + ")";
  }

 private:
  void add(const Term& t) {
    if (t.coord < 0 || t.coord >= dim()) throw std::invalid_argument("divisor on a missing coordinate");
    if (!t.at && !compact_[t.coord]) throw std::invalid_argument("divisor at infinity of an affine coordinate");
    if (t.at) {
      if (t.at->degree() < 1 || !t.at->is_monic()) throw std::invalid_argument("divisor place must be monic");
      require_same(t.at->field_ptr(), f_);
      if (!detail::try_irreducible(*t.at)) throw std::invalid_argument("divisor place must be irreducible");
    }
    if (!t.coeff) return;
    for (auto it = terms_.begin(); it != terms_.end(); ++it) {
      if (it->coord != t.coord || bool(it->at) != bool(t.at) || (t.at && !(*it->at == *t.at))) continue;
      it->coeff += t.coeff;
      if (!it->coeff) terms_.erase(it);
      return;
    }
    terms_.push_back(t);
    std::sort(terms_.begin(), terms_.end(), [](auto& a, auto& b) {
      if (a.coord != b.coord) return a.coord < b.coord;
      if (bool(a.at) != bool(b.at)) return bool(a.at);
      return a.at && a.at->compare(*b.at) < 0;
    });
  }

  FieldPtr f_;
  std::vector<bool> compact_;
  std::vector<Term> terms_;
};

// ---------------------------------------------------------------- closed points

// Finite fields: coordinates in fq::level(base, degree), minimal in their Frobenius orbit.
// Other fields: rational coordinates, or (degree > 1) the minimal polynomial of the first coordinate
// of maximal degree (index gen) with every coordinate written as a polynomial in it.
template <class F>
struct ClosedPoint {
  int degree = 1;
  std::vector<typename F::Elem> coords;
  int gen = -1;
  std::optional<Poly<F>> minpoly;
  std::vector<Poly<F>> expr;

  bool rational() const { return degree == 1; }
  std::size_t size() const { return gen < 0 ? coords.size() : expr.size(); }

  int compare(const ClosedPoint& b) const {
    if (degree != b.degree) return degree < b.degree ? -1 : 1;
    if (coords.size() != b.coords.size()) return coords.size() < b.coords.size() ? -1 : 1;
    for (std::size_t i = 0; i < coords.size(); ++i)
      if (int c = detail::elem_order(coords[i], b.coords[i])) return c;
    if (gen != b.gen) return gen < b.gen ? -1 : 1;
    if (gen < 0) return 0;
    if (int c = minpoly->compare(*b.minpoly)) return c;
    if (expr.size() != b.expr.size()) return expr.size() < b.expr.size() ? -1 : 1;
    for (std::size_t i = 0; i < expr.size(); ++i)
      if (int c = expr[i].compare(b.expr[i])) return c;
    return 0;
  }
  friend bool operator==(const ClosedPoint& a, const ClosedPoint& b) { return a.compare(b) == 0; }
};

template <class F>
struct PointLess {
  bool operator()(const ClosedPoint<F>& a, const ClosedPoint<F>& b) const { return a.compare(b) < 0; }
};

// Residue field of a place: the values of rational functions there, and the closed point they define.
template <class F>
class Residue {
 public:
  using Elem = typename F::Elem;
  using Val = Poly<F>;  // element of F[theta]/(g)

  // a finite place g (monic irreducible), or infinity
  static Residue place(const std::shared_ptr<const F>& f, std::optional<Poly<F>> g) {
    Residue r;
    r.f_ = f;
    r.inf_ = !g;
    r.g_ = g ? *g : Poly<F>::x(f);
    return r;
  }
  // the residue field of a closed point, with its coordinates
  static std::pair<Residue, std::vector<Val>> of_point(const std::shared_ptr<const F>& f, const ClosedPoint<F>& P) {
    Residue r;
    r.f_ = f;
    std::vector<Val> v;
    if (P.gen < 0) {
      r.g_ = Poly<F>::x(f);
      for (auto& c : P.coords) v.push_back(Poly<F>::constant(f, c));
    } else {
      r.g_ = *P.minpoly;
      v = P.expr;
    }
    return {r, v};
  }

  int degree() const { return g_.degree(); }
  const Poly<F>& modulus() const { return g_; }
  Val theta() const { return Poly<F>::x(f_) % g_; }
  Val scalar(const Elem& c) const { return Poly<F>::constant(f_, c); }
  Val mul(const Val& a, const Val& b) const { return (a * b) % g_; }

  std::optional<Val> eval(const RatFunc<F>& r) const {
    if (inf_) {
      int dn = r.num.degree(), dd = r.den.degree();
      if (r.num.is_zero() || dn < dd) return Poly<F>(f_);
      if (dn > dd) return std::nullopt;
      return scalar(f_->div(r.num.lc(), r.den.lc()));
    }
    auto d = r.den % g_;
    if (d.is_zero()) return std::nullopt;
    return mul(r.num % g_, inv_mod(d, g_));
  }
  // pi(v) = 0, pi over the base field
  bool root_of(const Poly<F>& pi, const Val& v) const {
    Val acc(f_);
    for (std::size_t i = pi.coeffs().size(); i-- > 0;) acc = mul(acc, v) + scalar(pi.coeffs()[i]);
    return (acc % g_).is_zero();
  }
  bool equals(const Val& v, const Elem& c) const { return ((v - scalar(c)) % g_).is_zero(); }

  // the closed point with these coordinates and [residue field of the place : residue field of the point]
  std::pair<ClosedPoint<F>, long> point(const std::vector<Val>& vals) const {
    ClosedPoint<F> P;
    int e = degree();
    if (e == 1) {
      for (auto& v : vals) P.coords.push_back((v % g_).coeff(0));
      return {P, 1};
    }
    std::vector<Poly<F>> mins;
    int L = 1, c = -1;
    for (std::size_t j = 0; j < vals.size(); ++j) {
      auto m = minimal_polynomial(vals[j] % g_);
      if (m.degree() > L) {
        L = m.degree();
        c = static_cast<int>(j);
      }
      mins.push_back(std::move(m));
    }
    if (L == 1) {
      for (auto& m : mins) P.coords.push_back(f_->neg(m.coeff(0)));
      return {P, e};
    }
    Echelon<F> ech(f_, e);
    Val pw = scalar(f_->one());
    for (int i = 0; i < L; ++i) {
      ech.insert(coeff_vector(pw));
      pw = mul(pw, vals[c] % g_);
    }
    P.degree = L;
    P.gen = c;
    P.minpoly = mins[c];
    for (auto& v : vals) {
      auto comb = ech.express(coeff_vector(v % g_));
      if (!comb) throw root_field_error("no single coordinate generates the residue field");
      P.expr.push_back(Poly<F>(f_, *comb));
    }
    return {P, e / L};
  }

 private:
  std::vector<Elem> coeff_vector(const Val& v) const {
    std::vector<Elem> r(degree(), f_->zero());
    for (std::size_t i = 0; i < v.coeffs().size(); ++i) r[i] = v.coeffs()[i];
    return r;
  }
  // char poly of multiplication by v is a power of the minimal polynomial
  Poly<F> minimal_polynomial(const Val& v) const {
    std::vector<Poly<F>> b;
    for (int i = 0; i <= std::max(0, v.degree()); ++i) {
      auto c = Poly<F>::constant(f_, f_->neg(v.coeff(i)));
      if (i == 0) c = c + Poly<F>::x(f_);
      b.push_back(c);
    }
    auto chi = resultant_t(g_, b).monic();
    std::vector<std::pair<Poly<F>, int>> sq;
    try {
      sq = squarefree_decomposition(chi);
    } catch (const std::domain_error& e) {
      throw root_field_error(e.what());
    }
    if (sq.size() != 1) throw std::logic_error("norm polynomial is not a prime power");
    return sq[0].first;
  }

  std::shared_ptr<const F> f_;
  Poly<F> g_;
  bool inf_ = false;
};

template <>
class Residue<FiniteField> {
 public:
  using Elem = FiniteField::Elem;
  using Val = Elem;

  // place g over level(Ld) (nullopt = infinity) of a curve defined over level(Ld)
  static Residue place(const FieldPtrFq& base, unsigned Ld, std::optional<Poly<FiniteField>> g) {
    Residue r;
    r.base_ = base;
    r.Ld_ = Ld;
    if (!g) {
      r.inf_ = true;
      r.M_ = Ld;
    } else {
      r.M_ = Ld * g->degree();
      auto rs = roots(fq::lift(base, Ld, r.M_, *g));
      if (rs.empty()) throw std::logic_error("place without a root in its residue field");
      r.t0_ = rs.front();
    }
    r.E_ = fq::level(base, r.M_);
    return r;
  }
  // the residue field level(M) with a point embedded into it
  static std::pair<Residue, std::vector<Val>> of_point(const FieldPtrFq& base, const ClosedPoint<FiniteField>& P,
                                                        unsigned M = 0) {
    Residue r;
    r.base_ = base;
    r.Ld_ = P.degree;
    r.M_ = M ? M : P.degree;
    r.E_ = fq::level(base, r.M_);
    const auto& emb = fq::embedding(base, P.degree, r.M_);
    std::vector<Val> v;
    for (auto c : P.coords) v.push_back(emb.at(c.v));
    return {r, v};
  }

  unsigned level() const { return M_; }
  const FieldPtrFq& field() const { return E_; }
  Val scalar_base(Elem c) const { return fq::embedding(base_, 1, M_).at(c.v); }
  Val scalar(Elem c) const { return scalar_base(c); }
  Val mul(Val a, Val b) const { return E_->mul(a, b); }

  // r has coefficients in level(Ld)
  std::optional<Val> eval(const RatFunc<FiniteField>& r) const {
    const auto& emb = fq::embedding(base_, Ld_, M_);
    if (inf_) {
      int dn = r.num.degree(), dd = r.den.degree();
      if (r.num.is_zero() || dn < dd) return E_->zero();
      if (dn > dd) return std::nullopt;
      return E_->div(emb.at(r.num.lc().v), emb.at(r.den.lc().v));
    }
    auto horner = [&](const Poly<FiniteField>& p) {
      Elem acc = E_->zero();
      for (std::size_t i = p.coeffs().size(); i-- > 0;) acc = E_->add(E_->mul(acc, t0_), emb.at(p.coeffs()[i].v));
      return acc;
    };
    auto d = horner(r.den);
    if (E_->is_zero(d)) return std::nullopt;
    return E_->div(horner(r.num), d);
  }
  bool root_of(const Poly<FiniteField>& pi, Val v) const {
    const auto& emb = fq::embedding(base_, 1, M_);
    Elem acc = E_->zero();
    for (std::size_t i = pi.coeffs().size(); i-- > 0;) acc = E_->add(E_->mul(acc, v), emb.at(pi.coeffs()[i].v));
    return E_->is_zero(acc);
  }
  bool equals(Val v, Elem c) const { return v == scalar_base(c); }

  std::pair<ClosedPoint<FiniteField>, long> point(const std::vector<Val>& vals) const {
    auto [L, t] = fq::canonical_tuple(base_, M_, vals);
    ClosedPoint<FiniteField> P;
    P.degree = static_cast<int>(L);
    P.coords = std::move(t);
    return {P, static_cast<long>(M_ / L)};
  }

 private:
  FieldPtrFq base_, E_;
  unsigned Ld_ = 1, M_ = 1;
  Elem t0_{};
  bool inf_ = false;
};

template <class F>
std::string format_point(const std::shared_ptr<const F>& base, const ClosedPoint<F>& P) {
  std::string s = "(";
  if constexpr (is_finite_v<F>) {
    auto E = fq::level(base, P.degree);
    for (std::size_t i = 0; i < P.coords.size(); ++i) s += (i ? ", " : "") + E->format(P.coords[i]);
    s += ")";
    if (P.degree > 1) s += "@deg" + std::to_string(P.degree);
  } else {
    if (P.gen < 0) {
      for (std::size_t i = 0; i < P.coords.size(); ++i) s += (i ? ", " : "") + base->format(P.coords[i]);
      s += ")";
    } else {
      for (std::size_t i = 0; i < P.expr.size(); ++i) s += (i ? ", " : "") + P.expr[i].to_string("r");
      s += ")@[" + P.minpoly->to_string("r") + "]";
    }
  }
  return s;
}

// ---------------------------------------------------------------- point cycles

template <class F>
class PointCycle {
 public:
  using Terms = std::map<ClosedPoint<F>, long, PointLess<F>>;
  using Elem = typename F::Elem;

  PointCycle() = default;
  PointCycle(ModulusPair<F> pair, int q) : pair_(std::move(pair)), q_(q) {}

  static PointCycle rational(ModulusPair<F> pair, int q, std::vector<Elem> coords, long mult = 1) {
    PointCycle z(std::move(pair), q);
    if (static_cast<int>(coords.size()) != z.width()) throw std::invalid_argument("point has the wrong number of coordinates");
    ClosedPoint<F> P;
    P.coords = std::move(coords);
    z.add(P, mult);
    return z;
  }
  // closed points of A^1 with n + q = 1
  static PointCycle from_zero_cycle(ModulusPair<F> pair, int q, const ZeroCycleA1<F>& a) {
    PointCycle z(std::move(pair), q);
    if (z.width() != 1) throw std::invalid_argument("zero cycles of A^1 need a one-dimensional ambient space");
    for (auto& [pi, m] : a.terms()) {
      if constexpr (is_finite_v<F>) {
        auto res = Residue<FiniteField>::place(z.pair_.field_ptr(), 1, pi);
        auto [P, w] = res.point({*res.eval(RatFunc<F>(Poly<F>::x(z.pair_.field_ptr())))});
        z.add(P, m * w);
      } else {
        auto res = Residue<F>::place(z.pair_.field_ptr(), pi);
        auto [P, w] = res.point({res.theta()});
        z.add(P, m * w);
      }
    }
    return z;
  }

  const ModulusPair<F>& pair() const { return pair_; }
  int q() const { return q_; }
  int n() const { return pair_.dim(); }
  int width() const { return n() + q_; }
  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  const std::shared_ptr<const F>& field_ptr() const { return pair_.field_ptr(); }

  void add(const ClosedPoint<F>& P, long m) {
    if (static_cast<int>(P.size()) != width()) throw std::invalid_argument("point has the wrong number of coordinates");
    if (!m) return;
    auto [it, fresh] = t_.emplace(P, m);
    if (!fresh && (it->second += m) == 0) t_.erase(it);
  }

  long degree() const {
    long d = 0;
    for (auto& [P, m] : t_) d += m * P.degree;
    return d;
  }

  PointCycle scaled(long k) const {
    PointCycle r(pair_, q_);
    if (k)
      for (auto& [P, m] : t_) r.t_.emplace(P, m * k);
    return r;
  }
  PointCycle operator-() const { return scaled(-1); }
  friend PointCycle operator+(PointCycle a, const PointCycle& b) {
    a.require_compatible(b);
    for (auto& [P, m] : b.t_) a.add(P, m);
    return a;
  }
  friend PointCycle operator-(const PointCycle& a, const PointCycle& b) { return a + (-b); }
  friend bool operator==(const PointCycle& a, const PointCycle& b) {
    if (a.q_ != b.q_ || !(a.pair_ == b.pair_) || a.t_.size() != b.t_.size()) return false;
    auto i = a.t_.begin();
    for (auto j = b.t_.begin(); j != b.t_.end(); ++i, ++j)
      if (i->second != j->second || !(i->first == j->first)) return false;
    return true;
  }

  // one-dimensional ambient space: the same cycle as monic irreducible polynomials
  ZeroCycleA1<F> to_zero_cycle() const {
    if (width() != 1) throw std::invalid_argument("not a cycle on a line");
    auto f = field_ptr();
    ZeroCycleA1<F> a(f);
    for (auto& [P, m] : t_) {
      if constexpr (is_finite_v<F>) {
        a.add(fq::minpoly(f, P.degree, P.coords[0]), m);
      } else {
        if (P.gen < 0) a.add(Poly<F>::linear(f, P.coords[0]), m);
        else a.add(*P.minpoly, m);
      }
    }
    return a;
  }

  std::string to_string() const {
    if (t_.empty()) return "0";
    std::string s;
    for (auto& [P, m] : t_) {
      if (!s.empty()) s += m < 0 ? " - " : " + ";
      else if (m < 0) s += "-";
      s += std::to_string(m < 0 ? -m : m) + "*" + format_point(field_ptr(), P);
    }
    return s;
  }

  friend std::ostream& operator<<(std::ostream& os, const PointCycle& z) { return os << z.to_string(); }

  void require_compatible(const PointCycle& b) const {
    if (q_ != b.q_ || !(pair_ == b.pair_)) throw std::invalid_argument("point cycles on different spaces");
  }

 private:
  ModulusPair<F> pair_;
  int q_ = 0;
  Terms t_;
};

// Reorders coordinates: new coordinate i is old coordinate perm[i].
template <class F>
PointCycle<F> permute_coordinates(const PointCycle<F>& z, ModulusPair<F> pair, int q, const std::vector<int>& perm) {
  PointCycle<F> r(std::move(pair), q);
  if (static_cast<int>(perm.size()) != r.width()) throw std::invalid_argument("bad permutation");
  for (auto& [P, m] : z.terms()) {
    auto [res, vals] = Residue<F>::of_point(z.field_ptr(), P);
    std::vector<typename Residue<F>::Val> nv;
    for (int i : perm) nv.push_back(vals.at(i));
    auto [Q, w] = res.point(nv);
    r.add(Q, m * w);
  }
  return r;
}

// ---------------------------------------------------------------- parametrized curves

template <class F>
struct ParamCurve {
  ModulusPair<F> pair;
  int q = 0;
  std::shared_ptr<const F> field;  // field of definition
  unsigned field_degree = 1;       // over the base field of the pair (finite fields only)
  std::vector<RatFunc<F>> coords;  // x_1..x_n, s_1..s_q
  long mult = 1;
  bool injective = true;

  int n() const { return pair.dim(); }
  std::string to_string() const {
    std::string s = std::to_string(mult) + "*(";
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (i) s += static_cast<int>(i) == n() ? "; " : ", ";
      s += coords[i].to_string("t");
    }
    if (static_cast<int>(coords.size()) == n()) s += ";";
    return s + ")";
  }
};

// Exact generic injectivity: [K(t) : K(x_1(t), ...)] equals the t-degree of
// gcd_i (num_i(t) den_i(T) - num_i(T) den_i(t)) over K(T).
template <class F>
bool check_injective(const std::vector<RatFunc<F>>& xs) {
  auto K = xs.at(0).field_ptr();
  for (auto& x : xs)
    if (x.height() == 1) return true;
  bool nonconstant = std::any_of(xs.begin(), xs.end(), [](auto& x) { return !x.is_constant(); });
  if (!nonconstant) return false;
  if constexpr (is_function_field<F>::value) {
    // necessary condition only: separate a fixed pair of parameter values
    auto sample = [&](long a) {
      std::vector<typename F::Elem> v;
      for (auto& x : xs) {
        auto e = eval(x, K->from_int(a));
        v.push_back(e ? *e : K->from_int(1000003));
      }
      return v;
    };
    for (long a = 2; a < 12; ++a)
      for (long b = a + 1; b < 12; ++b) {
        auto u = sample(a), w = sample(b);
        bool same = true;
        for (std::size_t i = 0; i < u.size(); ++i) same = same && K->eq(u[i], w[i]);
        if (!same) return true;
      }
    return false;
  } else {
    auto KT = std::make_shared<const FunctionField<F>>(K, "T");
    using P = Poly<FunctionField<F>>;
    std::optional<P> g;
    for (auto& x : xs) {
      if (x.is_constant()) continue;
      // num(T), den(T) as elements of K(T)
      auto numT = RatFunc<F>(x.num), denT = RatFunc<F>(x.den);
      std::size_t deg = std::max(x.num.coeffs().size(), x.den.coeffs().size());
      std::vector<RatFunc<F>> c;
      for (std::size_t k = 0; k < deg; ++k) {
        auto nk = RatFunc<F>(Poly<F>::constant(K, x.num.coeff(k)));
        auto dk = RatFunc<F>(Poly<F>::constant(K, x.den.coeff(k)));
        c.push_back(nk * denT - numT * dk);
      }
      P G(KT, std::move(c));
      g = g ? gcd(*g, G) : G.monic();
    }
    return g && g->degree() == 1;
  }
}

template <class F>
ParamCurve<F> make_curve(ModulusPair<F> pair, int q, std::vector<RatFunc<F>> coords, long mult = 1,
                         bool injective = true, std::shared_ptr<const F> field = nullptr, unsigned field_degree = 1) {
  ParamCurve<F> c;
  c.pair = std::move(pair);
  c.q = q;
  c.field = field ? field : c.pair.field_ptr();
  c.field_degree = field_degree;
  if constexpr (is_finite_v<F>) {
    if (!same_field(c.field, fq::level(c.pair.field_ptr(), field_degree)))
      throw std::invalid_argument("curve field is not the residue level of the given degree");
  } else {
    if (field_degree != 1) throw std::invalid_argument("extension curves need a finite base field");
    require_same(c.field, c.pair.field_ptr());
  }
  if (static_cast<int>(coords.size()) != c.pair.dim() + q) throw std::invalid_argument("coordinate count must be n + q");
  for (auto& x : coords) require_same(x.field_ptr(), c.field);
  c.coords = std::move(coords);
  c.mult = mult;
  c.injective = injective;
  if (std::all_of(c.coords.begin(), c.coords.end(), [](auto& x) { return x.is_constant(); }))
    throw std::invalid_argument("constant parametrization is not a curve");
  if (injective && !check_injective(c.coords)) throw std::invalid_argument("parametrization is not generically injective");
  return c;
}

namespace detail {

template <class F>
Poly<F> to_curve_field(const ParamCurve<F>& V, const Poly<F>& p) {
  if constexpr (is_finite_v<F>) return fq::lift(V.pair.field_ptr(), 1, V.field_degree, p);
  else return p;
}
template <class F>
typename F::Elem scalar_to_curve_field(const ParamCurve<F>& V, const typename F::Elem& a) {
  if constexpr (is_finite_v<F>) return fq::embedding(V.pair.field_ptr(), 1, V.field_degree).at(a.v);
  else return a;
}
template <class F>
RatFunc<F> constant_rf(const std::shared_ptr<const F>& f, const typename F::Elem& a) {
  return RatFunc<F>(Poly<F>::constant(f, a));
}
template <class F>
Residue<F> residue_place(const ParamCurve<F>& V, std::optional<Poly<F>> g) {
  if constexpr (is_finite_v<F>) return Residue<F>::place(V.pair.field_ptr(), V.field_degree, std::move(g));
  else return Residue<F>::place(V.field, std::move(g));
}

// Refine a list of monic polynomials into pairwise coprime factors of which each input is a product.
template <class F>
std::vector<Poly<F>> coprime_basis(std::vector<Poly<F>> in) {
  std::vector<Poly<F>> work;
  for (auto& p : in)
    if (p.degree() > 0) work.push_back(p.monic());
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < work.size() && !changed; ++i)
      for (std::size_t j = i + 1; j < work.size() && !changed; ++j) {
        auto g = gcd(work[i], work[j]);
        if (g.degree() <= 0) continue;
        auto a = work[i] / g, b = work[j] / g;
        work.erase(work.begin() + j);
        work.erase(work.begin() + i);
        for (auto* p : {&a, &b, &g})
          if (p->degree() > 0) work.push_back(p->monic());
        changed = true;
      }
  }
  std::sort(work.begin(), work.end(), [](auto& a, auto& b) { return a.compare(b) < 0; });
  return work;
}

// irreducible factors with multiplicity when the field allows it; the piece itself otherwise
template <class F>
std::vector<std::pair<Poly<F>, int>> split_places(const Poly<F>& b) {
  try {
    return factor(b).factors;
  } catch (const std::exception&) {
    return {{b, 1}};
  }
}

}  // namespace detail

// ---------------------------------------------------------------- modulus condition

enum class ModulusVariant { star, naive };

inline std::string variant_name(ModulusVariant v) { return v == ModulusVariant::star ? "star" : "naive"; }

struct CertificateEntry {
  std::string place;
  long left = 0, right = 0;
};

struct ModulusCertificate {
  ModulusVariant variant = ModulusVariant::star;
  std::vector<CertificateEntry> entries;
  bool pass = true;

  std::string to_string() const {
    std::string s = std::string(pass ? "PASS" : "FAIL") + " (" + variant_name(variant) + ")";
    for (auto& e : entries) s += " " + e.place + ":" + std::to_string(e.left) + "<=" + std::to_string(e.right);
    return s;
  }
};

// Pullback of X^inf and of X x F_q to the normalization P^1 of the curve, compared place by place.
// Places are grouped by a coprime basis of all relevant polynomials; a group is split into
// irreducible places whenever the field can factor it (orders then scale by the multiplicity).
template <class F>
ModulusCertificate check_modulus(const ParamCurve<F>& V, ModulusVariant variant = ModulusVariant::star) {
  using RF = RatFunc<F>;
  const int n = V.n();
  struct Pulled {
    long coeff;
    int coord;
    std::optional<RF> eq;  // pi(x_i(t)); nullopt for the term at infinity
    int deg;
  };
  std::vector<Pulled> pulled;
  std::vector<Poly<F>> polys;
  for (auto& t : V.pair.terms()) {
    Pulled p{t.coeff, t.coord, std::nullopt, 1};
    if (t.at) {
      auto pi = detail::to_curve_field(V, *t.at);
      auto e = compose(RF(pi), V.coords[t.coord]);
      if (e.is_zero()) throw modulus_error("curve lies inside |X^inf|");
      polys.push_back(e.num);
      polys.push_back(e.den);
      p.eq = e;
      p.deg = pi.degree();
    }
    pulled.push_back(std::move(p));
  }
  for (auto& x : V.coords) polys.push_back(x.den);
  auto basis = detail::coprime_basis(polys);

  ModulusCertificate cert;
  cert.variant = variant;
  auto assess = [&](auto&& ord, const std::string& label, long scale) {
    for (int i = 0; i < n; ++i)
      if (!V.pair.compact(i) && ord(V.coords[i]) < 0) return;  // not on the closure in Xbar
    if (variant == ModulusVariant::naive)
      for (int j = n; j < n + V.q; ++j)
        if (ord(V.coords[j]) < 0) return;  // closure taken in Xbar x A^q
    long left = 0, right = 0;
    for (auto& p : pulled) {
      int ox = ord(V.coords[p.coord]);
      long c = p.eq ? ord(*p.eq) - static_cast<long>(p.deg) * std::min(0, ox) : std::max(0, -ox);
      left += p.coeff * c;
    }
    if (variant == ModulusVariant::star)
      for (int j = n; j < n + V.q; ++j) right += std::max(0, -ord(V.coords[j]));
    if (!left && !right) return;
    cert.entries.push_back({label, left * scale, right * scale});
    if (left > right) cert.pass = false;
  };
  constexpr int kZeroOrder = 1 << 20;  // the zero function vanishes to every order
  for (auto& b : basis) {
    auto ord = [&](const RF& f) {
      if (f.is_zero()) return kZeroOrder;
      return multiplicity(f.num, b) - multiplicity(f.den, b);
    };
    auto parts = detail::split_places(b);
    for (auto& [P, k] : parts) assess(ord, "[" + P.to_string("t") + "]", k);
  }
  auto ord_inf = [&](const RF& f) { return f.is_zero() ? kZeroOrder : valuation(f, PlaceP1<F>::infinity()); };
  assess(ord_inf, "[inf]", 1);
  return cert;
}

// Points: q = 0 rule. A point in the support of a component contributes that coefficient.
template <class F>
ModulusCertificate check_modulus(const PointCycle<F>& Z, ModulusVariant variant = ModulusVariant::star) {
  ModulusCertificate cert;
  cert.variant = variant;
  for (auto& [P, m] : Z.terms()) {
    auto [res, vals] = Residue<F>::of_point(Z.field_ptr(), P);
    long left = 0;
    for (auto& t : Z.pair().terms())
      if (t.at && res.root_of(*t.at, vals[t.coord])) left += t.coeff;
    if (!left) continue;
    cert.entries.push_back({format_point(Z.field_ptr(), P), left, 0});
    if (left > 0) cert.pass = false;
  }
  return cert;
}

// ---------------------------------------------------------------- faces

// Reasons the curve fails to meet some face properly (empty = proper).
template <class F>
std::vector<std::string> face_defects(const ParamCurve<F>& V) {
  std::vector<std::string> out;
  const int n = V.n();
  auto K = V.field;
  std::vector<std::array<RatFunc<F>, 2>> h;
  for (int j = 0; j < V.q; ++j) {
    std::array<RatFunc<F>, 2> he;
    for (int e = 0; e < 2; ++e) {
      he[e] = V.coords[n + j] - detail::constant_rf(K, K->from_int(e));
      if (he[e].is_zero()) out.push_back("contained in {s" + std::to_string(j + 1) + "=" + std::to_string(e) + "}");
    }
    h.push_back(he);
  }
  if (!out.empty()) return out;
  auto inf = PlaceP1<F>::infinity();
  for (int i = 0; i < V.q; ++i)
    for (int j = i + 1; j < V.q; ++j)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          bool meet = gcd(h[i][a].num, h[j][b].num).degree() > 0 ||
                      (valuation(h[i][a], inf) > 0 && valuation(h[j][b], inf) > 0);
          if (meet)
            out.push_back("meets {s" + std::to_string(i + 1) + "=" + std::to_string(a) + ", s" + std::to_string(j + 1) +
                          "=" + std::to_string(b) + "}");
        }
  return out;
}

template <class F>
bool check_faces(const ParamCurve<F>& V) {
  return face_defects(V).empty();
}

template <class F>
bool check_faces(const PointCycle<F>& Z) {
  for (auto& [P, m] : Z.terms()) {
    auto [res, vals] = Residue<F>::of_point(Z.field_ptr(), P);
    for (int j = Z.n(); j < Z.width(); ++j)
      for (long e = 0; e < 2; ++e)
        if (res.equals(vals[j], Z.field_ptr()->from_int(e))) return false;
  }
  return true;
}

// ---------------------------------------------------------------- slices and boundaries

template <class F>
struct SliceResult {
  PointCycle<F> cycle;
  std::vector<std::string> outside;  // intersection points lying in |X^inf|
};

// V . {coordinate c = eps}, the coordinate removed. Points leaving X x A^q are not on V.
template <class F>
SliceResult<F> slice(const ParamCurve<F>& V, int c, const typename F::Elem& eps) {
  const int n = V.n();
  if (c < 0 || c >= n + V.q) throw std::invalid_argument("slice coordinate out of range");
  auto base = V.pair.field_ptr();
  auto K = V.field;
  ModulusPair<F> pair = c < n ? V.pair.drop(c) : V.pair;
  SliceResult<F> out{PointCycle<F>(pair, c < n ? V.q : V.q - 1), {}};
  auto h = V.coords[c] - detail::constant_rf(K, detail::scalar_to_curve_field(V, eps));
  if (h.is_zero()) throw improper_intersection("curve lies in the slice hyperplane");

  std::vector<std::pair<std::optional<Poly<F>>, int>> places;
  if (h.num.degree() > 0) {
    std::vector<std::pair<Poly<F>, int>> fs;
    try {
      fs = factor(h.num).factors;
    } catch (const factorization_incomplete& e) {
      throw root_field_error(e.what());
    } catch (const std::domain_error& e) {
      throw root_field_error(e.what());
    }
    for (auto& [g, e] : fs) places.emplace_back(g, e);
  }
  if (int v = valuation(h, PlaceP1<F>::infinity()); v > 0) places.emplace_back(std::nullopt, v);

  for (auto& [g, e] : places) {
    auto res = detail::residue_place(V, g);
    std::vector<typename Residue<F>::Val> vals;
    bool skip = false, at_inf_interior = false, outside = false;
    for (int j = 0; j < n + V.q && !skip; ++j) {
      if (j == c) continue;
      auto v = res.eval(V.coords[j]);
      if (!v) {
        if (j >= n || !V.pair.compact(j)) skip = true;
        else if (V.pair.has_infinity_term(j)) outside = true;
        else at_inf_interior = true;
        vals.push_back(res.scalar(base->zero()));
        continue;
      }
      vals.push_back(*v);
    }
    if (skip) continue;
    if (at_inf_interior) throw unsupported_shape("intersection point at infinity of an interior coordinate");
    for (auto& t : V.pair.terms()) {
      if (!t.at || t.coord == c) continue;
      int j = t.coord < c ? t.coord : t.coord - 1;
      if (res.root_of(*t.at, vals[j])) outside = true;
    }
    std::string label = g ? "[" + g->to_string("t") + "]" : "[inf]";
    if (outside) {
      out.outside.push_back(label);
      continue;
    }
    auto [P, w] = res.point(vals);
    out.cycle.add(P, V.mult * e * w);
  }
  return out;
}

// sum_i (-1)^i (d_i^1 - d_i^0)
template <class F>
PointCycle<F> boundary(const ParamCurve<F>& V) {
  if (V.q < 1) throw std::invalid_argument("boundary of a curve needs q >= 1");
  auto f = V.pair.field_ptr();
  PointCycle<F> d(V.pair, V.q - 1);
  bool checked = false, passes = false;
  for (int i = 1; i <= V.q; ++i) {
    long sign = (i % 2) ? -1 : 1;
    for (long e = 0; e < 2; ++e) {
      auto s = slice(V, V.n() + i - 1, f->from_int(e));
      // points of |X^inf| are not on the face; for effective pairs (*) keeps them away
      if (!s.outside.empty() && V.pair.is_effective()) {
        if (!checked) {
          passes = check_modulus(V).pass;
          checked = true;
        }
        if (passes) throw std::logic_error("containment violated: face point of an admissible curve in |X^inf| at " + s.outside[0]);
      }
      d = d + s.cycle.scaled(e ? sign : -sign);
    }
  }
  return d;
}

// i_eps^* on the coordinate c of the pair (a coordinate of Xbar), restricted to the interior
template <class F>
PointCycle<F> restrict_to(const ParamCurve<F>& V, int c, const typename F::Elem& eps) {
  return slice(V, c, eps).cycle;
}

// ---------------------------------------------------------------- rigidity shift

// The last coordinate of the pair must be the minus cube. Phi_q moves it to the last cube slot with
// sign (-1)^{q+1}; with this sign d Phi_q + Phi_{q-1} d = i_1^* - i_0^*.
template <class F>
void require_minus_cube_last(const ModulusPair<F>& pair) {
  if (pair.dim() < 1 || !pair.is_minus_cube_coordinate(pair.dim() - 1))
    throw std::invalid_argument("the last coordinate of the pair must be the minus cube");
}

template <class F>
std::vector<std::string> w_defects(const ParamCurve<F>& V) {
  require_minus_cube_last(V.pair);
  int y = V.n() - 1;
  ParamCurve<F> W = V;
  W.pair = V.pair.take(y);
  W.q = V.q + 1;
  W.coords.erase(W.coords.begin() + y);
  W.coords.push_back(V.coords[y]);
  return face_defects(W);
}

template <class F>
ParamCurve<F> phi_shift(const ParamCurve<F>& V) {
  require_minus_cube_last(V.pair);
  if (!check_modulus(V).pass) throw std::invalid_argument("input fails the modulus condition");
  if (auto w = w_defects(V); !w.empty()) throw w_condition_violated(w[0]);
  int y = V.n() - 1;
  ParamCurve<F> W = V;
  W.pair = V.pair.take(y);
  W.q = V.q + 1;
  W.coords.erase(W.coords.begin() + y);
  W.coords.push_back(V.coords[y]);
  W.mult = (V.q % 2 == 0) ? -V.mult : V.mult;
  return W;
}

template <class F>
PointCycle<F> phi_shift(const PointCycle<F>& Z) {
  require_minus_cube_last(Z.pair());
  int y = Z.n() - 1;
  std::vector<int> perm;
  for (int i = 0; i < Z.width(); ++i)
    if (i != y) perm.push_back(i);
  perm.push_back(y);
  auto r = permute_coordinates(Z, Z.pair().take(y), Z.q() + 1, perm);
  if (!check_faces(r)) throw w_condition_violated("point on {y=0} or {y=1}");
  return (Z.q() % 2 == 0) ? -r : r;
}

template <class F>
struct PhiReport {
  PointCycle<F> lhs;  // d Phi_q V + Phi_{q-1} d V
  PointCycle<F> rhs;  // i_1^* V - i_0^* V
  PointCycle<F> literal_lhs;  // d Phi_q V - Phi_{q-1} d V
  bool holds = false;
  bool literal_holds = false;
};

template <class F>
PhiReport<F> verify_phi_homotopy(const ParamCurve<F>& V) {
  auto f = V.pair.field_ptr();
  int y = V.n() - 1;
  PhiReport<F> r;
  auto dphi = boundary(phi_shift(V));
  PointCycle<F> phid(dphi.pair(), dphi.q());
  if (V.q >= 1) phid = phi_shift(boundary(V));
  r.lhs = dphi + phid;
  r.literal_lhs = dphi - phid;
  r.rhs = restrict_to(V, y, f->one()) - restrict_to(V, y, f->zero());
  r.holds = r.lhs == r.rhs;
  r.literal_holds = r.literal_lhs == r.rhs;
  return r;
}

// ---------------------------------------------------------------- Witt action

// alpha . Z = (mu_alpha x id)_*(alpha x Z), multiplying coordinate a1 (a coordinate of the A^1 factor).
template <class F>
PointCycle<F> witt_action(const ZeroCycleA1<F>& alpha, const PointCycle<F>& Z, int a1 = -1) {
  alpha.require_off_zero();
  if (a1 < 0) a1 = Z.n() - 1;
  if (a1 >= Z.n()) throw std::invalid_argument("the A^1 coordinate must belong to the pair");
  auto f = Z.field_ptr();
  PointCycle<F> r(Z.pair(), Z.q());
  if (alpha.is_zero()) return r;
  require_same(alpha.field_ptr(), f);
  for (auto& [P, m] : Z.terms()) {
    for (auto& [pi, k] : alpha.terms()) {
      if constexpr (is_finite_v<F>) {
        unsigned L = P.degree, e = pi.degree();
        unsigned M = std::lcm(L, e);
        auto [res, vals] = Residue<F>::of_point(f, P, M);
        // every root a of pi: (.., a u, ..) weighted L / L_Q; the sum over roots is integral
        std::map<ClosedPoint<F>, long, PointLess<F>> acc;
        for (auto a : roots(fq::lift(f, 1, M, pi))) {
          auto nv = vals;
          nv[a1] = res.mul(nv[a1], a);
          auto [Q, w] = res.point(nv);
          acc[Q] += static_cast<long>(L);
          (void)w;
        }
        for (auto& [Q, cnt] : acc) {
          if (cnt % Q.degree) throw std::logic_error("non-integral pushforward weight");
          r.add(Q, m * k * (cnt / Q.degree));
        }
      } else {
        if (P.degree == 1) {
          auto res = Residue<F>::place(f, pi);
          std::vector<Poly<F>> vals;
          for (auto& c : P.coords) vals.push_back(res.scalar(c));
          vals[a1] = res.mul(vals[a1], res.theta());
          auto [Q, w] = res.point(vals);
          r.add(Q, m * k * w);
        } else if (pi.degree() == 1) {
          auto a = f->neg(pi.coeff(0));
          auto [res, vals] = Residue<F>::of_point(f, P);
          vals[a1] = res.mul(vals[a1], res.scalar(a));
          auto [Q, w] = res.point(vals);
          r.add(Q, m * k * w);
        } else {
          throw unsupported_shape("action of a non-rational place on a non-rational point");
        }
      }
    }
  }
  return r;
}

// pr_1^* W as the curve t -> (W, t) with the A^1 coordinate last among the pair coordinates.
template <class F>
std::vector<ParamCurve<F>> cylinder(const PointCycle<F>& W, const ModulusPair<F>& line = {}) {
  auto f = W.field_ptr();
  auto A1 = line.field_ptr() ? line : ModulusPair<F>::affine(f, 1);
  auto pair = tensor(W.pair().take(W.n()), A1);
  std::vector<ParamCurve<F>> out;
  for (auto& [P, m] : W.terms()) {
    std::vector<RatFunc<F>> xs;
    std::shared_ptr<const F> K = f;
    unsigned Ld = 1;
    if constexpr (is_finite_v<F>) {
      K = fq::level(f, P.degree);
      Ld = P.degree;
      for (auto& c : P.coords) xs.push_back(detail::constant_rf(K, c));
    } else {
      if (P.degree != 1) throw unsupported_shape("cylinder over a non-rational point");
      for (auto& c : P.coords) xs.push_back(detail::constant_rf(K, c));
    }
    std::vector<RatFunc<F>> cs(xs.begin(), xs.begin() + W.n());
    cs.push_back(RatFunc<F>(Poly<F>::x(K)));
    cs.insert(cs.end(), xs.begin() + W.n(), xs.end());
    out.push_back(make_curve(pair, W.q(), cs, m, true, K, Ld));
  }
  return out;
}

template <class F>
bool is_cylinder(const ParamCurve<F>& V, int a1) {
  for (int i = 0; i < static_cast<int>(V.coords.size()); ++i) {
    if (i == a1) {
      if (!(V.coords[i] == RatFunc<F>(Poly<F>::x(V.field)))) return false;
    } else if (!V.coords[i].is_constant()) {
      return false;
    }
  }
  return true;
}

// Curves: cylinders scale by deg alpha; otherwise rational places multiply the A^1 coordinate.
template <class F>
std::vector<ParamCurve<F>> witt_action(const ZeroCycleA1<F>& alpha, const ParamCurve<F>& V, int a1 = -1) {
  alpha.require_off_zero();
  if (a1 < 0) a1 = V.n() - 1;
  if (is_cylinder(V, a1)) {
    if (alpha.degree() == 0) return {};
    auto W = V;
    W.mult *= alpha.degree();
    return {W};
  }
  std::vector<ParamCurve<F>> out;
  for (auto& [pi, k] : alpha.terms()) {
    if (pi.degree() != 1) throw unsupported_shape("action of a non-rational place on a non-cylinder curve");
    auto a = detail::scalar_to_curve_field(V, V.pair.field_ptr()->neg(pi.coeff(0)));
    auto W = V;
    W.coords[a1] = W.coords[a1] * detail::constant_rf(V.field, a);
    W.mult *= k;
    out.push_back(std::move(W));
  }
  return out;
}

}  // namespace chowmod
