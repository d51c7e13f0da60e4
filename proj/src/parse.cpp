#include "chowmod/parse.hpp"

namespace chowmod {

namespace {

bool is_ident(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::uint64_t parse_uint(std::string_view s, std::string_view whole) {
  if (s.empty() || s.size() > 9) throw parse_error("bad field size in '" + std::string(whole) + "'");
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) throw parse_error("bad field size in '" + std::string(whole) + "'");
  return std::stoull(std::string(s));
}

std::variant<FieldPtrQ, FieldPtrFq> parse_base(std::string_view s) {
  s = strip(s);
  if (s == "Q") return Rationals::instance();
  if (s.empty() || s[0] != 'F') throw parse_error("unknown field '" + std::string(s) + "'");
  auto eq = s.find('=');
  std::uint64_t q = parse_uint(strip(s.substr(1, eq == std::string_view::npos ? s.npos : eq - 1)), s);
  auto pf = prime_factors(q);
  if (pf.size() != 1) throw parse_error("field size " + std::to_string(q) + " is not a prime power");
  std::uint32_t p = static_cast<std::uint32_t>(pf[0]), e = 0;
  for (std::uint64_t t = q; t > 1; t /= p) ++e;
  if (eq == std::string_view::npos) return FiniteField::canonical(p, e);
  // F9=F3[x]/(x^2+1)
  auto rhs = strip(s.substr(eq + 1));
  auto lb = rhs.find('['), rb = rhs.find(']');
  if (lb == rhs.npos || rb == rhs.npos || rb < lb) throw parse_error("bad extension syntax '" + std::string(s) + "'");
  std::uint64_t p2 = parse_uint(strip(rhs.substr(1, lb - 1)), s);
  if (rhs[0] != 'F' || p2 != p) throw parse_error("extension must be written over F" + std::to_string(p));
  std::string gen(strip(rhs.substr(lb + 1, rb - lb - 1)));
  if (!is_ident(gen)) throw parse_error("bad generator name '" + gen + "'");
  auto rest = strip(rhs.substr(rb + 1));
  if (rest.size() < 3 || rest[0] != '/' ) throw parse_error("bad extension syntax '" + std::string(s) + "'");
  rest = strip(rest.substr(1));
  if (rest.front() != '(' || rest.back() != ')') throw parse_error("bad extension syntax '" + std::string(s) + "'");
  auto mod = parse_poly(FiniteField::prime(p), rest.substr(1, rest.size() - 2), gen).monic();
  if (static_cast<std::uint32_t>(mod.degree()) != e)
    throw parse_error("modulus degree does not match F" + std::to_string(q));
  std::vector<std::uint32_t> mc;
  for (auto& c : mod.coeffs()) mc.push_back(c.v);
  return FiniteField::with_modulus(p, mc, gen);
}

}  // namespace

AnyField parse_field(std::string_view s) {
  s = strip(s);
  if (!s.empty() && s.back() == ')') {
    auto lp = s.rfind('(');
    if (lp != s.npos) {
      auto var = s.substr(lp + 1, s.size() - lp - 2);
      if (is_ident(var)) {
        std::string v(var);
        auto base = parse_base(s.substr(0, lp));
        if (auto* q = std::get_if<FieldPtrQ>(&base)) return std::make_shared<const FunctionField<Rationals>>(*q, v);
        auto fq = std::get<FieldPtrFq>(base);
        if (fq->degree() > 1 && fq->generator_name() == v) throw parse_error("variable clashes with the generator name");
        return std::make_shared<const FunctionField<FiniteField>>(fq, v);
      }
    }
  }
  auto b = parse_base(s);
  if (auto* q = std::get_if<FieldPtrQ>(&b)) return *q;
  return std::get<FieldPtrFq>(b);
}

std::string describe(const AnyField& f) {
  return std::visit([](const auto& p) { return p->describe(); }, f);
}

}  // namespace chowmod
