#pragma once

#include <json.hpp>
#include <random>
#include <set>

#include "chowmod/cubical.hpp"
#include "chowmod/homotopy.hpp"

namespace chowmod {

struct CheckResult {
  std::string name;
  std::string anchor;  // the identity being checked
  bool passed = true;
  std::size_t cases = 0;
  std::string counterexample;

  CheckResult(std::string n, std::string a) : name(std::move(n)), anchor(std::move(a)) {}
  void fail(const std::string& what) {
    if (passed) counterexample = what;
    passed = false;
  }
};

struct SuiteReport {
  std::vector<CheckResult> checks;
  bool pass() const {
    return std::all_of(checks.begin(), checks.end(), [](auto& c) { return c.passed; });
  }
  nlohmann::json to_json() const;
};

enum class Scope { witt, divisors, cycles };
Scope parse_scope(const std::string& s);

SuiteReport run_suite(const std::set<Scope>& scopes, std::uint64_t seed = 1);
// ring axioms, generator law, torsion and Frobenius identities (char p), ghost checks (char 0)
SuiteReport witt_selftest(const std::string& field, int m, std::uint64_t seed = 1);

// ---------------------------------------------------------------- corpora

// Admissible curves on (A^1, m{0}) (x) minus cube with q in {0, 1}, passing faces, (*) and the w-condition.
std::vector<ParamCurve<FiniteField>> phi_corpus(std::size_t count, std::uint64_t seed);

// Curves on (A^1, m{0}) x box^1 passing faces and (*).
std::vector<ParamCurve<FiniteField>> admissible_corpus(std::size_t count, std::uint64_t seed);

// Curves with q = 1 on effective pairs, admissible or not.
std::vector<ParamCurve<FiniteField>> effective_corpus(std::size_t count, std::uint64_t seed);

struct TildeSummary {
  std::string label;
  bool i0_holds = false, i1_holds = false, boundary_identity = false, modulus_ok = false, w_ok = false;
  std::string detail;
};
// (Z, f) pairs over F2, F3 (points of degree <= 2) and rational points over Q
std::vector<TildeSummary> tilde_corpus(std::size_t count, std::uint64_t seed);

// Point cycles on X (x) cubes and the translated cube coordinates.
struct TranslationShape {
  ModulusPair<FiniteField> pair;
  std::vector<int> coords;
  PointCycle<FiniteField> cycle;
};
std::vector<TranslationShape> translation_corpus();

// Sub-cubical group generated by curves of codimension 2 in A^1 x box^2 (faces: points in A^1 x box^1).
CubicalGroup curve_cubical_group(const std::vector<ParamCurve<FiniteField>>& curves);
std::vector<ParamCurve<FiniteField>> face_proper_corpus(std::size_t count, std::uint64_t seed);

}  // namespace chowmod
