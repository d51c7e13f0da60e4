#pragma once

#include <json.hpp>

#include "chowmod/cycles.hpp"
#include "chowmod/intmatrix.hpp"

namespace chowmod {

struct cap_exceeded : std::runtime_error {
  explicit cap_exceeded(const std::string& w) : std::runtime_error(w) {}
};

struct ChowComputationConfig {
  std::string field = "F2";
  int m = 1;
  int deg_bound = 2;     // D: generators are the closed points of degree <= D
  int height = 3;        // H: degree bound on numerators and denominators of x(t), s(t)
  int x_degree = 1;      // degree of x(t) as a map; 1 means graphs x = t
  std::size_t cap = 20000;  // relation columns
  unsigned threads = 0;     // 0: hardware concurrency
  std::string out;
};

struct ChowReport {
  ChowComputationConfig config;
  std::vector<std::string> generators;
  std::size_t candidates = 0;   // enumerated (x, s) tuples
  std::size_t admissible = 0;   // passing faces, injectivity and (*)
  std::size_t relation_count = 0;  // distinct nonzero relation vectors
  std::size_t discarded = 0;       // boundaries leaving the degree-D span
  std::vector<std::string> discarded_log;
  std::vector<std::string> invariant_factors;  // of the quotient Z^G / relations, nontrivial only
  std::optional<mpz_class> order;              // nullopt: infinite quotient
  mpz_class expected_order;                    // q^m
  bool order_matches = false;

  // witt_of_cycle on relations: identity modulo u^m (the class in W_{m-1}, m coefficients minus one)
  bool relations_identity = true;
  std::vector<std::string> well_definedness_log;
  std::size_t nonidentity_in_Wm = 0;  // relations whose class in W_m (mod u^{m+1}) is not the identity
  bool homomorphism = true;

  // classes of generators in W_{m-1} and W_m; witnesses for every element reached
  bool surjective_below = false;
  bool surjective_Wm = false;
  std::vector<std::pair<std::string, std::string>> witnesses;  // element of W_m -> cycle of degree <= D points

  double seconds = 0;

  bool pass() const { return relations_identity && homomorphism && order_matches; }
  nlohmann::json to_json() const;
};

// Candidate count before enumeration; throws cap_exceeded if it is above config.cap.
std::size_t chow_candidate_count(const ChowComputationConfig& config);
ChowReport compute_ch0(const ChowComputationConfig& config);

// Full + and * tables of W_m(F_q).
struct WittTable {
  std::string field;
  int m = 1;
  std::vector<std::string> elements;  // coefficient lists
  std::vector<std::vector<std::uint32_t>> add, star;
  std::vector<std::string> additive_orders;
  std::string additive_group;  // invariant factors of the additive group, e.g. "Z/4"
  std::vector<std::string> axiom_failures;
  bool axioms_ok() const { return axiom_failures.empty(); }
  std::string render() const;
  nlohmann::json to_json() const;
};

constexpr std::uint64_t kWittTableCap = 4096;
WittTable witt_table(const std::string& field, int m);

}  // namespace chowmod
