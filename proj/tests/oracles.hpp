#pragma once

// Independent recomputations shared by the unit tests and the acceptance binary.

#include <algorithm>

#include "chowmod/cycles.hpp"
#include "chowmod/factor.hpp"

namespace chowmod::oracle {

// Does the closure of V in Xbar x A^q meet |X^inf x A^q|? Zeros of the divisor equations, checked place by place.
inline bool meets_support(const ParamCurve<FiniteField>& V) {
  using FF = FiniteField;
  using RF = RatFunc<FF>;
  std::vector<PlaceP1<FF>> hits;
  auto add_zeros = [&](const RF& h) {
    if (h.num.is_zero()) return;
    for (auto& [pi, e] : factor(h.num).factors) hits.push_back(PlaceP1<FF>::finite(pi));
    if (h.num.degree() < h.den.degree()) hits.push_back(PlaceP1<FF>::infinity());
  };
  for (auto& t : V.pair.terms()) {
    auto& x = V.coords[t.coord];
    if (t.at) add_zeros(compose(RF(*t.at), x));
    else if (!x.is_zero()) add_zeros(inverse(x));
  }
  for (auto& P : hits) {
    bool finite = true;
    for (int j = 0; j < static_cast<int>(V.coords.size()); ++j) {
      if (j < V.n() && V.pair.compact(j)) continue;
      finite = finite && (V.coords[j].is_zero() || valuation(V.coords[j], P) >= 0);
    }
    if (finite) return true;
  }
  return false;
}

// Least d for which the translated curve passes: the pole of tau^d at infinity has to cover the
// infinity coefficients of the translated compact coordinates.
inline int dv_oracle(const ModulusPair<FiniteField>& Y, const std::vector<int>& coords) {
  long sum = 0;
  for (int i : coords) {
    if (!Y.compact(i)) return 1;  // the pole leaves the closure
    for (auto& t : Y.terms())
      if (t.coord == i && !t.at) sum += t.coeff;
  }
  return static_cast<int>(std::max(1L, sum));
}

}  // namespace chowmod::oracle
