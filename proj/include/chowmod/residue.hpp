#pragma once

#include "chowmod/factor.hpp"

namespace chowmod::fq {

using Elem = FiniteField::Elem;

// Residue tower over a finite base field: level(1) = base, level(M) = canonical field of degree M over base.
FieldPtrFq level(const FieldPtrFq& base, unsigned M);

// Embedding level(L) -> level(M), L | M. Cached.
const std::vector<Elem>& embedding(const FieldPtrFq& base, unsigned L, unsigned M);

// Coefficients of g (over level(L)) mapped into level(M).
Poly<FiniteField> lift(const FieldPtrFq& base, unsigned L, unsigned M, const Poly<FiniteField>& g);

// Smallest L with the tuple fixed by x -> x^{|base|^L}, and the orbit-minimal image of the tuple in level(L).
// Any two embeddings differ by a Frobenius power, so the result only depends on the closed point.
std::pair<unsigned, std::vector<Elem>> canonical_tuple(const FieldPtrFq& base, unsigned M, const std::vector<Elem>& xs);

// Minimal polynomial over base of x in level(M).
Poly<FiniteField> minpoly(const FieldPtrFq& base, unsigned M, Elem x);

}  // namespace chowmod::fq
