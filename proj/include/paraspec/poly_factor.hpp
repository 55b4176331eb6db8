#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "paraspec/finite_field.hpp"
#include "paraspec/poly.hpp"
#include "paraspec/rational.hpp"

namespace paraspec {

using FqPoly = Poly<FiniteField>;
using FqPolyRing = PolyRing<FiniteField>;
using QPoly = Poly<RationalField>;
using QPolyRing = PolyRing<RationalField>;

// An irreducible factor together with its multiplicity.
template <class Field>
struct Factor {
  Poly<Field> poly;
  int multiplicity = 1;
};

// ---- finite fields ----------------------------------------------------------

bool is_squarefree(const FqPolyRing& R, const FqPoly& f);

// Product of the distinct monic irreducible factors of f.
FqPoly radical(const FqPolyRing& R, const FqPoly& f);

// Distinct-degree factorization of a monic squarefree f: pairs (d, g_d) where
// g_d is the product of all irreducible factors of degree d.
std::vector<std::pair<int, FqPoly>> distinct_degree_factorization(const FqPolyRing& R, FqPoly f);

// Splits a monic squarefree product of degree-d irreducibles.
std::vector<FqPoly> equal_degree_factorization(const FqPolyRing& R, const FqPoly& f, int d,
                                               std::mt19937_64& rng);

// Monic irreducible factors with multiplicities; deterministic for a fixed seed.
std::vector<Factor<FiniteField>> factor(const FqPolyRing& R, const FqPoly& f, std::uint64_t seed = 0x5eed);

// Degrees of the distinct monic irreducible factors (sorted ascending).
std::vector<int> irreducible_factor_degrees(const FqPolyRing& R, const FqPoly& f);

// Number of distinct roots of f in the coefficient field.
int count_distinct_roots(const FqPolyRing& R, const FqPoly& f);

// ---- rationals --------------------------------------------------------------

using ZPoly = std::vector<Integer>;  // ascending, no trailing zeros

// Irreducible factorization over Z of a squarefree primitive polynomial
// (Zassenhaus: modular factorization, Hensel lifting, subset recombination).
std::vector<ZPoly> factor_squarefree_integer(const ZPoly& f);

// Clears denominators and content; result has positive leading coefficient.
ZPoly primitive_integer_part(const QPoly& f);

// Monic irreducible factors over Q with multiplicities.
std::vector<Factor<RationalField>> factor(const QPolyRing& R, const QPoly& f, std::uint64_t seed = 0x5eed);

std::vector<int> irreducible_factor_degrees(const QPolyRing& R, const QPoly& f);

bool is_squarefree(const QPolyRing& R, const QPoly& f);

}  // namespace paraspec
