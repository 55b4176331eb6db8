#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "paraspec/rational.hpp"

namespace paraspec {

// L(T) = 1 + b_1 T + ... + b_{2g} T^{2g}, ascending coefficients.
struct LPolynomial {
  std::vector<Integer> b;

  int genus() const noexcept { return (static_cast<int>(b.size()) - 1) / 2; }
  Integer at_one() const;
  std::string to_string(const std::string& var = "T") const;
};

// Fits L from N_1..N_K (K >= g) via Newton identities and the functional
// equation b_{2g-i} = q^{g-i} b_i; counts beyond N_g must be reproduced.
// Throws ComputationFailed ("zeta fit failed") on any inconsistency.
LPolynomial zeta_fit(const std::vector<Integer>& counts, std::uint64_t q, int g);

// Point counts N_1..N_K predicted by L.
std::vector<Integer> predicted_counts(const LPolynomial& L, std::uint64_t q, int K);

// Smallest g' whose fit from N_1..N_g' reproduces every supplied count; only
// meaningful when counts.size() > g'.
std::optional<int> infer_genus(const std::vector<Integer>& counts, std::uint64_t q, int max_genus);

struct ClassNumbers {
  Integer h_jac;
  Integer h_prym;
};

// h_jac = L(1); h_prym = L(1) / base_L(1). Throws ComputationFailed if not integral.
ClassNumbers class_numbers(const LPolynomial& L, const LPolynomial& base_L);

// (N_m - q^m - 1)^2 <= 4 g^2 q^m for every m.
bool weil_check(const std::vector<Integer>& counts, int g, std::uint64_t q);

bool functional_equation_holds(const LPolynomial& L, std::uint64_t q);

}  // namespace paraspec
