#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "paraspec/finite_field.hpp"
#include "paraspec/kernels.hpp"
#include "paraspec/local_resolution.hpp"
#include "paraspec/parabolic.hpp"
#include "paraspec/poly_factor.hpp"

namespace paraspec {

// GF(q) for spectral counting: the characteristic must exceed the rank.
FiniteField make_counting_field(std::uint64_t q, int rank);

// "inf" or an integer 0..q-1 naming a field element by its packed encoding.
std::optional<FiniteField::Elem> parse_position(const FiniteField& F, const std::string& label);

// A marked point on the projective line over GF(q); nullopt position is infinity.
struct MarkedSite {
  std::string label;
  std::optional<FiniteField::Elem> position;
  Partition partition;
  Partition mu;
  LevelFunction gamma;
};

struct SamplingStats {
  std::uint64_t draws = 0;
  std::uint64_t rejected_zero_top = 0;       // alpha_r = 0
  std::uint64_t rejected_discriminant = 0;   // repeated zero away from D, or at an unmarked infinity
  std::uint64_t rejected_local = 0;          // some marked point resolves non-generically
  std::uint64_t rejected_reducible = 0;      // not integral over GF(q)(t)
  std::uint64_t rejected_geometric = 0;      // integral but splits over an extension of constants
};

// lambda^r + sum_j alpha_j(t) lambda^{r-j} on the affine chart of P^1; the
// chart at infinity uses t' = 1/t and lambda' = t'^{degM} lambda.
struct GlobalCharacteristic {
  FiniteField field;
  int r = 0;
  int degM = 0;
  std::vector<MarkedSite> sites;
  std::vector<FqPoly> alpha;  // alpha[j-1], deg alpha_j <= j * degM
  std::uint64_t seed = 0;
  SamplingStats stats;
  std::vector<ResolutionResult<FiniteField>> local;  // one per site, filled by analyze_marked_points
};

// Validates degrees and vanishing orders at the marked points.
GlobalCharacteristic characteristic_from_coefficients(const FiniteField& F, int r, int degM,
                                                      std::vector<MarkedSite> sites, std::vector<FqPoly> alpha);

std::vector<MarkedSite> marked_sites(const ParabolicData& data, const FiniteField& F);

// Disc_lambda of the characteristic polynomial, in GF(q)[t].
FqPoly discriminant(const FiniteField& F, const std::vector<FqPoly>& alpha);

// Determinant over GF(q)[t] by fraction-free elimination.
FqPoly bareiss_determinant(const FiniteField& F, std::vector<std::vector<FqPoly>> M);

// Irreducible over GF(q)(t).
bool is_integral(const GlobalCharacteristic& ch);
// Irreducible over GF(q^r)(t), hence over the algebraic closure of the constants.
bool is_geometrically_integral(const GlobalCharacteristic& ch);
// Irreducible over GF(q^k)(t).
bool irreducible_over_extension(const FiniteField& F, const std::vector<FqPoly>& alpha, unsigned k);

// c_l(s) = alpha_l(x + s) / s^{gamma_l(x)} (or the infinity chart).
LocalEquation<FiniteField> local_equation_at(const GlobalCharacteristic& ch, std::size_t site);
void analyze_marked_points(GlobalCharacteristic& ch);

// Draws alpha_j = prod_x (t - x)^{gamma_j(x)} beta_j with beta_j uniform of
// degree <= deg_j, coefficients taken as rng() % q in order j = 1..r, low
// degree first, from std::mt19937_64(seed). Throws SamplingExhausted.
GlobalCharacteristic sample_characteristic(const ParabolicData& data, const FiniteField& F, std::uint64_t seed,
                                           std::uint64_t max_draws = 2000);

enum class CountMethod { automatic, gcd, scan };

// Points of the normalization over GF(q^m) in one fiber.
class FiberCounter {
 public:
  FiberCounter(const GlobalCharacteristic& ch, unsigned m);

  const FiniteField& big_field() const noexcept { return K_; }
  // t0 in GF(q^m); marked t0 are answered from resolution data.
  int count_at(FiniteField::Elem t0) const;
  int count_at_infinity() const;
  int count_marked(std::size_t site) const;
  std::uint64_t count_curve(CountMethod method = CountMethod::automatic,
                            kernels::Isa isa = kernels::active_isa()) const;

 private:
  int distinct_roots(const FqPoly& f) const;
  std::uint64_t scan_prime_field(kernels::Isa isa) const;

  const GlobalCharacteristic& ch_;
  unsigned m_;
  FiniteField K_;
  std::vector<FqPoly> alpha_;  // embedded into K
  std::vector<std::optional<FiniteField::Elem>> marked_;  // embedded positions
};

std::uint64_t count_curve(const GlobalCharacteristic& ch, unsigned m, CountMethod method = CountMethod::automatic);

}  // namespace paraspec
