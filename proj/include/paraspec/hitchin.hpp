#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "paraspec/parabolic.hpp"

namespace paraspec {

// h^0 of a line bundle of the given degree on a genus g curve, when the
// degree alone determines it.
struct H0Value {
  std::optional<std::int64_t> value;  // empty when indeterminate
  bool convention = false;            // g = 1, degree 0: trivial bundle assumed
  std::string note;

  bool determinate() const noexcept { return value.has_value() && !convention; }
};

H0Value h0_line_bundle(int g, std::int64_t d, bool canonical);

struct DegreeEntry {
  int j = 0;
  std::int64_t degree = 0;
  H0Value h0;
};

struct DegreeProfile {
  std::vector<DegreeEntry> entries;  // j = 1..r
};

// deg_j = j(2g-2) + sum_x (j - gamma_j(x)).
DegreeProfile coefficient_degrees(const ParabolicData& data);

struct HitchinDims {
  std::int64_t dim_HP = 0;
  std::int64_t dim_HP0 = 0;
  bool used_convention = false;  // some j >= 2 summand relied on the g = 1 convention
};

// Throws InvalidInput naming the first j whose h0 is indeterminate.
HitchinDims hitchin_dims(const ParabolicData& data);

// r(g-1) + 1 + r(r-1)/2 (2g-2+deg D).
std::int64_t spectral_arithmetic_genus(const ParabolicData& data);

struct GenusReport {
  std::int64_t g_tilde = 0;
  std::vector<std::int64_t> delta_x;  // per marked point, (sum n_i^2 - r)/2
  std::int64_t delta_total = 0;
  std::int64_t p_a = 0;
  bool identity_holds = false;        // p_a - delta_total == g_tilde
  std::vector<std::string> warnings;
};

GenusReport normalized_genus_closed_form(const ParabolicData& data);

struct BnrDegree {
  std::int64_t delta = 0;
  bool euler_consistent = false;  // delta + 1 - g_tilde == d + r(1-g)
};

BnrDegree bnr_line_bundle_degree(const ParabolicData& data, std::int64_t d);

enum class IntegrabilityStatus { holds, fails, vacuous, skipped };
const char* to_string(IntegrabilityStatus s);

struct IntegrabilityReport {
  IntegrabilityStatus status = IntegrabilityStatus::skipped;
  std::optional<HitchinDims> dims;
  std::int64_t g_tilde = 0;
  std::int64_t genus = 0;
  std::vector<std::string> notes;
};

IntegrabilityReport integrability_report(const ParabolicData& data);

struct DimensionReport {
  std::optional<std::int64_t> dim_HP;
  std::optional<std::int64_t> dim_HP0;
  std::int64_t p_a = 0;
  std::int64_t g_tilde = 0;
  std::int64_t delta_total = 0;
  std::int64_t prym_dim = 0;
};

DimensionReport dimension_report(const ParabolicData& data);

}  // namespace paraspec
