#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "paraspec/parabolic.hpp"
#include "paraspec/rational.hpp"
#include "paraspec/stringy.hpp"

namespace paraspec {

using Json = nlohmann::json;  // std::map backed, so keys serialize sorted

inline constexpr const char* kVersion = "0.1.0";

struct PointSpec {
  std::string position;
  std::vector<int> partition;
  std::vector<Rational> weights;
};

// A single local equation for `resolve`: lambda^r + sum c_l t^{gamma_l} lambda^{r-l}.
struct LocalSpec {
  std::vector<int> mu;
  std::vector<std::string> coefficients;  // constants c_l(0), l = 1..r
};

struct RunConfig {
  int rank = 0;
  int genus = 0;
  std::vector<PointSpec> points;
  std::optional<std::uint64_t> q;  // empty: rationals only
  std::optional<int> precision;
  std::uint64_t seed = 0;
  std::optional<std::int64_t> d;
  std::optional<std::int64_t> e;
  int zeta_depth = 0;  // 0: one count beyond the genus
  std::optional<LocalSpec> local;

  ParabolicData data() const;
  Json to_json() const;
};

// Throws InvalidInput carrying every validation error, each with its field path.
RunConfig parse_config(const std::string& text);
OrbifoldDescription parse_sectors(const std::string& text);

struct RunOptions {
  std::optional<std::string> inject_fault;  // "delta": corrupt the closed-form delta
  std::vector<Integer> stringy_q{2, 3, 4, 5};
};

Json run_analyze(const RunConfig& cfg);
Json run_resolve(const RunConfig& cfg);
Json run_count(const RunConfig& cfg);
Json run_stringy(const OrbifoldDescription& desc, const RunOptions& opt = {});

struct VerifyResult {
  Json report;
  bool all_hold = true;         // no ledger entry fails
  bool exhausted = false;       // some check was skipped for lack of resources
  int exit_code() const noexcept { return !all_hold ? 1 : (exhausted ? 3 : 0); }
};

VerifyResult run_verify(const RunConfig& cfg, const RunOptions& opt = {});

}  // namespace paraspec
