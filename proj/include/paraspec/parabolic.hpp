#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "paraspec/rational.hpp"

namespace paraspec {

// A partition stored in non-increasing order. The order in which the parts
// were supplied is kept as metadata only; every formula uses the sorted parts.
class Partition {
 public:
  Partition() = default;

  // Throws InvalidInput on an empty list or a part < 1.
  static Partition from_parts(std::vector<int> parts);

  const std::vector<int>& parts() const noexcept { return parts_; }
  const std::vector<int>& original_order() const noexcept { return original_; }
  int total() const noexcept { return total_; }
  int length() const noexcept { return static_cast<int>(parts_.size()); }
  // 1-based access; zero past the last part.
  int part(int i) const noexcept { return (i >= 1 && i <= length()) ? parts_[i - 1] : 0; }
  bool is_full_flag() const noexcept;  // all parts equal to one

  bool operator==(const Partition& other) const noexcept { return parts_ == other.parts_; }

 private:
  std::vector<int> parts_;
  std::vector<int> original_;
  int total_ = 0;
};

std::string to_string(const Partition& p);

// All partitions of r, parts non-increasing, in reverse lexicographic order.
std::vector<Partition> partitions_of(int r);

// The staircase j -> gamma_j of a dual partition (1-based values).
struct LevelFunction {
  std::vector<int> gamma;

  int size() const noexcept { return static_cast<int>(gamma.size()); }
  int at(int j) const { return gamma.at(static_cast<std::size_t>(j - 1)); }
  bool operator==(const LevelFunction&) const = default;
};

// mu_j = #{l : n_l >= j}.
Partition dual_partition(const Partition& p);

// gamma_j = l iff mu_1 + ... + mu_{l-1} < j <= mu_1 + ... + mu_l.
LevelFunction level_function(const Partition& mu, int r);

// Prefix sums mu_1, mu_1 + mu_2, ...: the indices where gamma steps up next.
std::vector<int> level_block_ends(const Partition& mu);

struct MinLevelData {
  int min_value = 0;
  std::vector<int> level_set;   // L_i, ascending
  std::vector<int> values;      // i*gamma_l + N_{i-1} - l for l = 1..r
  bool min_equals_part = false; // min_value == n_i
  bool part_a_holds = false;    // some l in L_i has (i-1)gamma_l + N_{i-1} - l = 0
  int multiplicity = 0;         // #{l : mu_l = i}
  int literal_spread = 0;       // max - min of gamma over L_i
  int amended_spread = 0;       // same with exponent 0 adjoined when i = sigma
  bool literal_b_holds() const noexcept { return literal_spread == multiplicity; }
  bool amended_b_holds() const noexcept { return amended_spread == multiplicity; }
};

// Direct enumeration of min_l (i*gamma_l + N_{i-1} - l) with N_{i-1} = n_i + ... + n_sigma.
// Throws RangeError unless 1 <= i <= sigma.
MinLevelData min_level_data(const Partition& n, const LevelFunction& gamma, int i);

// i -> #{l : mu_l = i}, only nonzero counts.
std::map<int, int> ramification_multiplicity_counts(const Partition& mu);

// (m_1, ..., m_sigma) with m_i = sum_{k >= i} #{l : mu_l = k}.
std::vector<int> filtration_dims(const Partition& mu);

// (r^2 - sum n_i^2) / 2.
int flag_dim(const Partition& p, int r);

struct MarkedPoint {
  std::string position;          // "inf" for the point at infinity
  Partition partition;           // sorted n
  Partition mu;                  // dual of partition
  LevelFunction gamma;
  int flag_dim = 0;
  std::vector<Rational> weights; // metadata only

  int sigma() const noexcept { return partition.length(); }
};

MarkedPoint make_marked_point(std::string position, std::vector<int> parts, int rank,
                              std::vector<Rational> weights = {});

class ParabolicData {
 public:
  // Throws InvalidInput listing every violated invariant.
  ParabolicData(int rank, int genus, std::vector<MarkedPoint> points);

  // Every violated invariant, empty when the data is valid.
  static std::vector<std::string> validate(int rank, int genus, const std::vector<MarkedPoint>& points);

  int rank() const noexcept { return rank_; }
  int genus() const noexcept { return genus_; }
  const std::vector<MarkedPoint>& points() const noexcept { return points_; }
  int degree_D() const noexcept { return static_cast<int>(points_.size()); }
  // deg omega_X(D) = 2g - 2 + deg D.
  int degree_M() const noexcept { return 2 * genus_ - 2 + degree_D(); }

 private:
  int rank_;
  int genus_;
  std::vector<MarkedPoint> points_;
};

// gcd of the nonzero counts #{l : mu_l(x) = i} over all points and indices.
int delta_P(const ParabolicData& data);

// Least lambda in 1..delta_p with e = lambda * d (mod delta_p), if any.
std::optional<int> gerbe_compatible(std::int64_t d, std::int64_t e, int delta_p);

}  // namespace paraspec
