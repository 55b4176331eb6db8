#include "paraspec/parabolic.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "paraspec/errors.hpp"

namespace paraspec {

Partition Partition::from_parts(std::vector<int> parts) {
  if (parts.empty()) throw InvalidInput("partition must have at least one part");
  for (int v : parts) {
    if (v < 1) throw InvalidInput("partition parts must be positive, got " + std::to_string(v));
  }
  Partition p;
  p.original_ = parts;
  std::sort(parts.begin(), parts.end(), std::greater<>());
  p.parts_ = std::move(parts);
  p.total_ = std::accumulate(p.parts_.begin(), p.parts_.end(), 0);
  return p;
}

bool Partition::is_full_flag() const noexcept {
  return std::all_of(parts_.begin(), parts_.end(), [](int v) { return v == 1; });
}

std::string to_string(const Partition& p) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < p.parts().size(); ++i) os << (i ? "," : "") << p.parts()[i];
  os << ")";
  return os.str();
}

std::vector<Partition> partitions_of(int r) {
  std::vector<Partition> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      out.push_back(Partition::from_parts(cur));
      return;
    }
    for (int v = std::min(remaining, max_part); v >= 1; --v) {
      cur.push_back(v);
      rec(remaining - v, v);
      cur.pop_back();
    }
  };
  if (r >= 1) rec(r, r);
  return out;
}

Partition dual_partition(const Partition& p) {
  std::vector<int> mu;
  for (int j = 1; j <= p.part(1); ++j) {
    int count = 0;
    for (int v : p.parts()) count += v >= j ? 1 : 0;
    mu.push_back(count);
  }
  return Partition::from_parts(std::move(mu));
}

LevelFunction level_function(const Partition& mu, int r) {
  if (mu.total() != r) {
    throw InvalidInput("level function: partition " + to_string(mu) + " does not total r = " + std::to_string(r));
  }
  LevelFunction lf;
  lf.gamma.reserve(static_cast<std::size_t>(r));
  for (int l = 1; l <= mu.length(); ++l) {
    for (int k = 0; k < mu.part(l); ++k) lf.gamma.push_back(l);
  }
  return lf;
}

std::vector<int> level_block_ends(const Partition& mu) {
  std::vector<int> ends;
  int acc = 0;
  for (int v : mu.parts()) ends.push_back(acc += v);
  return ends;
}

std::map<int, int> ramification_multiplicity_counts(const Partition& mu) {
  std::map<int, int> counts;
  for (int v : mu.parts()) ++counts[v];
  return counts;
}

MinLevelData min_level_data(const Partition& n, const LevelFunction& gamma, int i) {
  const int sigma = n.length();
  if (i < 1 || i > sigma) {
    throw RangeError("stage index " + std::to_string(i) + " outside 1.." + std::to_string(sigma));
  }
  const int r = gamma.size();
  if (r != n.total()) throw InvalidInput("level function length does not match the partition total");

  int tail = 0;  // N_{i-1}
  for (int j = i; j <= sigma; ++j) tail += n.part(j);

  MinLevelData out;
  out.values.resize(static_cast<std::size_t>(r));
  out.min_value = std::numeric_limits<int>::max();
  for (int l = 1; l <= r; ++l) {
    const int v = i * gamma.at(l) + tail - l;
    out.values[l - 1] = v;
    out.min_value = std::min(out.min_value, v);
  }
  for (int l = 1; l <= r; ++l) {
    if (out.values[l - 1] == out.min_value) out.level_set.push_back(l);
  }
  out.min_equals_part = out.min_value == n.part(i);
  out.part_a_holds = std::any_of(out.level_set.begin(), out.level_set.end(),
                                 [&](int l) { return (i - 1) * gamma.at(l) + tail - l == 0; });

  const auto counts = ramification_multiplicity_counts(dual_partition(n));
  auto it = counts.find(i);
  out.multiplicity = it == counts.end() ? 0 : it->second;

  int lo = std::numeric_limits<int>::max(), hi = std::numeric_limits<int>::min();
  for (int l : out.level_set) {
    lo = std::min(lo, gamma.at(l));
    hi = std::max(hi, gamma.at(l));
  }
  out.literal_spread = hi - lo;
  out.amended_spread = i == sigma ? hi - std::min(lo, 0) : hi - lo;
  return out;
}

std::vector<int> filtration_dims(const Partition& mu) {
  const auto counts = ramification_multiplicity_counts(mu);
  const int sigma = mu.part(1);
  std::vector<int> dims(static_cast<std::size_t>(sigma), 0);
  for (int i = 1; i <= sigma; ++i) {
    for (const auto& [k, c] : counts) {
      if (k >= i) dims[i - 1] += c;
    }
  }
  return dims;
}

int flag_dim(const Partition& p, int r) {
  int sq = 0;
  for (int v : p.parts()) sq += v * v;
  return (r * r - sq) / 2;
}

MarkedPoint make_marked_point(std::string position, std::vector<int> parts, int rank,
                              std::vector<Rational> weights) {
  MarkedPoint x;
  x.position = std::move(position);
  x.partition = Partition::from_parts(std::move(parts));
  if (x.partition.total() != rank) {
    throw InvalidInput("partition " + to_string(x.partition) + " at point '" + x.position +
                       "' does not sum to r = " + std::to_string(rank));
  }
  x.mu = dual_partition(x.partition);
  x.gamma = level_function(x.mu, rank);
  x.flag_dim = flag_dim(x.partition, rank);
  x.weights = std::move(weights);
  return x;
}

std::vector<std::string> ParabolicData::validate(int rank, int genus, const std::vector<MarkedPoint>& points) {
  std::vector<std::string> errors;
  if (rank < 2) errors.push_back("rank must be at least 2");
  if (genus < 0) errors.push_back("genus must be non-negative");
  if (points.empty()) errors.push_back("at least one marked point is required");
  std::set<std::string> seen;
  for (const auto& x : points) {
    if (!seen.insert(x.position).second) errors.push_back("duplicate marked point position '" + x.position + "'");
    if (x.partition.total() != rank) {
      errors.push_back("partition at point '" + x.position + "' does not sum to r = " + std::to_string(rank));
    }
    for (const auto& w : x.weights) {
      if (w < 0 || w >= 1) errors.push_back("weight at point '" + x.position + "' outside [0,1)");
    }
  }
  if (genus >= 0 && 2 * genus - 2 + static_cast<int>(points.size()) <= 0) {
    errors.push_back("2g-2+deg D must be positive");
  }
  return errors;
}

ParabolicData::ParabolicData(int rank, int genus, std::vector<MarkedPoint> points)
    : rank_(rank), genus_(genus), points_(std::move(points)) {
  auto errors = validate(rank_, genus_, points_);
  if (!errors.empty()) {
    std::string msg;
    for (const auto& e : errors) msg += (msg.empty() ? "" : "; ") + e;
    throw InvalidInput(msg);
  }
}

int delta_P(const ParabolicData& data) {
  int g = 0;
  for (const auto& x : data.points()) {
    for (const auto& [i, c] : ramification_multiplicity_counts(x.mu)) {
      if (c != 0) g = std::gcd(g, c);
    }
  }
  return g;
}

std::optional<int> gerbe_compatible(std::int64_t d, std::int64_t e, int delta_p) {
  if (delta_p < 1) throw InvalidInput("delta_P must be positive");
  const std::int64_t m = delta_p;
  for (int lambda = 1; lambda <= delta_p; ++lambda) {
    std::int64_t diff = (lambda * (d % m) - e % m) % m;
    if (diff == 0) return lambda;
  }
  return std::nullopt;
}

}  // namespace paraspec
