#include "paraspec/local_resolution.hpp"

#include <set>

namespace paraspec {

int default_precision(int r, const LevelFunction& gamma) {
  const int top = gamma.size() ? gamma.at(gamma.size()) : 1;
  return std::max(8, 4 * r * top);
}

std::vector<int> required_units(const Partition& n, const LevelFunction& gamma) {
  std::set<int> ls;
  for (int i = 1; i <= n.length(); ++i) {
    const auto m = min_level_data(n, gamma, i);
    ls.insert(m.level_set.begin(), m.level_set.end());
  }
  return {ls.begin(), ls.end()};
}

void RamificationProfile::add(int e, int deg, int count) {
  for (auto& en : entries) {
    if (en.e == e && en.deg == deg) {
      en.count += count;
      return;
    }
  }
  entries.push_back({e, deg, count});
  std::sort(entries.begin(), entries.end(), [](const auto& x, const auto& y) {
    return x.e != y.e ? x.e > y.e : x.deg < y.deg;
  });
}

int RamificationProfile::total() const {
  int s = 0;
  for (const auto& en : entries) s += en.e * en.deg * en.count;
  return s;
}

std::vector<int> RamificationProfile::geometric() const {
  std::vector<int> out;
  for (const auto& en : entries)
    for (int k = 0; k < en.deg * en.count; ++k) out.push_back(en.e);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

DivisorGcd rational_divisor_gcd(const std::vector<RamificationProfile>& profiles, int delta_p) {
  DivisorGcd out;
  out.delta_p = delta_p;
  for (const auto& prof : profiles) {
    std::map<int, int> groups;
    for (const auto& en : prof.entries) {
      groups[en.e] += en.deg * en.count;
      out.closed_point_gcd = std::gcd(out.closed_point_gcd, en.deg);
    }
    for (const auto& [e, d] : groups) out.group_gcd = std::gcd(out.group_gcd, d);
  }
  out.divides = out.group_gcd != 0 && delta_p % out.group_gcd == 0;
  return out;
}

template ResolutionResult<RationalField> resolve(const LocalEquation<RationalField>&);
template ResolutionResult<FiniteField> resolve(const LocalEquation<FiniteField>&);
template RamificationProfile newton_polygon_profile(const LocalEquation<RationalField>&);
template RamificationProfile newton_polygon_profile(const LocalEquation<FiniteField>&);

}  // namespace paraspec
