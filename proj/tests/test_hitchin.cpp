#include "doctest.h"

#include <paraspec/errors.hpp>
#include <paraspec/hitchin.hpp>

#include <random>

using namespace paraspec;

namespace {

ParabolicData make(int r, int g, const std::vector<std::vector<int>>& parts) {
  std::vector<MarkedPoint> pts;
  for (std::size_t i = 0; i < parts.size(); ++i) pts.push_back(make_marked_point(std::to_string(i), parts[i], r));
  return ParabolicData(r, g, pts);
}

std::vector<int> random_partition(int r, std::mt19937_64& rng) {
  auto all = partitions_of(r);
  return all[rng() % all.size()].parts();
}

}  // namespace

TEST_CASE("degree profiles") {
  auto a = coefficient_degrees(make(3, 0, {{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}));
  CHECK(a.entries[0].degree == -2);
  CHECK(a.entries[1].degree == -1);
  CHECK(a.entries[2].degree == 0);
  CHECK(*a.entries[2].h0.value == 1);
  auto b = coefficient_degrees(make(3, 0, {{2, 1}, {2, 1}, {2, 1}}));
  CHECK(b.entries[2].degree == -3);
  auto c = coefficient_degrees(make(2, 2, {{1, 1}}));
  CHECK(c.entries[0].degree == 2);
  CHECK(c.entries[1].degree == 5);
  CHECK(*c.entries[0].h0.value == 2);
  CHECK(*c.entries[1].h0.value == 4);
}

TEST_CASE("h0 rules") {
  CHECK(*h0_line_bundle(0, 0, false).value == 1);
  CHECK(*h0_line_bundle(2, 5, false).value == 4);
  CHECK(*h0_line_bundle(2, 2, true).value == 2);
  CHECK(*h0_line_bundle(3, -1, false).value == 0);
  CHECK_FALSE(h0_line_bundle(2, 1, false).value.has_value());
  auto h = h0_line_bundle(1, 0, false);
  CHECK(*h.value == 1);
  CHECK(h.convention);
  CHECK_FALSE(h.determinate());
}

TEST_CASE("dimensions, genera and BNR degree") {
  auto d1 = make(3, 0, {{1, 1, 1}, {1, 1, 1}, {1, 1, 1}});
  CHECK(hitchin_dims(d1).dim_HP == 1);
  CHECK(hitchin_dims(d1).dim_HP0 == 1);
  CHECK(spectral_arithmetic_genus(d1) == 1);
  CHECK(normalized_genus_closed_form(d1).g_tilde == 1);
  CHECK(bnr_line_bundle_degree(d1, 0).delta == 3);
  CHECK(integrability_report(d1).status == IntegrabilityStatus::holds);

  auto d2 = make(2, 0, {{1, 1}, {1, 1}, {1, 1}, {1, 1}});
  CHECK(hitchin_dims(d2).dim_HP == 1);
  CHECK(spectral_arithmetic_genus(d2) == 1);
  CHECK(normalized_genus_closed_form(d2).g_tilde == 1);
  CHECK(bnr_line_bundle_degree(d2, 0).delta == 2);

  auto d3 = make(2, 2, {{1, 1}});
  CHECK(hitchin_dims(d3).dim_HP == 6);
  CHECK(hitchin_dims(d3).dim_HP0 == 4);
  CHECK(integrability_report(d3).status == IntegrabilityStatus::holds);

  CHECK(spectral_arithmetic_genus(make(2, 1, {{1, 1}})) == 2);
  CHECK(normalized_genus_closed_form(make(3, 1, {{2, 1}})).delta_x == std::vector<std::int64_t>{1});
  CHECK(integrability_report(make(3, 0, {{2, 1}, {2, 1}, {2, 1}})).status == IntegrabilityStatus::vacuous);

  auto trivial_flag = make(2, 2, {{2}});
  CHECK(hitchin_dims(trivial_flag).dim_HP == 5);
  CHECK(integrability_report(trivial_flag).status == IntegrabilityStatus::holds);
  CHECK(integrability_report(make(2, 1, {{2}})).status == IntegrabilityStatus::skipped);
}

TEST_CASE("genus and degree identities on random data") {
  std::mt19937_64 rng(2024);
  int checked_dims = 0;
  for (int t = 0; t < 400; ++t) {
    const int r = 2 + static_cast<int>(rng() % 5);
    const int g = static_cast<int>(rng() % 4);
    const int npts = 1 + static_cast<int>(rng() % 6);
    if (2 * g - 2 + npts <= 0) continue;
    std::vector<std::vector<int>> parts;
    for (int i = 0; i < npts; ++i) parts.push_back(random_partition(r, rng));
    auto data = make(r, g, parts);
    auto gr = normalized_genus_closed_form(data);
    CHECK(gr.identity_holds);
    for (std::int64_t d = -3; d <= 3; ++d) {
      auto b = bnr_line_bundle_degree(data, d);
      CHECK(b.euler_consistent);
      CHECK(bnr_line_bundle_degree(data, d + 1).delta == b.delta + 1);
    }
    auto prof = coefficient_degrees(data);
    bool determinate = true;
    for (auto& e : prof.entries) determinate = determinate && e.h0.determinate() ;
    if (determinate && *prof.entries.back().h0.value >= 1) {
      CAPTURE(r);
      CAPTURE(g);
      auto dims = hitchin_dims(data);
      CHECK(dims.dim_HP == gr.g_tilde);
      CHECK(dims.dim_HP0 == gr.g_tilde - g);
      ++checked_dims;
    }
  }
  CHECK(checked_dims > 50);
}
