#include "paraspec/hitchin.hpp"

#include "paraspec/errors.hpp"

namespace paraspec {

H0Value h0_line_bundle(int g, std::int64_t d, bool canonical) {
  H0Value h;
  if (d < 0) {
    h.value = 0;
  } else if (canonical) {
    h.value = g;
  } else if (g == 0) {
    h.value = d + 1;
  } else if (g == 1 && d == 0) {
    h.value = 1;
    h.convention = true;
    h.note = "genus 1, degree 0: trivial bundle assumed (a generic degree 0 bundle has no sections)";
  } else if (d > 2 * static_cast<std::int64_t>(g) - 2) {
    h.value = d + 1 - g;
  } else {
    h.note = "special range 0 <= deg <= 2g-2";
  }
  return h;
}

DegreeProfile coefficient_degrees(const ParabolicData& data) {
  DegreeProfile prof;
  const int r = data.rank(), g = data.genus();
  for (int j = 1; j <= r; ++j) {
    std::int64_t deg = static_cast<std::int64_t>(j) * (2 * g - 2);
    for (const auto& x : data.points()) deg += j - x.gamma.at(j);
    // gamma_1 = 1 everywhere, so the j = 1 summand is omega_X itself.
    prof.entries.push_back({j, deg, h0_line_bundle(g, deg, j == 1)});
  }
  return prof;
}

HitchinDims hitchin_dims(const ParabolicData& data) {
  HitchinDims out;
  for (const auto& e : coefficient_degrees(data).entries) {
    if (!e.h0.value) {
      throw InvalidInput("indeterminate h0 for j = " + std::to_string(e.j) + " (degree " +
                         std::to_string(e.degree) + ")");
    }
    out.dim_HP += *e.h0.value;
    out.used_convention = out.used_convention || e.h0.convention;
  }
  out.dim_HP0 = out.dim_HP - data.genus();
  return out;
}

std::int64_t spectral_arithmetic_genus(const ParabolicData& data) {
  const std::int64_t r = data.rank(), g = data.genus();
  return r * (g - 1) + 1 + r * (r - 1) / 2 * data.degree_M();
}

GenusReport normalized_genus_closed_form(const ParabolicData& data) {
  GenusReport rep;
  const std::int64_t r = data.rank(), g = data.genus();
  rep.g_tilde = r * r * (g - 1) + 1;
  for (const auto& x : data.points()) {
    rep.g_tilde += x.flag_dim;
    std::int64_t sq = 0;
    for (int n : x.partition.parts()) sq += static_cast<std::int64_t>(n) * n;
    rep.delta_x.push_back((sq - r) / 2);
    rep.delta_total += rep.delta_x.back();
  }
  rep.p_a = spectral_arithmetic_genus(data);
  rep.identity_holds = rep.p_a - rep.delta_total == rep.g_tilde;
  if (rep.g_tilde < 0) rep.warnings.push_back("no integral spectral curve for this data (negative genus)");
  return rep;
}

BnrDegree bnr_line_bundle_degree(const ParabolicData& data, std::int64_t d) {
  const std::int64_t r = data.rank(), g = data.genus();
  BnrDegree out;
  out.delta = (r * r - r) * (g - 1) + d;
  for (const auto& x : data.points()) out.delta += x.flag_dim;
  const std::int64_t gt = normalized_genus_closed_form(data).g_tilde;
  out.euler_consistent = out.delta + 1 - gt == d + r * (1 - g);
  return out;
}

const char* to_string(IntegrabilityStatus s) {
  switch (s) {
    case IntegrabilityStatus::holds: return "holds";
    case IntegrabilityStatus::fails: return "fails";
    case IntegrabilityStatus::vacuous: return "vacuous";
    case IntegrabilityStatus::skipped: return "skipped";
  }
  return "?";
}

IntegrabilityReport integrability_report(const ParabolicData& data) {
  IntegrabilityReport rep;
  rep.genus = data.genus();
  rep.g_tilde = normalized_genus_closed_form(data).g_tilde;
  const auto prof = coefficient_degrees(data);
  for (const auto& e : prof.entries) {
    if (!e.h0.value) {
      rep.status = IntegrabilityStatus::skipped;
      rep.notes.push_back("h0 indeterminate for j = " + std::to_string(e.j));
      return rep;
    }
  }
  rep.dims = hitchin_dims(data);
  const auto& top = prof.entries.back();
  if (*top.h0.value == 0 || rep.g_tilde < 0) {
    rep.status = IntegrabilityStatus::vacuous;
    rep.notes.push_back("a_r is forced to vanish: no integral spectral curve");
    return rep;
  }
  for (const auto& e : prof.entries) {
    if (e.j >= 2 && e.h0.convention) {
      rep.status = IntegrabilityStatus::skipped;
      rep.notes.push_back("j = " + std::to_string(e.j) + ": " + e.h0.note);
      return rep;
    }
  }
  const bool ok = rep.dims->dim_HP == rep.g_tilde && rep.dims->dim_HP0 == rep.g_tilde - rep.genus;
  rep.status = ok ? IntegrabilityStatus::holds : IntegrabilityStatus::fails;
  return rep;
}

DimensionReport dimension_report(const ParabolicData& data) {
  DimensionReport rep;
  const auto gr = normalized_genus_closed_form(data);
  rep.p_a = gr.p_a;
  rep.g_tilde = gr.g_tilde;
  rep.delta_total = gr.delta_total;
  rep.prym_dim = gr.g_tilde - data.genus();
  try {
    const auto d = hitchin_dims(data);
    rep.dim_HP = d.dim_HP;
    rep.dim_HP0 = d.dim_HP0;
  } catch (const InvalidInput&) {
  }
  return rep;
}

}  // namespace paraspec
