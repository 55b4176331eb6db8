#include <algorithm>
#include <random>

#include "paraspec/cli.hpp"
#include "paraspec/errors.hpp"
#include "paraspec/hitchin.hpp"
#include "paraspec/local_resolution.hpp"
#include "paraspec/spectral_count.hpp"
#include "paraspec/zeta.hpp"

namespace paraspec {

namespace {

constexpr int kGenericDraws = 64;

Json json_int(const Integer& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

Json json_ints(const std::vector<Integer>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(json_int(x));
  return out;
}

Json profile_json(const RamificationProfile& p) {
  Json entries = Json::array();
  Json by_index = Json::object();
  for (const auto& en : p.entries) {
    entries.push_back({{"e", en.e}, {"deg", en.deg}, {"count", en.count}});
    by_index[std::to_string(en.e)] = by_index.value(std::to_string(en.e), 0) + en.deg * en.count;
  }
  return {{"entries", entries}, {"geometric", p.geometric()}, {"by_index", by_index}, {"total", p.total()}};
}

template <class Field>
Json stage_json(const Field& F, const BlowupStage<Field>& st) {
  PolyRing<Field> R(F);
  Json roots = Json::array();
  for (const auto& rf : st.roots) roots.push_back({{"factor", R.to_string(rf.poly, "u")}, {"multiplicity", rf.multiplicity}});
  return {{"index", st.index},
          {"exceptional_multiplicity", st.exceptional_multiplicity},
          {"expected_multiplicity", st.expected_multiplicity},
          {"R", R.to_string(st.R, "u")},
          {"roots", roots},
          {"distinct_nonzero_roots", st.distinct_nonzero_roots},
          {"chart1_empty", st.chart1_empty},
          {"jacobian_ok", st.jacobian_ok},
          {"origin_on_curve", st.origin_on_curve},
          {"origin_smooth", st.origin_smooth}};
}

template <class Field>
Json resolution_json(const LocalEquation<Field>& eq, const ResolutionResult<Field>& res,
                     const RamificationProfile& newton) {
  const Field& F = eq.field;
  Json stages = Json::array();
  for (std::size_t i = 1; i < res.stages.size(); ++i) stages.push_back(stage_json(F, res.stages[i]));
  Json coeffs = Json::array();
  for (const auto& s : eq.c) coeffs.push_back(F.to_string(s.at(0)));
  return {{"field", F.name()},
          {"mu", eq.mu.parts()},
          {"n", eq.n.parts()},
          {"gamma", eq.gamma.gamma},
          {"precision", eq.precision},
          {"constant_terms", coeffs},
          {"stages", stages},
          {"profile", profile_json(res.profile)},
          {"newton_profile", profile_json(newton)},
          {"delta", res.ledger.delta},
          {"multiplicities", res.ledger.multiplicities},
          {"generic", res.generic},
          {"jacobian_ok", res.jacobian_ok},
          {"notes", res.notes}};
}

// Random local equation of type mu with unit constant terms everywhere.
template <class Field, class Draw, class DrawNonzero>
LocalEquation<Field> random_local(const Field& F, const Partition& mu, std::optional<int> precision, Draw draw,
                                  DrawNonzero draw_nonzero) {
  const int r = mu.total();
  const int N = precision.value_or(default_precision(r, level_function(mu, r)));
  std::vector<TruncatedSeries<Field>> cs;
  for (int l = 1; l <= r; ++l) {
    std::vector<typename Field::Elem> v;
    v.push_back(draw_nonzero());
    for (int k = 1; k < N; ++k) v.push_back(draw());
    cs.emplace_back(F, std::move(v), N);
  }
  return local_equation_from_type(F, mu, std::move(cs), precision);
}

template <class Field>
struct LocalDraw {
  std::optional<LocalEquation<Field>> eq;
  std::optional<ResolutionResult<Field>> res;
  int draws = 0;
};

template <class Field, class Draw, class DrawNonzero>
LocalDraw<Field> generic_local(const Field& F, const Partition& mu, std::optional<int> precision, Draw draw,
                               DrawNonzero draw_nonzero) {
  LocalDraw<Field> out;
  for (out.draws = 1; out.draws <= kGenericDraws; ++out.draws) {
    auto eq = random_local(F, mu, precision, draw, draw_nonzero);
    auto res = resolve(eq);
    if (res.generic) {
      out.eq = std::move(eq);
      out.res = std::move(res);
      return out;
    }
  }
  out.draws = kGenericDraws;
  return out;
}

LocalDraw<RationalField> generic_local_rational(const Partition& mu, std::optional<int> precision,
                                                std::mt19937_64& rng) {
  static const RationalField Q;
  auto draw = [&] { return Rational(static_cast<long>(rng() % 19) - 9); };
  auto draw_nonzero = [&] {
    const long v = 1 + static_cast<long>(rng() % 9);
    return Rational(rng() % 2 ? v : -v);
  };
  return generic_local(Q, mu, precision, draw, draw_nonzero);
}

LocalDraw<FiniteField> generic_local_finite(const FiniteField& F, const Partition& mu, std::optional<int> precision,
                                            std::mt19937_64& rng) {
  auto draw = [&] { return F.random(rng); };
  auto draw_nonzero = [&] { return F.random_nonzero(rng); };
  return generic_local(F, mu, precision, draw, draw_nonzero);
}

Json parabolic_json(const ParabolicData& data) {
  Json pts = Json::array();
  const auto gr = normalized_genus_closed_form(data);
  for (std::size_t i = 0; i < data.points().size(); ++i) {
    const auto& x = data.points()[i];
    Json counts = Json::object();
    for (const auto& [k, c] : ramification_multiplicity_counts(x.mu)) counts[std::to_string(k)] = c;
    Json w = Json::array();
    for (const auto& v : x.weights) w.push_back(to_string(v));
    pts.push_back({{"position", x.position},
                   {"partition", x.partition.parts()},
                   {"mu", x.mu.parts()},
                   {"gamma", x.gamma.gamma},
                   {"flag_dim", x.flag_dim},
                   {"filtration_dims", filtration_dims(x.mu)},
                   {"multiplicity_counts", counts},
                   {"delta", gr.delta_x[i]},
                   {"full_flag", x.partition.is_full_flag()},
                   {"weights", w}});
  }
  return {{"rank", data.rank()},
          {"genus", data.genus()},
          {"degree_D", data.degree_D()},
          {"degree_M", data.degree_M()},
          {"delta_P", delta_P(data)},
          {"points", pts}};
}

Json hitchin_json(const ParabolicData& data) {
  Json degrees = Json::array();
  for (const auto& e : coefficient_degrees(data).entries) {
    Json d{{"j", e.j}, {"degree", e.degree}, {"convention", e.h0.convention}};
    d["h0"] = e.h0.value ? Json(*e.h0.value) : Json(nullptr);
    if (!e.h0.note.empty()) d["note"] = e.h0.note;
    degrees.push_back(d);
  }
  const auto dr = dimension_report(data);
  const auto gr = normalized_genus_closed_form(data);
  const auto ir = integrability_report(data);
  Json out{{"coefficient_degrees", degrees},
           {"p_a", dr.p_a},
           {"g_tilde", dr.g_tilde},
           {"delta_total", dr.delta_total},
           {"prym_dim", dr.prym_dim},
           {"genus_identity_holds", gr.identity_holds},
           {"warnings", gr.warnings},
           {"integrability", {{"status", to_string(ir.status)}, {"notes", ir.notes}}}};
  out["dim_HP"] = dr.dim_HP ? Json(*dr.dim_HP) : Json(nullptr);
  out["dim_HP0"] = dr.dim_HP0 ? Json(*dr.dim_HP0) : Json(nullptr);
  return out;
}

struct CountRun {
  GlobalCharacteristic ch;
  int g = 0;
  std::vector<Integer> counts;
  LPolynomial L;
  ClassNumbers h;
  std::optional<int> inferred;
};

CountRun count_pipeline(const RunConfig& cfg, const ParabolicData& data) {
  if (!cfg.q) throw InvalidInput("count requires a field block with q");
  if (data.genus() != 0) throw InvalidInput("point counting is implemented for genus 0 base curves");
  const auto gr = normalized_genus_closed_form(data);
  if (gr.g_tilde < 0) throw InvalidInput("no integral spectral curve: the normalized genus is negative");
  const FiniteField F = make_counting_field(*cfg.q, data.rank());
  const int depth = std::max(static_cast<int>(gr.g_tilde) + 1, cfg.zeta_depth);
  std::uint64_t top = 1;
  for (int m = 0; m < depth; ++m) {
    top *= *cfg.q;
    if (depth > 1 && top > FiniteField::kMaxTableOrder) {
      throw ResourceExhausted("counting over GF(" + std::to_string(*cfg.q) + "^" + std::to_string(depth) +
                              ") exceeds the table-driven field size limit");
    }
  }
  CountRun run{sample_characteristic(data, F, cfg.seed), 0, {}, {}, {}, std::nullopt};
  run.g = static_cast<int>(gr.g_tilde);
  for (int m = 1; m <= depth; ++m) run.counts.emplace_back(static_cast<unsigned long>(count_curve(run.ch, m)));
  run.L = zeta_fit(run.counts, *cfg.q, run.g);
  run.h = class_numbers(run.L, LPolynomial{{Integer(1)}});
  run.inferred = infer_genus(run.counts, *cfg.q, run.g);
  return run;
}

Json count_json(const CountRun& run, std::uint64_t q) {
  FqPolyRing R(run.ch.field);
  Json alpha = Json::array();
  for (const auto& a : run.ch.alpha) alpha.push_back(R.to_string(a, "t"));
  const auto& s = run.ch.stats;
  Json local = Json::array();
  for (std::size_t i = 0; i < run.ch.local.size(); ++i) {
    local.push_back({{"position", run.ch.sites[i].label},
                     {"profile", profile_json(run.ch.local[i].profile)},
                     {"delta", run.ch.local[i].ledger.delta}});
  }
  Json out{{"q", q},
           {"seed", run.ch.seed},
           {"alpha", alpha},
           {"sampling",
            {{"draws", s.draws},
             {"rejected_zero_top", s.rejected_zero_top},
             {"rejected_discriminant", s.rejected_discriminant},
             {"rejected_local", s.rejected_local},
             {"rejected_reducible", s.rejected_reducible},
             {"rejected_geometric", s.rejected_geometric}}},
           {"marked_points", local},
           {"counts", json_ints(run.counts)},
           {"genus", run.g},
           {"L", run.L.to_string()},
           {"L_coefficients", json_ints(run.L.b)},
           {"class_number", json_int(run.h.h_jac)},
           {"prym_class_number", json_int(run.h.h_prym)},
           {"functional_equation", functional_equation_holds(run.L, q)},
           {"weil_bound", weil_check(run.counts, run.g, q)}};
  out["inferred_genus"] = run.inferred ? Json(*run.inferred) : Json(nullptr);
  return out;
}

Json base_report(const std::string& command, const RunConfig& cfg) {
  return {{"command", command}, {"version", kVersion}, {"input", cfg.to_json()}};
}

class Ledger {
 public:
  void add(const std::string& check, const std::string& invariant, const std::string& status, Json detail = nullptr,
           const std::string& reason = {}) {
    Json e{{"check", check}, {"invariant", invariant}, {"status", status}};
    if (!detail.is_null()) e["detail"] = std::move(detail);
    if (!reason.empty()) e["reason"] = reason;
    ++tally_[status];
    if (status == "fails") all_hold_ = false;
    entries_.push_back(std::move(e));
  }
  void holds_if(bool ok, const std::string& check, const std::string& invariant, Json detail = nullptr) {
    add(check, invariant, ok ? "holds" : "fails", std::move(detail));
  }
  bool all_hold() const { return all_hold_; }
  Json entries() const { return entries_; }
  Json summary() const {
    Json s = Json::object();
    for (const char* k : {"holds", "fails", "vacuous", "skipped"}) s[k] = tally_.count(k) ? tally_.at(k) : 0;
    return s;
  }

 private:
  Json entries_ = Json::array();
  std::map<std::string, int> tally_;
  bool all_hold_ = true;
};

template <class Field>
void verify_local(Ledger& ledger, const MarkedPoint& x, const LocalDraw<Field>& ld, const std::string& where,
                  std::int64_t closed_delta, std::vector<std::int64_t>& ledger_deltas) {
  const std::string field_name = ld.eq ? ld.eq->field.name() : std::string();
  if (!ld.res) {
    ledger.add("resolution", "local_resolution: generic draws resolve", "skipped", nullptr,
               "no generic draw in " + std::to_string(ld.draws) + " attempts at " + where);
    return;
  }
  const auto& res = *ld.res;
  const auto newton = newton_polygon_profile(*ld.eq);
  const Json tag{{"point", x.position}, {"field", field_name}, {"draws", ld.draws}};
  ledger.holds_if(res.profile.geometric() == x.mu.parts(), "profile_equals_mu",
                  "local_resolution: geometric ramification profile equals mu",
                  Json{{"at", tag}, {"profile", res.profile.geometric()}, {"mu", x.mu.parts()}});
  ledger.holds_if(newton.geometric() == res.profile.geometric(), "newton_polygon_oracle",
                  "local_resolution: blow-up profile equals the Newton polygon profile",
                  Json{{"at", tag}, {"newton", newton.geometric()}});
  ledger.holds_if(res.ledger.delta == closed_delta, "delta_ledger",
                  "local_resolution: sum of m(m-1)/2 over blow-ups equals (sum n_i^2 - r)/2",
                  Json{{"at", tag}, {"ledger", res.ledger.delta}, {"closed_form", closed_delta}});
  bool b_ok = true;
  Json stages = Json::array();
  for (int i = 1; i <= x.sigma(); ++i) {
    const int expected = min_level_data(x.partition, x.gamma, i).multiplicity;
    const int got = res.stages[static_cast<std::size_t>(i)].distinct_nonzero_roots;
    b_ok = b_ok && expected == got;
    stages.push_back({{"i", i}, {"nonzero_roots", got}, {"expected", expected}});
  }
  ledger.holds_if(b_ok, "nonzero_root_count", "local_resolution: R_i has #{l : mu_l = i} distinct nonzero roots",
                  Json{{"at", tag}, {"stages", stages}});
  ledger.holds_if(res.jacobian_ok, "singular_locus", "local_resolution: singular points lie over the origin",
                  Json{{"at", tag}});
  ledger_deltas.push_back(res.ledger.delta);
}

}  // namespace

Json run_analyze(const RunConfig& cfg) {
  const auto data = cfg.data();  // throws when only a local equation was given
  Json rep = base_report("analyze", cfg);
  rep["parabolic"] = parabolic_json(data);
  rep["hitchin"] = hitchin_json(data);
  if (cfg.d) {
    const auto b = bnr_line_bundle_degree(data, *cfg.d);
    rep["bnr"] = {{"d", *cfg.d}, {"delta", b.delta}, {"euler_consistent", b.euler_consistent}};
  }
  if (cfg.d && cfg.e) {
    const auto lam = gerbe_compatible(*cfg.d, *cfg.e, delta_P(data));
    rep["gerbe"] = {{"d", *cfg.d}, {"e", *cfg.e}, {"delta_P", delta_P(data)}, {"compatible", lam.has_value()}};
    rep["gerbe"]["lambda"] = lam ? Json(*lam) : Json(nullptr);
  }
  return rep;
}

Json run_resolve(const RunConfig& cfg) {
  Json rep = base_report("resolve", cfg);
  std::mt19937_64 rng(cfg.seed);
  if (cfg.local) {
    const Partition mu = Partition::from_parts(cfg.local->mu);
    auto run = [&](const auto& F, auto parse) {
      std::vector<typename std::decay_t<decltype(F)>::Elem> cs;
      for (const auto& s : cfg.local->coefficients) cs.push_back(parse(s));
      auto eq = local_equation_from_type(F, mu, cs, cfg.precision);
      auto res = resolve(eq);
      return resolution_json(eq, res, newton_polygon_profile(eq));
    };
    if (cfg.q) {
      const FiniteField F(*cfg.q);
      rep["local"] = run(F, [&](const std::string& s) {
        const Rational v = parse_rational(s);
        if (v.get_den() != 1) throw InvalidInput("coefficient '" + s + "' is not an integer");
        const Integer n = v.get_num();
        if (sgn(n) >= 0 && n < Integer(static_cast<unsigned long>(F.order()))) return F.element(n.get_ui());
        if (!F.is_prime_field()) throw InvalidInput("coefficient '" + s + "' is not an element index below q");
        const Integer red = ((n % F.order()) + F.order()) % F.order();
        return F.element(red.get_ui());
      });
    } else {
      const RationalField Q;
      rep["local"] = run(Q, [](const std::string& s) { return parse_rational(s); });
    }
    return rep;
  }
  const auto data = cfg.data();
  Json pts = Json::array();
  for (const auto& x : data.points()) {
    Json entry{{"position", x.position}};
    auto emit = [&](auto ld) {
      if (!ld.res) return Json{{"generic", false}, {"draws", ld.draws}};
      Json j = resolution_json(*ld.eq, *ld.res, newton_polygon_profile(*ld.eq));
      j["draws"] = ld.draws;
      return j;
    };
    if (cfg.q) {
      const FiniteField F(*cfg.q);
      entry["resolution"] = emit(generic_local_finite(F, x.mu, cfg.precision, rng));
    } else {
      entry["resolution"] = emit(generic_local_rational(x.mu, cfg.precision, rng));
    }
    pts.push_back(entry);
  }
  rep["points"] = pts;
  return rep;
}

Json run_count(const RunConfig& cfg) {
  const auto data = cfg.data();
  Json rep = base_report("count", cfg);
  rep["count"] = count_json(count_pipeline(cfg, data), *cfg.q);
  return rep;
}

Json run_stringy(const OrbifoldDescription& desc, const RunOptions& opt) {
  desc.validate();
  Json rep{{"command", "stringy"}, {"version", kVersion}};
  Json group = Json::array();
  for (const auto& g : desc.group) group.push_back({{"label", g.label}, {"order", g.order}});
  Json shifts = Json::object();
  for (const auto& [element, comps] : desc.sectors) {
    for (const auto& c : comps) {
      shifts[element + "/" + c.label] = to_string(fermionic_shift(c.eigen_exponents, desc.order_of(element)));
    }
  }
  rep["input"] = {{"ambient_dim", desc.ambient_dim}, {"group", group}};
  rep["fermionic_shifts"] = shifts;
  auto attempt = [&](const std::string& key, auto fn) {
    try {
      rep[key] = fn();
    } catch (const InvalidInput& e) {
      rep[key] = {{"error", e.what()}};
    }
  };
  attempt("E", [&] { return Json(stringy_E(desc).to_string()); });
  attempt("E_twisted", [&] { return Json(stringy_E_twisted(desc).to_string()); });
  attempt("count", [&] { return Json(to_string(stringy_count(desc))); });
  attempt("count_twisted", [&] { return Json(to_string(stringy_count_twisted(desc))); });
  Json values = Json::object();
  for (const auto& q : opt.stringy_q) {
    Json v = Json::object();
    try {
      v["count"] = stringy_count_at(desc, q).to_string();
    } catch (const InvalidInput& e) {
      v["count"] = {{"error", e.what()}};
    }
    try {
      v["count_twisted"] = stringy_count_twisted_at(desc, q).to_string();
    } catch (const InvalidInput& e) {
      v["count_twisted"] = {{"error", e.what()}};
    }
    try {
      v["weight_consistency"] = weight_consistency(desc, q);
    } catch (const InvalidInput& e) {
      v["weight_consistency"] = {{"error", e.what()}};
    }
    values[q.get_str()] = v;
  }
  rep["values"] = values;
  return rep;
}

VerifyResult run_verify(const RunConfig& cfg, const RunOptions& opt) {
  VerifyResult out;
  const auto data = cfg.data();
  Ledger ledger;
  const bool corrupt_delta = opt.inject_fault && *opt.inject_fault == "delta";
  if (opt.inject_fault && !corrupt_delta) throw InvalidInput("unknown fault '" + *opt.inject_fault + "'");

  // Combinatorics of each marked point.
  for (const auto& x : data.points()) {
    bool ok = true;
    Json stages = Json::array();
    for (int i = 1; i <= x.sigma(); ++i) {
      const auto m = min_level_data(x.partition, x.gamma, i);
      ok = ok && m.min_equals_part && m.part_a_holds;
      stages.push_back({{"i", i},
                        {"min", m.min_value},
                        {"n_i", x.partition.part(i)},
                        {"part_a", m.part_a_holds},
                        {"literal_spread_matches", m.literal_b_holds()},
                        {"amended_spread_matches", m.amended_b_holds()}});
    }
    ledger.holds_if(ok, "min_level_formula", "parabolic_core: min_l(i gamma_l + N_{i-1} - l) = n_i and part (a)",
                    Json{{"point", x.position}, {"stages", stages}});
    ledger.holds_if(level_function(x.mu, data.rank()) == x.gamma && dual_partition(x.mu) == x.partition,
                    "dual_involution", "parabolic_core: dual of the dual is the partition",
                    Json{{"point", x.position}});
  }

  // Local resolution against both oracles.
  auto gr = normalized_genus_closed_form(data);
  if (corrupt_delta) {
    for (auto& d : gr.delta_x) d += 1;
    gr.delta_total += static_cast<std::int64_t>(gr.delta_x.size());
  }
  std::mt19937_64 rng(cfg.seed);
  std::vector<std::int64_t> q_deltas, f_deltas;
  for (std::size_t i = 0; i < data.points().size(); ++i) {
    const auto& x = data.points()[i];
    verify_local(ledger, x, generic_local_rational(x.mu, cfg.precision, rng), "point '" + x.position + "' over Q",
                 gr.delta_x[i], q_deltas);
    if (cfg.q) {
      const FiniteField F(*cfg.q);
      verify_local(ledger, x, generic_local_finite(F, x.mu, cfg.precision, rng),
                   "point '" + x.position + "' over " + F.name(), gr.delta_x[i], f_deltas);
    }
  }

  // Genus bookkeeping.
  ledger.holds_if(gr.identity_holds && gr.p_a - gr.delta_total == gr.g_tilde, "genus_closed_form",
                  "hitchin: g_tilde = p_a - sum delta_x",
                  Json{{"p_a", gr.p_a}, {"delta_total", gr.delta_total}, {"g_tilde", gr.g_tilde}});
  if (q_deltas.size() == data.points().size()) {
    std::int64_t s = 0;
    for (auto d : q_deltas) s += d;
    ledger.holds_if(spectral_arithmetic_genus(data) - s == gr.g_tilde, "delta_triangulation",
                    "hitchin: p_a minus the resolution-ledger delta equals g_tilde",
                    Json{{"ledger_delta", s}, {"g_tilde", gr.g_tilde}});
  } else {
    ledger.add("delta_triangulation", "hitchin: p_a minus the resolution-ledger delta equals g_tilde", "skipped",
               nullptr, "some point had no generic draw");
  }

  // Dimension identities.
  const auto ir = integrability_report(data);
  Json idetail{{"g_tilde", ir.g_tilde}, {"genus", ir.genus}, {"notes", ir.notes}};
  if (ir.dims) {
    idetail["dim_HP"] = ir.dims->dim_HP;
    idetail["dim_HP0"] = ir.dims->dim_HP0;
  }
  const std::string istatus = to_string(ir.status);
  ledger.add("dimension_identities", "hitchin: dim H_P = g_tilde and dim H_P^0 = g_tilde - g", istatus, idetail,
             (istatus == "skipped" || istatus == "vacuous") && !ir.notes.empty() ? ir.notes.front() : "");
  {
    const std::int64_t d = cfg.d.value_or(0);
    const auto b = bnr_line_bundle_degree(data, d);
    ledger.holds_if(b.euler_consistent, "bnr_euler_characteristic",
                    "hitchin: deg L + 1 - g_tilde = d + r(1 - g) for the BNR line bundle",
                    Json{{"d", d}, {"delta", b.delta}});
  }

  // Delta_P and the gerbe condition.
  const int dp = delta_P(data);
  const bool full_flag = std::any_of(data.points().begin(), data.points().end(),
                                     [](const MarkedPoint& x) { return x.partition.is_full_flag(); });
  if (full_flag) {
    ledger.holds_if(dp == 1, "delta_P_full_flag", "parabolic_core: a full-flag point forces Delta_P = 1",
                    Json{{"delta_P", dp}});
  } else {
    ledger.add("delta_P_full_flag", "parabolic_core: a full-flag point forces Delta_P = 1", "vacuous",
               Json{{"delta_P", dp}}, "no full-flag point");
  }
  if (cfg.d && cfg.e) {
    bool brute = false;
    for (int lam = 1; lam <= dp && !brute; ++lam) {
      const Integer diff = Integer(static_cast<long>(lam)) * Integer(static_cast<long>(*cfg.d)) -
                           Integer(static_cast<long>(*cfg.e));
      brute = mpz_divisible_ui_p(diff.get_mpz_t(), static_cast<unsigned long>(dp)) != 0;
    }
    const auto lam = gerbe_compatible(*cfg.d, *cfg.e, dp);
    ledger.holds_if(lam.has_value() == brute, "gerbe_condition",
                    "parabolic_core: e = lambda d (mod Delta_P) agrees with enumeration over lambda",
                    Json{{"d", *cfg.d}, {"e", *cfg.e}, {"delta_P", dp}, {"compatible", lam.has_value()}});
  } else {
    ledger.add("gerbe_condition", "parabolic_core: e = lambda d (mod Delta_P) agrees with enumeration over lambda",
               "skipped", nullptr, "degrees d, e not supplied");
  }

  // Finite-field sampling, counting and zeta.
  const char* count_inv = "spectral_count: zeta fit of the sampled spectral curve";
  if (!cfg.q) {
    ledger.add("zeta_pipeline", count_inv, "skipped", nullptr, "no finite field supplied");
  } else {
    try {
      const auto run = count_pipeline(cfg, data);
      std::int64_t local_delta = 0;
      std::vector<RamificationProfile> profiles;
      for (const auto& res : run.ch.local) {
        local_delta += res.ledger.delta;
        profiles.push_back(res.profile);
      }
      const Json cdetail{{"counts", json_ints(run.counts)}, {"L", run.L.to_string()}, {"seed", cfg.seed},
                         {"class_number", json_int(run.h.h_jac)}};
      ledger.holds_if(run.L.genus() == run.g && functional_equation_holds(run.L, *cfg.q), "zeta_fit", count_inv,
                      cdetail);
      ledger.holds_if(run.inferred && *run.inferred == run.g &&
                          spectral_arithmetic_genus(data) - local_delta == gr.g_tilde,
                      "genus_triangulation", "spectral_count: closed-form, ledger and point-count genera agree",
                      Json{{"closed_form", gr.g_tilde},
                           {"ledger", spectral_arithmetic_genus(data) - local_delta},
                           {"from_counts", run.inferred ? Json(*run.inferred) : Json(nullptr)}});
      ledger.holds_if(weil_check(run.counts, run.g, *cfg.q), "weil_bound",
                      "zeta: |N_m - q^m - 1| <= 2 g q^(m/2)", Json{{"counts", json_ints(run.counts)}});
      const auto dg = rational_divisor_gcd(profiles, dp);
      ledger.holds_if(dg.divides, "rational_divisor_gcd",
                      "local_resolution: degree gcd of rational divisors over D divides Delta_P",
                      Json{{"group_gcd", dg.group_gcd}, {"closed_point_gcd", dg.closed_point_gcd}, {"delta_P", dp}});
    } catch (const ResourceExhausted& e) {
      out.exhausted = true;
      ledger.add("zeta_pipeline", count_inv, "skipped", nullptr, e.what());
    } catch (const InvalidInput& e) {
      ledger.add("zeta_pipeline", count_inv, "skipped", nullptr, e.what());
    }
  }

  out.all_hold = ledger.all_hold();
  Json rep = base_report("verify", cfg);
  rep["ledger"] = ledger.entries();
  rep["summary"] = ledger.summary();
  rep["all_hold"] = out.all_hold;
  rep["exit_code"] = out.exit_code();
  out.report = std::move(rep);
  return out;
}

}  // namespace paraspec
