// End-to-end acceptance run: one PASS/FAIL line per criterion.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include <paraspec/cli.hpp>
#include <paraspec/errors.hpp>
#include <paraspec/hitchin.hpp>
#include <paraspec/local_resolution.hpp>
#include <paraspec/spectral_count.hpp>
#include <paraspec/stringy.hpp>
#include <paraspec/zeta.hpp>

using namespace paraspec;
namespace fs = std::filesystem;

namespace {

const fs::path kData = PARASPEC_DATA_DIR;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<fs::path> files_in(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".json") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

// Collects failures for one criterion.
struct Tally {
  long checks = 0;
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures.size() < 5) failures.push_back(what);
    if (!ok) ++failed;
  }
  long failed = 0;
};

ParabolicData single_point(const std::vector<int>& parts) {
  const int r = std::accumulate(parts.begin(), parts.end(), 0);
  return ParabolicData(r, 1, {make_marked_point("0", parts, r)});
}

template <class Field, class Draw>
LocalEquation<Field> draw_local(const Field& F, const Partition& mu, Draw draw_unit) {
  std::vector<typename Field::Elem> cs(static_cast<std::size_t>(mu.total()));
  for (auto& v : cs) v = draw_unit();
  return local_equation_from_type(F, mu, cs);
}

// 1. Minimum formula and part (a) by enumeration; amended part (b) on generic draws.
void level_formulas(Tally& t) {
  std::mt19937_64 rng(1);
  for (int r = 1; r <= 10; ++r) {
    const auto parts = partitions_of(r);
    if (r == 10) t.expect(parts.size() >= 42, "42 partitions of 10");
    for (const auto& n : parts) {
      const auto x = make_marked_point("0", n.parts(), r);
      for (int i = 1; i <= x.sigma(); ++i) {
        const auto m = min_level_data(x.partition, x.gamma, i);
        t.expect(m.min_equals_part && m.part_a_holds, "min formula at " + to_string(n) + " i=" + std::to_string(i));
      }
      for (std::uint32_t p : {11u, 97u}) {
        const FiniteField F(p);
        int generic = 0;
        for (int attempt = 0; generic < 20 && attempt < 400; ++attempt) {
          auto res = resolve(draw_local(F, x.mu, [&] { return F.random_nonzero(rng); }));
          if (!res.generic) continue;
          ++generic;
          for (int i = 1; i <= x.sigma(); ++i) {
            const int expected = min_level_data(x.partition, x.gamma, i).multiplicity;
            t.expect(res.stages[static_cast<std::size_t>(i)].distinct_nonzero_roots == expected,
                     "nonzero roots of R_" + std::to_string(i) + " at " + to_string(n) + " over GF(" +
                         std::to_string(p) + ")");
          }
        }
        t.expect(generic == 20, "20 generic draws at " + to_string(n) + " over GF(" + std::to_string(p) + ")");
      }
    }
  }
}

// 2. Ledger delta, resolution profile and Newton polygon over Q and GF(p).
void delta_triangulation(Tally& t) {
  std::mt19937_64 rng(2);
  const RationalField Q;
  for (int r = 1; r <= 8; ++r) {
    for (const auto& n : partitions_of(r)) {
      const auto x = make_marked_point("0", n.parts(), r);
      int sq = 0;
      for (int v : n.parts()) sq += v * v;
      const int closed = (sq - r) / 2;
      auto check = [&](const auto& eq, const std::string& where) {
        const auto res = resolve(eq);
        if (!res.generic) return false;
        t.expect(res.ledger.delta == closed, "delta at " + to_string(n) + where);
        t.expect(res.profile.geometric() == x.mu.parts(), "profile at " + to_string(n) + where);
        t.expect(newton_polygon_profile(eq).geometric() == x.mu.parts(), "Newton at " + to_string(n) + where);
        return true;
      };
      int q_ok = 0, f_ok = 0;
      for (int attempt = 0; attempt < 40 && (q_ok < 3 || f_ok < 3); ++attempt) {
        if (q_ok < 3) {
          auto eq = draw_local(Q, x.mu, [&] { return Rational(static_cast<long>(rng() % 19) + 1) * (rng() % 2 ? 1 : -1); });
          q_ok += check(eq, " over Q");
        }
        if (f_ok < 3) {
          const FiniteField F(rng() % 2 ? 11 : 97);
          f_ok += check(draw_local(F, x.mu, [&] { return F.random_nonzero(rng); }), " over " + F.name());
        }
      }
      t.expect(q_ok == 3 && f_ok == 3, "generic draws at " + to_string(n));
    }
  }
}

// 3. Dimension identities on the bundled catalogue.
void dimension_identities(Tally& t) {
  const auto files = files_in(kData / "catalogue");
  t.expect(files.size() >= 20, "catalogue has at least 20 data sets");
  std::set<int> genera;
  for (const auto& f : files) {
    const auto data = parse_config(slurp(f)).data();
    genera.insert(data.genus());
    const auto ir = integrability_report(data);
    const auto gr = normalized_genus_closed_form(data);
    const std::string name = f.stem().string();
    t.expect(ir.status == IntegrabilityStatus::holds, name + ": integrability " + to_string(ir.status));
    if (!ir.dims) continue;
    t.expect(ir.dims->dim_HP == gr.g_tilde && gr.g_tilde == gr.p_a - gr.delta_total, name + ": dim H_P = g~");
    t.expect(ir.dims->dim_HP0 == gr.g_tilde - data.genus(), name + ": dim H_P^0 = g~ - g");
  }
  t.expect(genera == std::set<int>{0, 1, 2}, "catalogue covers g = 0, 1, 2");
  struct Named {
    const char* file;
    std::int64_t hp, hp0, gt;
  };
  for (const auto& n : {Named{"r3_g0_three_borel", 1, 1, 1}, Named{"r2_g0_four_borel_q5", 1, 1, 1},
                        Named{"r2_g2_one_borel", 6, 4, 6}}) {
    const auto data = parse_config(slurp(kData / "catalogue" / (std::string(n.file) + ".json"))).data();
    const auto d = hitchin_dims(data);
    t.expect(d.dim_HP == n.hp && d.dim_HP0 == n.hp0 && normalized_genus_closed_form(data).g_tilde == n.gt,
             std::string(n.file) + ": named values");
  }
}

// Elliptic-curve point count of lambda^2 + a(t) = 0 over the given field by enumeration, plus the
// single point over infinity (odd degree).
std::uint64_t brute_pairs(const FiniteField& K, const FiniteField& F, const FqPoly& a) {
  const FieldEmbedding emb(F, K);
  std::uint64_t n = 1;
  for (std::uint64_t ti = 0; ti < K.order(); ++ti) {
    FiniteField::Elem v = 0;
    for (std::size_t k = a.c.size(); k-- > 0;) v = K.add(K.mul(v, K.element(ti)), emb(a.c[k]));
    for (std::uint64_t li = 0; li < K.order(); ++li) {
      const auto l = K.element(li);
      n += K.is_zero(K.add(K.mul(l, l), v)) ? 1 : 0;
    }
  }
  return n;
}

std::vector<GlobalCharacteristic> g_samples;  // accepted samples reused by criterion 5

// 4. Zeta pipeline.
void zeta_pipeline(Tally& t) {
  const auto four = parse_config(slurp(kData / "catalogue/r2_g0_four_borel_q5.json"));
  {
    const auto data = four.data();
    const FiniteField F(5);
    const auto ch = sample_characteristic(data, F, four.seed);
    const std::vector<Integer> counts{Integer(static_cast<unsigned long>(count_curve(ch, 1))),
                                      Integer(static_cast<unsigned long>(count_curve(ch, 2)))};
    const auto L = zeta_fit(counts, 5, 1);
    t.expect(counts[0] == 8, "N_1 = 8");
    t.expect(L.to_string() == "1 + 2*T + 5*T^2", "L = 1 + 2T + 5T^2");
    const auto h = class_numbers(L, LPolynomial{{Integer(1)}});
    t.expect(h.h_jac == 8, "class number 8");
    // For an elliptic curve the class number is the group order, counted here by enumeration.
    t.expect(brute_pairs(F, F, ch.alpha[1]) == 8, "brute-force group order 8");
    t.expect(Integer(static_cast<unsigned long>(brute_pairs(FiniteField(25), F, ch.alpha[1]))) ==
                 predicted_counts(L, 5, 2)[1],
             "brute-force N_2 matches L");
  }
  int samples = 0;
  for (const auto& f : files_in(kData / "catalogue")) {
    const auto cfg = parse_config(slurp(f));
    if (!cfg.q || *cfg.q > 9 || cfg.genus != 0) continue;
    const auto data = cfg.data();
    const auto gr = normalized_genus_closed_form(data);
    if (gr.g_tilde > 3) continue;
    const FiniteField F(*cfg.q);
    for (std::uint64_t seed : {cfg.seed, cfg.seed + 100}) {
      const auto ch = sample_characteristic(data, F, seed);
      const int g = static_cast<int>(gr.g_tilde);
      std::vector<Integer> counts;
      for (int m = 1; m <= g + 1; ++m) counts.emplace_back(static_cast<unsigned long>(count_curve(ch, m)));
      std::int64_t ledger = spectral_arithmetic_genus(data);
      for (const auto& res : ch.local) ledger -= res.ledger.delta;
      const std::string name = f.stem().string() + " seed " + std::to_string(seed);
      try {
        const auto L = zeta_fit(counts, *cfg.q, g);
        t.expect(static_cast<int>(L.b.size()) - 1 == 2 * gr.g_tilde && ledger == gr.g_tilde, name + ": degree 2g~");
        t.expect(functional_equation_holds(L, *cfg.q), name + ": functional equation");
        t.expect(weil_check(counts, g, *cfg.q), name + ": Weil bound");
      } catch (const ComputationFailed& e) {
        t.expect(false, name + ": " + e.what());
      }
      g_samples.push_back(ch);
      ++samples;
    }
  }
  t.expect(samples >= 10, "at least 10 seeded samples");
}

// 5. Delta_P, gerbe arithmetic and rational divisors.
void delta_p_and_gerbe(Tally& t) {
  for (int r = 2; r <= 8; ++r) {
    const auto parts = partitions_of(r);
    const std::size_t k = parts.size();
    auto visit = [&](std::vector<std::size_t> idx) {
      std::vector<MarkedPoint> pts;
      bool full = false;
      for (std::size_t j = 0; j < idx.size(); ++j) {
        pts.push_back(make_marked_point(std::to_string(j), parts[idx[j]].parts(), r));
        full = full || parts[idx[j]].is_full_flag();
      }
      const ParabolicData data(r, 1, pts);
      // gcd of the multiplicity counts, recomputed from the dual partitions
      int g = 0;
      for (const auto& x : pts) {
        std::map<int, int> counts;
        for (int v : x.mu.parts()) ++counts[v];
        for (const auto& [i, c] : counts) g = std::gcd(g, c);
      }
      t.expect(delta_P(data) == g, "Delta_P recomputation");
      if (full) t.expect(delta_P(data) == 1, "full flag forces Delta_P = 1");
    };
    for (std::size_t a = 0; a < k; ++a) {
      visit({a});
      for (std::size_t b = a; b < k; ++b) {
        visit({a, b});
        for (std::size_t c = b; c < k; ++c) visit({a, b, c});
      }
    }
  }
  for (int dp = 1; dp <= 12; ++dp) {
    for (std::int64_t d = -15; d <= 15; ++d) {
      for (std::int64_t e = -15; e <= 15; ++e) {
        bool brute = false;
        for (std::int64_t lam = 0; lam < dp; ++lam) brute = brute || ((lam * d - e) % dp + dp) % dp == 0;
        t.expect(gerbe_compatible(d, e, dp).has_value() == brute, "gerbe condition");
      }
    }
  }
  int used = 0;
  for (const auto& ch : g_samples) {
    std::vector<RamificationProfile> profiles;
    for (const auto& res : ch.local) profiles.push_back(res.profile);
    std::vector<MarkedPoint> pts;
    for (const auto& s : ch.sites) pts.push_back(make_marked_point(s.label, s.partition.parts(), ch.r));
    const int dp = delta_P(ParabolicData(ch.r, 0, pts));
    if (dp != 1) continue;
    ++used;
    t.expect(rational_divisor_gcd(profiles, dp).group_gcd == 1, "rational divisor gcd is one");
  }
  t.expect(used > 0, "finite-field samples with Delta_P = 1");
}

// 6. Stringy evaluators.
void stringy_checks(Tally& t) {
  const auto plane = parse_sectors(slurp(kData / "sectors/z2_plane.json"));
  t.expect(stringy_E(plane).to_string() == "u^2*v^2 + u*v", "E_st = (uv)^2 + uv");
  t.expect(to_string(stringy_count_twisted(plane)) == "q^2 - q", "twisted count q^2 - q");
  t.expect(stringy_count_at(plane, 9) == Cyclotomic(Rational(90)), "count 90 at q = 9");
  for (const auto& f : files_in(kData / "sectors")) {
    const auto d = parse_sectors(slurp(f));
    for (long q : {2, 3, 4, 5}) {
      t.expect(weight_consistency(d, q), f.stem().string() + ": weight consistency at q = " + std::to_string(q));
    }
    auto ones = d;
    for (auto& [g, comps] : ones.sectors)
      for (auto& c : comps) c.twist_trace = RootOfUnity{0, 1};
    t.expect(stringy_count_twisted(ones) == stringy_count(ones), f.stem().string() + ": all traces one");
  }
  const auto trivial = parse_sectors(slurp(kData / "sectors/trivial_group_plane.json"));
  t.expect(stringy_E(trivial) == *trivial.sectors.begin()->second.front().e_poly, "trivial group E");
  t.expect(to_string(stringy_count(trivial)) == "q^2", "trivial group count");
}

// 7. Byte-identical verify reports through the command line.
void determinism(Tally& t) {
  const fs::path tmp = fs::temp_directory_path();
  for (const auto& f : files_in(kData / "catalogue")) {
    std::string outs[2];
    for (int k = 0; k < 2; ++k) {
      const fs::path out = tmp / ("paraspec_verify_" + std::to_string(k) + ".json");
      const std::string cmd = std::string(PARASPEC_CLI) + " verify --config " + f.string() + " --out " + out.string();
      const int status = std::system(cmd.c_str());
      t.expect(WIFEXITED(status) && WEXITSTATUS(status) == 0, f.stem().string() + ": verify exit code");
      outs[k] = slurp(out);
      fs::remove(out);
    }
    t.expect(!outs[0].empty() && outs[0] == outs[1], f.stem().string() + ": identical reports");
  }
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<void(Tally&)> run;
  };
  const Criterion criteria[] = {
      {1, "level formulas", 120, level_formulas},
      {2, "delta triangulation", 120, delta_triangulation},
      {3, "dimension identities", 60, dimension_identities},
      {4, "zeta pipeline", 300, zeta_pipeline},
      {5, "Delta_P and gerbe arithmetic", 60, delta_p_and_gerbe},
      {6, "stringy evaluators", 10, stringy_checks},
      {7, "determinism", 120, determinism},
  };
  bool all = true;
  for (const auto& c : criteria) {
    Tally t;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(t);
    } catch (const std::exception& e) {
      t.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.limit_seconds;
    const bool pass = t.failed == 0 && in_time;
    all = all && pass;
    std::printf("criterion %d (%s): %s  [%ld checks, %ld failed, %.2fs of %.0fs]\n", c.id, c.name,
                pass ? "PASS" : "FAIL", t.checks, t.failed, secs, c.limit_seconds);
    for (const auto& f : t.failures) std::printf("    %s\n", f.c_str());
    if (!in_time) std::printf("    over the time limit\n");
  }
  return all ? 0 : 1;
}
