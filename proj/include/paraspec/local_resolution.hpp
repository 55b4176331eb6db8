#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "paraspec/errors.hpp"
#include "paraspec/parabolic.hpp"
#include "paraspec/poly_factor.hpp"

namespace paraspec {

// Power series known modulo t^N.
template <class Field>
class TruncatedSeries {
 public:
  using Elem = typename Field::Elem;

  TruncatedSeries() = default;
  TruncatedSeries(const Field& F, std::vector<Elem> coeffs, int precision) {
    if (precision < 1) throw InvalidInput("series precision must be positive");
    coeffs.resize(static_cast<std::size_t>(precision), F.zero());
    c_ = std::move(coeffs);
  }
  static TruncatedSeries constant(const Field& F, const Elem& v, int precision) {
    return TruncatedSeries(F, {v}, precision);
  }

  int precision() const noexcept { return static_cast<int>(c_.size()); }
  const Elem& at(int k) const {
    if (k < 0 || k >= precision()) throw PrecisionExhausted("series coefficient beyond working precision");
    return c_[static_cast<std::size_t>(k)];
  }
  const std::vector<Elem>& coefficients() const noexcept { return c_; }

  // Index of the first nonzero coefficient, or nullopt if zero to precision.
  std::optional<int> order(const Field& F) const {
    for (int k = 0; k < precision(); ++k)
      if (!F.is_zero(c_[k])) return k;
    return std::nullopt;
  }

  static TruncatedSeries add(const Field& F, const TruncatedSeries& a, const TruncatedSeries& b) {
    const int n = std::min(a.precision(), b.precision());
    std::vector<Elem> out(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) out[k] = F.add(a.c_[k], b.c_[k]);
    return TruncatedSeries(F, std::move(out), n);
  }
  static TruncatedSeries mul(const Field& F, const TruncatedSeries& a, const TruncatedSeries& b) {
    const int n = std::min(a.precision(), b.precision());
    std::vector<Elem> out(static_cast<std::size_t>(n), F.zero());
    for (int i = 0; i < n; ++i) {
      if (F.is_zero(a.c_[i])) continue;
      for (int j = 0; i + j < n; ++j) out[i + j] = F.add(out[i + j], F.mul(a.c_[i], b.c_[j]));
    }
    return TruncatedSeries(F, std::move(out), n);
  }

 private:
  std::vector<Elem> c_;
};

// lambda^r + sum_l c_l(t) t^{gamma_l} lambda^{r-l} over k[[t]].
template <class Field>
struct LocalEquation {
  using Elem = typename Field::Elem;

  Field field;
  int r = 0;
  Partition n;   // sorted partition
  Partition mu;  // its dual
  LevelFunction gamma;
  std::vector<TruncatedSeries<Field>> c;  // c_1..c_r
  int precision = 0;
  bool units_ok = true;  // c_l(0) != 0 wherever a unit is required
  std::vector<std::string> warnings;
};

int default_precision(int r, const LevelFunction& gamma);

// Indices l in the union of the level sets L_i: the coefficients whose
// constant terms must be units.
std::vector<int> required_units(const Partition& n, const LevelFunction& gamma);

template <class Field>
LocalEquation<Field> local_equation_from_type(const Field& F, const Partition& mu,
                                              std::vector<TruncatedSeries<Field>> coeffs,
                                              std::optional<int> precision = std::nullopt) {
  LocalEquation<Field> eq{F, 0, {}, {}, {}, {}, 0, true, {}};
  eq.r = mu.total();
  eq.mu = mu;
  eq.n = dual_partition(mu);
  eq.gamma = level_function(mu, eq.r);
  if (static_cast<int>(coeffs.size()) != eq.r) {
    throw InvalidInput("expected " + std::to_string(eq.r) + " coefficients, got " + std::to_string(coeffs.size()));
  }
  eq.precision = precision.value_or(default_precision(eq.r, eq.gamma));
  if (eq.precision < 1) throw InvalidInput("precision must be positive");
  for (auto& s : coeffs) {
    auto v = s.coefficients();
    if (static_cast<int>(v.size()) > eq.precision) v.resize(static_cast<std::size_t>(eq.precision));
    // A shorter input series is only known to its own precision.
    const int prec = std::min(eq.precision, s.precision());
    eq.c.emplace_back(F, std::move(v), prec);
  }
  for (int l : required_units(eq.n, eq.gamma)) {
    if (F.is_zero(eq.c[l - 1].at(0))) {
      eq.units_ok = false;
      eq.warnings.push_back("non-generic leading coefficient: c_" + std::to_string(l) + "(0) = 0");
    }
  }
  return eq;
}

template <class Field>
LocalEquation<Field> local_equation_from_type(const Field& F, const Partition& mu,
                                              const std::vector<typename Field::Elem>& constants,
                                              std::optional<int> precision = std::nullopt) {
  const int N = precision.value_or(default_precision(mu.total(), level_function(mu, mu.total())));
  std::vector<TruncatedSeries<Field>> cs;
  for (const auto& v : constants) cs.push_back(TruncatedSeries<Field>::constant(F, v, std::max(N, 1)));
  return local_equation_from_type(F, mu, std::move(cs), precision);
}

struct ProfileEntry {
  int e = 0;      // ramification index
  int deg = 0;    // residue degree over the base field
  int count = 0;  // number of closed points with this (e, deg)
  bool operator==(const ProfileEntry&) const = default;
};

struct RamificationProfile {
  std::vector<ProfileEntry> entries;  // sorted by (e desc, deg asc)

  void add(int e, int deg, int count = 1);
  // Sum of e * deg * count.
  int total() const;
  // Ramification indices over the algebraic closure, non-increasing.
  std::vector<int> geometric() const;
};

struct DeltaLedger {
  std::vector<int> multiplicities;
  int delta = 0;
};

// lambda^a u^b with a coefficient.
template <class Field>
struct Term {
  int a = 0;
  int b = 0;
  typename Field::Elem c;
};

template <class Field>
struct RootFactor {
  Poly<Field> poly;  // monic irreducible factor of the nonzero part of R_i
  int multiplicity = 1;
};

template <class Field>
struct BlowupStage {
  int index = 0;
  std::vector<Term<Field>> terms;    // known exactly for b < u_precision
  int u_precision = 0;
  int a_floor = 0;                   // lambda-exponent lower bound of the unknown terms
  int exceptional_multiplicity = 0;  // of the blow-up producing this stage (0 for stage 0)
  int expected_multiplicity = 0;     // n_i
  bool chart1_empty = true;          // previous stage's first chart misses the origin
  Poly<Field> R;                     // lambda^0 part
  std::vector<RootFactor<Field>> roots;
  int distinct_nonzero_roots = 0;    // over the algebraic closure
  bool origin_on_curve = false;
  bool origin_smooth = false;
  bool jacobian_ok = true;           // singular points on lambda = 0 lie at the origin
};

template <class Field>
struct ResolutionResult {
  RamificationProfile profile;
  DeltaLedger ledger;
  std::vector<BlowupStage<Field>> stages;  // stage 0 .. sigma
  bool generic = true;
  bool jacobian_ok = true;
  std::vector<std::string> notes;
};

namespace detail {

template <class Field>
int min_total_degree(const std::vector<Term<Field>>& terms) {
  int m = std::numeric_limits<int>::max();
  for (const auto& t : terms) m = std::min(m, t.a + t.b);
  return m;
}

template <class Field>
Poly<Field> lambda_slice(const Field& F, const std::vector<Term<Field>>& terms, int a) {
  std::vector<typename Field::Elem> cs;
  for (const auto& t : terms) {
    if (t.a != a) continue;
    if (static_cast<int>(cs.size()) <= t.b) cs.resize(static_cast<std::size_t>(t.b) + 1, F.zero());
    cs[t.b] = F.add(cs[t.b], t.c);
  }
  return PolyRing<Field>(F).from(std::move(cs));
}

}  // namespace detail

template <class Field>
BlowupStage<Field> initial_stage(const LocalEquation<Field>& eq) {
  const Field& F = eq.field;
  BlowupStage<Field> st;
  st.terms.push_back({eq.r, 0, F.one()});
  int pu = std::numeric_limits<int>::max();
  bool any = false;
  for (int l = 1; l <= eq.r; ++l) {
    const auto& s = eq.c[l - 1];
    const int g = eq.gamma.at(l);
    pu = std::min(pu, g + s.precision());
    for (int k = 0; k < s.precision(); ++k) {
      if (F.is_zero(s.at(k))) continue;
      st.terms.push_back({eq.r - l, g + k, s.at(k)});
      any = true;
    }
  }
  if (!any) throw InvalidInput("degenerate equation: every coefficient vanishes");
  st.u_precision = pu;
  st.a_floor = 0;
  st.origin_on_curve = true;
  return st;
}

// Chart u_{i-1} = lambda u_i followed by division by the exceptional factor.
template <class Field>
BlowupStage<Field> blowup_step(const Field& F, const BlowupStage<Field>& prev, int expected) {
  BlowupStage<Field> st;
  st.index = prev.index + 1;
  st.expected_multiplicity = expected;
  st.u_precision = prev.u_precision;

  const int m = detail::min_total_degree(prev.terms);
  if (m >= prev.a_floor + prev.u_precision) {
    throw PrecisionExhausted("precision exhausted at stage " + std::to_string(st.index) + "; rerun with larger N");
  }
  bool only_lambda = std::all_of(prev.terms.begin(), prev.terms.end(), [](const auto& t) { return t.b == 0; });
  if (only_lambda) throw InvalidInput("degenerate equation: strict transform is a power of lambda");
  st.exceptional_multiplicity = m;
  // First chart lambda = u v: its origin lies on the strict transform iff the
  // initial form lacks the pure u^m term.
  st.chart1_empty = std::any_of(prev.terms.begin(), prev.terms.end(),
                                [&](const auto& t) { return t.a == 0 && t.b == m; });

  for (const auto& t : prev.terms) st.terms.push_back({t.a + t.b - m, t.b, t.c});
  st.a_floor = prev.a_floor + prev.u_precision - m;
  if (st.a_floor <= 1) {
    throw PrecisionExhausted("precision exhausted at stage " + std::to_string(st.index) + "; rerun with larger N");
  }

  PolyRing<Field> R(F);
  st.R = detail::lambda_slice(F, st.terms, 0);
  st.origin_on_curve = st.R.is_zero() || F.is_zero(st.R.c[0]);
  st.origin_smooth = st.origin_on_curve && detail::min_total_degree(st.terms) == 1;

  if (!st.R.is_zero()) {
    int v = 0;
    while (F.is_zero(st.R.c[v])) ++v;
    Poly<Field> nz{std::vector<typename Field::Elem>(st.R.c.begin() + v, st.R.c.end())};
    if (nz.degree() > 0) {
      for (auto& f : factor(R, nz)) {
        st.distinct_nonzero_roots += f.poly.degree();
        st.roots.push_back({std::move(f.poly), f.multiplicity});
      }
      const Poly<Field> p1 = detail::lambda_slice(F, st.terms, 1);
      const Poly<Field> bad = R.gcd(R.gcd(nz, R.derivative(nz)), p1);
      st.jacobian_ok = bad.degree() <= 0;
    }
  }
  return st;
}

template <class Field>
ResolutionResult<Field> resolve(const LocalEquation<Field>& eq) {
  const Field& F = eq.field;
  ResolutionResult<Field> res;
  res.generic = eq.units_ok;
  for (const auto& w : eq.warnings) res.notes.push_back(w);

  res.stages.push_back(initial_stage(eq));
  const int sigma = eq.n.length();
  for (int i = 1; i <= sigma; ++i) {
    res.stages.push_back(blowup_step(F, res.stages.back(), eq.n.part(i)));
    const auto& st = res.stages.back();
    res.ledger.multiplicities.push_back(st.exceptional_multiplicity);
    res.ledger.delta += st.exceptional_multiplicity * (st.exceptional_multiplicity - 1) / 2;
    if (st.exceptional_multiplicity != st.expected_multiplicity) {
      res.generic = false;
      res.notes.push_back("non-generic: unexpected exceptional multiplicity " +
                          std::to_string(st.exceptional_multiplicity) + " at stage " + std::to_string(i) +
                          " (expected " + std::to_string(st.expected_multiplicity) + ")");
    }
    if (!st.chart1_empty) {
      res.notes.push_back("first chart meets the strict transform at stage " + std::to_string(i));
    }
    if (!st.jacobian_ok) {
      res.jacobian_ok = false;
      res.notes.push_back("singular point away from the origin at stage " + std::to_string(i));
    }
    for (const auto& rf : st.roots) {
      if (rf.multiplicity != 1) {
        res.generic = false;
        res.notes.push_back("repeated nonzero root of R_" + std::to_string(i));
      }
      res.profile.add(i, rf.poly.degree(), 1);
    }
  }
  if (res.stages.back().origin_on_curve && !res.stages.back().origin_smooth) {
    res.jacobian_ok = false;
    res.notes.push_back("final stage is singular at its origin");
  }
  return res;
}

// Lower convex hull of {(r - l, v(c_l t^gamma_l))} and (r, 0); each edge of
// length L and slope a/b in lowest terms yields L/b branches of index b.
template <class Field>
RamificationProfile newton_polygon_profile(const LocalEquation<Field>& eq) {
  std::vector<std::pair<int, int>> pts{{eq.r, 0}};
  for (int l = 1; l <= eq.r; ++l) {
    auto ord = eq.c[l - 1].order(eq.field);
    if (ord) pts.push_back({eq.r - l, eq.gamma.at(l) + *ord});
  }
  std::sort(pts.begin(), pts.end());
  if (pts.front().first != 0) throw InvalidInput("degenerate support: c_r vanishes to working precision");
  std::vector<std::pair<int, int>> hull;
  for (const auto& p : pts) {
    if (!hull.empty() && hull.back().first == p.first) continue;  // keep lowest y per x
    while (hull.size() >= 2) {
      const auto& o = hull[hull.size() - 2];
      const auto& a = hull.back();
      const long cross = static_cast<long>(a.first - o.first) * (p.second - o.second) -
                         static_cast<long>(a.second - o.second) * (p.first - o.first);
      if (cross <= 0) hull.pop_back();
      else break;
    }
    hull.push_back(p);
  }
  RamificationProfile prof;
  for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
    const int L = hull[k + 1].first - hull[k].first;
    const int h = hull[k].second - hull[k + 1].second;
    const int b = L / std::gcd(L, h);
    prof.add(b, 1, L / b);
  }
  return prof;
}

struct DivisorGcd {
  int group_gcd = 0;        // gcd of sum deg*count per (point, index)
  int closed_point_gcd = 0; // gcd of individual residue degrees
  int delta_p = 0;
  bool divides = false;     // group_gcd divides delta_p
};

DivisorGcd rational_divisor_gcd(const std::vector<RamificationProfile>& profiles, int delta_p);

extern template ResolutionResult<RationalField> resolve(const LocalEquation<RationalField>&);
extern template ResolutionResult<FiniteField> resolve(const LocalEquation<FiniteField>&);
extern template RamificationProfile newton_polygon_profile(const LocalEquation<RationalField>&);
extern template RamificationProfile newton_polygon_profile(const LocalEquation<FiniteField>&);

}  // namespace paraspec
