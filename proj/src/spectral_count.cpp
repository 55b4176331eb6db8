#include "paraspec/spectral_count.hpp"

#include <algorithm>
#include <random>

#include "paraspec/errors.hpp"
#include "paraspec/hitchin.hpp"

namespace paraspec {

using Elem = FiniteField::Elem;

namespace {

// Polynomial in lambda with coefficients in K[s]: v[k] is the lambda^k coefficient.
using LambdaPoly = std::vector<FqPoly>;

FqPoly embed(const FqPolyRing& RK, const FieldEmbedding& emb, const FqPoly& f) {
  std::vector<Elem> cs;
  cs.reserve(f.c.size());
  for (Elem v : f.c) cs.push_back(emb(v));
  return RK.from(std::move(cs));
}

// Characteristic polynomial in lambda with alpha_j(t) coefficients.
LambdaPoly lambda_form(const FqPolyRing& R, const std::vector<FqPoly>& alpha) {
  const int r = static_cast<int>(alpha.size());
  LambdaPoly F(static_cast<std::size_t>(r) + 1);
  F[r] = R.one();
  for (int j = 1; j <= r; ++j) F[r - j] = alpha[j - 1];
  return F;
}

FqPoly fiber_poly(const FiniteField& K, const std::vector<FqPoly>& alpha, Elem t0) {
  FqPolyRing R(K);
  const int r = static_cast<int>(alpha.size());
  std::vector<Elem> cs(static_cast<std::size_t>(r) + 1);
  cs[r] = K.one();
  for (int j = 1; j <= r; ++j) cs[r - j] = R.eval(alpha[j - 1], t0);
  return R.from(std::move(cs));
}

// Multiplication of s-major bivariate polynomials truncated at s^B.
std::vector<FqPoly> smul(const FqPolyRing& R, const std::vector<FqPoly>& a, const std::vector<FqPoly>& b, int B) {
  std::vector<FqPoly> out(static_cast<std::size_t>(B));
  for (int i = 0; i < B && i < static_cast<int>(a.size()); ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; i + j < B && j < static_cast<int>(b.size()); ++j) {
      if (b[j].is_zero()) continue;
      out[i + j] = R.add(out[i + j], R.mul(a[i], b[j]));
    }
  }
  return out;
}

// Exact division test in K[s][lambda] by a monic divisor.
bool divides(const FqPolyRing& Rs, LambdaPoly F, const LambdaPoly& H) {
  const int dh = static_cast<int>(H.size()) - 1;
  for (int d = static_cast<int>(F.size()) - 1; d >= dh; --d) {
    if (F[d].is_zero()) continue;
    const FqPoly c = F[d];
    for (int i = 0; i <= dh; ++i) F[d - dh + i] = Rs.sub(F[d - dh + i], Rs.mul(c, H[i]));
  }
  for (int i = 0; i < dh; ++i)
    if (!F[i].is_zero()) return false;
  return true;
}

}  // namespace

FiniteField make_counting_field(std::uint64_t q, int rank) {
  FiniteField F(q);
  if (static_cast<int>(F.characteristic()) <= rank) {
    throw InvalidInput("characteristic " + std::to_string(F.characteristic()) + " must exceed the rank " +
                       std::to_string(rank));
  }
  return F;
}

std::optional<Elem> parse_position(const FiniteField& F, const std::string& label) {
  if (label == "inf" || label == "infinity") return std::nullopt;
  if (label.empty() || !std::all_of(label.begin(), label.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
    throw InvalidInput("marked point position '" + label + "' is neither 'inf' nor an element index");
  }
  if (label.size() > 12) throw InvalidInput("marked point position '" + label + "' out of range");
  const std::uint64_t v = std::stoull(label);
  if (v >= F.order()) {
    throw InvalidInput("marked point position '" + label + "' is not an element of " + F.name());
  }
  return F.element(v);
}

std::vector<MarkedSite> marked_sites(const ParabolicData& data, const FiniteField& F) {
  std::vector<MarkedSite> out;
  for (const auto& x : data.points()) out.push_back({x.position, parse_position(F, x.position), x.partition, x.mu, x.gamma});
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = i + 1; j < out.size(); ++j)
      if (out[i].position == out[j].position) {
        throw InvalidInput("marked points '" + out[i].label + "' and '" + out[j].label + "' coincide in " + F.name());
      }
  return out;
}

GlobalCharacteristic characteristic_from_coefficients(const FiniteField& F, int r, int degM,
                                                      std::vector<MarkedSite> sites, std::vector<FqPoly> alpha) {
  if (r < 1) throw InvalidInput("rank must be positive");
  if (static_cast<int>(alpha.size()) != r) throw InvalidInput("expected one coefficient polynomial per j = 1..r");
  FqPolyRing R(F);
  for (int j = 1; j <= r; ++j) {
    const auto& a = alpha[j - 1];
    if (a.degree() > j * degM) {
      throw InvalidInput("alpha_" + std::to_string(j) + " has degree above j*degM = " + std::to_string(j * degM));
    }
    for (const auto& s : sites) {
      if (s.gamma.size() != r) throw InvalidInput("level function at '" + s.label + "' does not have length r");
      const int need = s.gamma.at(j);
      if (a.is_zero()) continue;
      if (s.position) {
        const FqPoly shifted = R.taylor_shift(a, *s.position);
        for (int k = 0; k < need && k <= shifted.degree(); ++k) {
          if (!F.is_zero(shifted.c[k])) {
            throw InvalidInput("alpha_" + std::to_string(j) + " does not vanish to order " + std::to_string(need) +
                               " at '" + s.label + "'");
          }
        }
      } else if (a.degree() > j * degM - need) {
        throw InvalidInput("alpha_" + std::to_string(j) + " does not vanish to order " + std::to_string(need) +
                           " at infinity");
      }
    }
  }
  GlobalCharacteristic ch{F, r, degM, {}, {}, 0, {}, {}};
  ch.r = r;
  ch.degM = degM;
  ch.sites = std::move(sites);
  ch.alpha = std::move(alpha);
  return ch;
}

FqPoly bareiss_determinant(const FiniteField& F, std::vector<std::vector<FqPoly>> M) {
  FqPolyRing R(F);
  const std::size_t n = M.size();
  if (n == 0) return R.one();
  bool negate = false;
  FqPoly prev = R.one();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (M[k][k].is_zero()) {
      std::size_t piv = k + 1;
      while (piv < n && M[piv][k].is_zero()) ++piv;
      if (piv == n) return FqPoly{};
      std::swap(M[k], M[piv]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        M[i][j] = R.exact_div(R.sub(R.mul(M[i][j], M[k][k]), R.mul(M[i][k], M[k][j])), prev);
      }
      M[i][k] = FqPoly{};
    }
    prev = M[k][k];
  }
  return negate ? R.neg(M[n - 1][n - 1]) : M[n - 1][n - 1];
}

FqPoly discriminant(const FiniteField& F, const std::vector<FqPoly>& alpha) {
  FqPolyRing R(F);
  const int r = static_cast<int>(alpha.size());
  if (r <= 1) return R.one();
  const LambdaPoly f = lambda_form(R, alpha);
  LambdaPoly df(static_cast<std::size_t>(r));
  for (int k = 1; k <= r; ++k) df[k - 1] = R.scale(f[k], F.from_int(k));
  // Sylvester matrix of f (degree r) and f' (degree r-1), descending powers.
  const int n = 2 * r - 1;
  std::vector<std::vector<FqPoly>> S(static_cast<std::size_t>(n), std::vector<FqPoly>(static_cast<std::size_t>(n)));
  for (int row = 0; row < r - 1; ++row)
    for (int k = 0; k <= r; ++k) S[row][row + (r - k)] = f[k];
  for (int row = 0; row < r; ++row)
    for (int k = 0; k <= r - 1; ++k) S[r - 1 + row][row + (r - 1 - k)] = df[k];
  FqPoly res = bareiss_determinant(F, std::move(S));
  if ((r * (r - 1) / 2) % 2 == 1) res = R.neg(res);
  return res;
}

bool irreducible_over_extension(const FiniteField& F, const std::vector<FqPoly>& alpha, unsigned k) {
  const int r = static_cast<int>(alpha.size());
  if (r <= 1) return true;
  if (alpha[r - 1].is_zero()) return false;
  const FqPoly disc = discriminant(F, alpha);
  if (disc.is_zero()) return false;  // repeated factor

  const std::uint64_t big_degree = std::uint64_t{F.degree()} * k;
  long double size = 1;
  for (std::uint64_t i = 0; i < big_degree; ++i) size *= F.characteristic();
  if (size > static_cast<long double>(FiniteField::kMaxTableOrder)) {
    throw ResourceExhausted("irreducibility test needs " + std::to_string(F.characteristic()) + "^" +
                            std::to_string(big_degree) + " elements, above the field table limit");
  }
  FiniteField K(F.characteristic(), static_cast<unsigned>(big_degree));
  FieldEmbedding emb(F, K);
  FqPolyRing RK(K);

  std::vector<FqPoly> a;
  for (const auto& p : alpha) a.push_back(embed(RK, emb, p));
  const FqPoly discK = embed(RK, emb, disc);

  std::optional<Elem> t0;
  for (std::uint64_t i = 0; i < K.order(); ++i) {
    if (!K.is_zero(RK.eval(discK, K.element(i)))) {
      t0 = K.element(i);
      break;
    }
  }
  if (!t0) throw ComputationFailed("no separable specialization found");

  int D = 0;  // pole order bound of the roots at infinity
  for (int j = 1; j <= r; ++j)
    if (!a[j - 1].is_zero()) D = std::max(D, (a[j - 1].degree() + j - 1) / j);
  const int B = r * D + 1;

  // G(s, lambda) = F(t0 + s, lambda), s-major and lambda-major forms.
  std::vector<FqPoly> shifted;
  for (const auto& p : a) shifted.push_back(RK.taylor_shift(p, *t0));
  const LambdaPoly G = lambda_form(RK, shifted);
  std::vector<FqPoly> Gs(static_cast<std::size_t>(B));
  for (int s = 0; s < B; ++s) {
    std::vector<Elem> cs(static_cast<std::size_t>(r) + 1, K.zero());
    for (int d = 0; d <= r; ++d) cs[d] = RK.coeff(G[d], s);
    Gs[s] = RK.from(std::move(cs));
  }

  auto factors = factor(RK, Gs[0]);
  if (factors.size() <= 1) return true;
  const std::size_t nf = factors.size();

  // Linear Hensel lifting with fixed partial-fraction multipliers.
  std::vector<FqPoly> g0, inv;
  for (const auto& fa : factors) g0.push_back(fa.poly);
  for (std::size_t i = 0; i < nf; ++i) {
    FqPoly h = RK.one();
    for (std::size_t j = 0; j < nf; ++j)
      if (j != i) h = RK.mul(h, g0[j]);
    inv.push_back(RK.inverse_mod(h, g0[i]));
  }
  std::vector<std::vector<FqPoly>> lift(nf, std::vector<FqPoly>(static_cast<std::size_t>(B)));
  for (std::size_t i = 0; i < nf; ++i) lift[i][0] = g0[i];
  for (int s = 1; s < B; ++s) {
    std::vector<FqPoly> prod = lift[0];
    for (std::size_t i = 1; i < nf; ++i) prod = smul(RK, prod, lift[i], s + 1);
    const FqPoly e = RK.sub(Gs[s], prod[s]);
    if (e.is_zero()) continue;
    for (std::size_t i = 0; i < nf; ++i) lift[i][s] = RK.rem(RK.mul(e, inv[i]), g0[i]);
  }

  // A true factor over K[s] has s-degree < B, so it equals its truncated lift.
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << nf); mask += 2) {
    std::vector<FqPoly> h{RK.one()};
    for (std::size_t i = 0; i < nf; ++i)
      if (mask >> i & 1) h = smul(RK, h, lift[i], B);
    int dh = 0;
    for (const auto& c : h) dh = std::max(dh, c.degree());
    LambdaPoly H(static_cast<std::size_t>(dh) + 1);
    for (int d = 0; d <= dh; ++d) {
      std::vector<Elem> cs(static_cast<std::size_t>(B), K.zero());
      for (int s = 0; s < B && s < static_cast<int>(h.size()); ++s) cs[s] = RK.coeff(h[s], d);
      H[d] = RK.from(std::move(cs));
    }
    if (divides(RK, G, H)) return false;
  }
  return true;
}

bool is_integral(const GlobalCharacteristic& ch) { return irreducible_over_extension(ch.field, ch.alpha, 1); }

bool is_geometrically_integral(const GlobalCharacteristic& ch) {
  return irreducible_over_extension(ch.field, ch.alpha, static_cast<unsigned>(std::max(ch.r, 1)));
}

LocalEquation<FiniteField> local_equation_at(const GlobalCharacteristic& ch, std::size_t site) {
  const FiniteField& F = ch.field;
  FqPolyRing R(F);
  const auto& s = ch.sites.at(site);
  const int N = default_precision(ch.r, s.gamma);
  std::vector<TruncatedSeries<FiniteField>> cs;
  for (int l = 1; l <= ch.r; ++l) {
    const FqPoly& a = ch.alpha[l - 1];
    FqPoly local;
    if (s.position) {
      local = R.taylor_shift(a, *s.position);
    } else {
      // alpha'_l(t') = t'^{l degM} alpha_l(1/t')
      std::vector<Elem> rev(static_cast<std::size_t>(std::max(l * ch.degM, 0)) + 1, F.zero());
      for (int k = 0; k <= a.degree(); ++k) rev[l * ch.degM - k] = a.c[k];
      local = R.from(std::move(rev));
    }
    const int g = s.gamma.at(l);
    std::vector<Elem> series;
    for (int k = g; k <= local.degree() && k - g < N; ++k) series.push_back(local.c[k]);
    cs.emplace_back(F, std::move(series), N);
  }
  return local_equation_from_type(F, s.mu, std::move(cs), N);
}

void analyze_marked_points(GlobalCharacteristic& ch) {
  ch.local.clear();
  for (std::size_t i = 0; i < ch.sites.size(); ++i) ch.local.push_back(resolve(local_equation_at(ch, i)));
}

GlobalCharacteristic sample_characteristic(const ParabolicData& data, const FiniteField& F, std::uint64_t seed,
                                           std::uint64_t max_draws) {
  if (data.genus() != 0) throw InvalidInput("point counting requires a genus 0 base");
  if (static_cast<int>(F.characteristic()) <= data.rank()) {
    throw InvalidInput("characteristic must exceed the rank");
  }
  const int r = data.rank();
  const int degM = data.degree_M();
  auto sites = marked_sites(data, F);
  const auto prof = coefficient_degrees(data);
  if (prof.entries.back().degree < 0) {
    throw SamplingExhausted("no generic characteristic found (base may be too small): a_r is forced to vanish");
  }

  FqPolyRing R(F);
  std::vector<FqPoly> fixed;  // prod over finite marked x of (t - x)^{gamma_j(x)}
  for (int j = 1; j <= r; ++j) {
    FqPoly p = R.one();
    for (const auto& s : sites) {
      if (!s.position) continue;
      const FqPoly lin = R.from({F.neg(*s.position), F.one()});
      for (int k = 0; k < s.gamma.at(j); ++k) p = R.mul(p, lin);
    }
    fixed.push_back(p);
  }
  std::optional<std::size_t> inf_site;
  for (std::size_t i = 0; i < sites.size(); ++i)
    if (!sites[i].position) inf_site = i;

  std::mt19937_64 rng(seed);
  SamplingStats stats;
  while (stats.draws < max_draws) {
    ++stats.draws;
    std::vector<FqPoly> alpha;
    for (int j = 1; j <= r; ++j) {
      const std::int64_t dj = prof.entries[j - 1].degree;
      if (dj < 0) {
        alpha.emplace_back();
        continue;
      }
      std::vector<Elem> beta(static_cast<std::size_t>(dj) + 1);
      for (auto& v : beta) v = F.random(rng);
      alpha.push_back(R.mul(fixed[j - 1], R.from(std::move(beta))));
    }
    if (alpha[r - 1].is_zero()) {
      ++stats.rejected_zero_top;
      continue;
    }
    FqPoly disc = discriminant(F, alpha);
    bool disc_ok = !disc.is_zero();
    if (disc_ok && !inf_site) {
      const int ord_inf = degM * r * (r - 1) - disc.degree();
      disc_ok = ord_inf <= 1;
    }
    if (disc_ok) {
      for (const auto& s : sites) {
        if (!s.position) continue;
        const FqPoly lin = R.from({F.neg(*s.position), F.one()});
        for (;;) {
          auto [q, rem] = R.divmod(disc, lin);
          if (!rem.is_zero()) break;
          disc = std::move(q);
        }
      }
      disc_ok = is_squarefree(R, disc);
    }
    if (!disc_ok) {
      ++stats.rejected_discriminant;
      continue;
    }
    GlobalCharacteristic ch = characteristic_from_coefficients(F, r, degM, sites, std::move(alpha));
    analyze_marked_points(ch);
    if (!std::all_of(ch.local.begin(), ch.local.end(), [](const auto& res) { return res.generic; })) {
      ++stats.rejected_local;
      continue;
    }
    if (!is_integral(ch)) {
      ++stats.rejected_reducible;
      continue;
    }
    if (!is_geometrically_integral(ch)) {
      ++stats.rejected_geometric;
      continue;
    }
    ch.seed = seed;
    ch.stats = stats;
    return ch;
  }
  throw SamplingExhausted("no generic characteristic found (base may be too small) after " +
                          std::to_string(stats.draws) + " draws");
}

FiberCounter::FiberCounter(const GlobalCharacteristic& ch, unsigned m)
    : ch_(ch), m_(m), K_(ch.field.characteristic(), ch.field.degree() * m) {
  if (m == 0) throw InvalidInput("extension degree must be positive");
  if (ch.local.size() != ch.sites.size()) throw InvalidInput("marked points have not been resolved");
  FieldEmbedding emb(ch.field, K_);
  FqPolyRing RK(K_);
  for (const auto& a : ch.alpha) alpha_.push_back(embed(RK, emb, a));
  for (const auto& s : ch.sites) {
    marked_.push_back(s.position ? std::optional<Elem>(emb(*s.position)) : std::nullopt);
  }
}

int FiberCounter::distinct_roots(const FqPoly& f) const {
  FqPolyRing RK(K_);
  return count_distinct_roots(RK, f);
}

int FiberCounter::count_marked(std::size_t site) const {
  int n = 0;
  for (const auto& en : ch_.local.at(site).profile.entries)
    if (m_ % static_cast<unsigned>(en.deg) == 0) n += en.deg * en.count;
  return n;
}

int FiberCounter::count_at(Elem t0) const {
  for (std::size_t i = 0; i < marked_.size(); ++i)
    if (marked_[i] && *marked_[i] == t0) return count_marked(i);
  return distinct_roots(fiber_poly(K_, alpha_, t0));
}

int FiberCounter::count_at_infinity() const {
  for (std::size_t i = 0; i < marked_.size(); ++i)
    if (!marked_[i]) return count_marked(i);
  FqPolyRing RK(K_);
  const int r = ch_.r;
  std::vector<Elem> cs(static_cast<std::size_t>(r) + 1);
  cs[r] = K_.one();
  for (int j = 1; j <= r; ++j) cs[r - j] = RK.coeff(alpha_[j - 1], j * ch_.degM);
  return distinct_roots(RK.from(std::move(cs)));
}

std::uint64_t FiberCounter::scan_prime_field(kernels::Isa isa) const {
  const std::uint32_t p = K_.characteristic();
  const int r = ch_.r;
  std::vector<std::uint32_t> xs(p);
  for (std::uint32_t i = 0; i < p; ++i) xs[i] = i;
  // a_j(t0) for every t0 at once
  std::vector<std::vector<std::uint32_t>> vals(static_cast<std::size_t>(r), std::vector<std::uint32_t>(p));
  for (int j = 1; j <= r; ++j) {
    const auto& c = alpha_[j - 1].c;
    if (c.empty()) {
      std::fill(vals[j - 1].begin(), vals[j - 1].end(), 0u);
    } else {
      kernels::eval_poly_mod_p(isa, c, xs, vals[j - 1], p);
    }
  }
  std::vector<std::uint32_t> coeffs(static_cast<std::size_t>(r) + 1), out(p);
  std::uint64_t total = 0;
  for (std::uint32_t t0 = 0; t0 < p; ++t0) {
    bool marked = false;
    for (std::size_t i = 0; i < marked_.size(); ++i) {
      if (marked_[i] && *marked_[i] == t0) {
        total += static_cast<std::uint64_t>(count_marked(i));
        marked = true;
      }
    }
    if (marked) continue;
    coeffs[r] = 1;
    for (int j = 1; j <= r; ++j) coeffs[r - j] = vals[j - 1][t0];
    kernels::eval_poly_mod_p(isa, coeffs, xs, out, p);
    total += static_cast<std::uint64_t>(std::count(out.begin(), out.end(), 0u));
  }
  return total + static_cast<std::uint64_t>(count_at_infinity());
}

std::uint64_t FiberCounter::count_curve(CountMethod method, kernels::Isa isa) const {
  const bool scannable = K_.is_prime_field();
  if (method == CountMethod::scan && !scannable) throw InvalidInput("scan counting needs a prime field");
  if (method == CountMethod::scan || (method == CountMethod::automatic && scannable &&
                                      K_.order() <= kernels::kMaxVectorModulus)) {
    return scan_prime_field(isa);
  }
  std::uint64_t total = static_cast<std::uint64_t>(count_at_infinity());
  for (std::uint64_t i = 0; i < K_.order(); ++i) total += static_cast<std::uint64_t>(count_at(K_.element(i)));
  return total;
}

std::uint64_t count_curve(const GlobalCharacteristic& ch, unsigned m, CountMethod method) {
  return FiberCounter(ch, m).count_curve(method);
}

}  // namespace paraspec
