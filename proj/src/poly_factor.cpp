#include "paraspec/poly_factor.hpp"

#include <algorithm>
#include <bit>

namespace paraspec {

// ---- finite fields ----------------------------------------------------------

bool is_squarefree(const FqPolyRing& R, const FqPoly& f) {
  if (f.degree() <= 0) return true;
  FqPoly d = R.derivative(f);
  if (d.is_zero()) return false;
  return R.gcd(f, d).degree() == 0;
}

FqPoly radical(const FqPolyRing& R, const FqPoly& f) {
  if (f.degree() <= 0) return R.monic(f);
  const FiniteField& F = R.field();
  FqPoly d = R.derivative(f);
  if (d.is_zero()) {
    // f = h(x)^p with h obtained from coefficient p-th roots.
    const std::uint32_t p = F.characteristic();
    const std::uint64_t root_exp = F.order() / p;
    std::vector<FiniteField::Elem> hc;
    for (int i = 0; i <= f.degree(); i += static_cast<int>(p)) hc.push_back(F.pow(f.c[i], root_exp));
    return radical(R, R.from(std::move(hc)));
  }
  const FqPoly g = R.gcd(f, d);
  const FqPoly w = R.monic(R.quo(f, g));
  if (g.degree() == 0) return w;
  const FqPoly rg = radical(R, g);
  return R.monic(R.quo(R.mul(w, rg), R.gcd(w, rg)));
}

std::vector<std::pair<int, FqPoly>> distinct_degree_factorization(const FqPolyRing& R, FqPoly f) {
  std::vector<std::pair<int, FqPoly>> out;
  f = R.monic(f);
  const std::uint64_t q = R.field().order();
  const FqPoly x = R.x();
  FqPoly h = R.rem(x, f);
  for (int d = 1; 2 * d <= f.degree(); ++d) {
    h = R.powmod(h, q, f);
    FqPoly g = R.gcd(f, R.sub(h, x));
    if (g.degree() > 0) {
      out.emplace_back(d, g);
      f = R.quo(f, g);
      h = R.rem(h, f);
    }
  }
  if (f.degree() > 0) out.emplace_back(f.degree(), f);
  return out;
}

std::vector<FqPoly> equal_degree_factorization(const FqPolyRing& R, const FqPoly& f, int d,
                                               std::mt19937_64& rng) {
  const FiniteField& F = R.field();
  const int n = f.degree();
  if (n <= d) return {R.monic(f)};
  const int target = n / d;

  Integer qd;
  mpz_ui_pow_ui(qd.get_mpz_t(), F.order(), static_cast<unsigned long>(d));
  const Integer half = (qd - 1) / 2;

  std::vector<FqPoly> pending{R.monic(f)};
  std::vector<FqPoly> done;
  while (!pending.empty()) {
    FqPoly g = std::move(pending.back());
    pending.pop_back();
    if (g.degree() == d) {
      done.push_back(std::move(g));
      continue;
    }
    for (;;) {
      std::vector<FiniteField::Elem> cs(static_cast<std::size_t>(g.degree()));
      for (auto& v : cs) v = F.random(rng);
      FqPoly a = R.from(std::move(cs));
      if (a.degree() <= 0) continue;
      FqPoly b;
      if (F.characteristic() == 2) {
        // Absolute trace a + a^2 + ... + a^(2^(k d - 1)).
        const unsigned steps = F.degree() * static_cast<unsigned>(d);
        FqPoly term = R.rem(a, g);
        b = term;
        for (unsigned i = 1; i < steps; ++i) {
          term = R.rem(R.mul(term, term), g);
          b = R.add(b, term);
        }
      } else {
        b = R.sub(R.powmod(a, half, g), R.one());
      }
      FqPoly s = R.gcd(g, b);
      if (s.degree() > 0 && s.degree() < g.degree()) {
        pending.push_back(R.quo(g, s));
        pending.push_back(std::move(s));
        break;
      }
    }
  }
  if (static_cast<int>(done.size()) != target) throw ComputationFailed("equal-degree factorization mismatch");
  return done;
}

std::vector<Factor<FiniteField>> factor(const FqPolyRing& R, const FqPoly& f, std::uint64_t seed) {
  std::vector<Factor<FiniteField>> out;
  if (f.degree() <= 0) return out;
  std::mt19937_64 rng(seed);
  const FqPoly rad = radical(R, f);
  for (auto& [d, g] : distinct_degree_factorization(R, rad)) {
    for (auto& h : equal_degree_factorization(R, g, d, rng)) {
      int mult = 0;
      FqPoly rest = f;
      for (;;) {
        auto [q, r] = R.divmod(rest, h);
        if (!r.is_zero()) break;
        rest = std::move(q);
        ++mult;
      }
      out.push_back({h, mult});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.poly.degree() != b.poly.degree()) return a.poly.degree() < b.poly.degree();
    return a.poly.c < b.poly.c;
  });
  return out;
}

std::vector<int> irreducible_factor_degrees(const FqPolyRing& R, const FqPoly& f) {
  std::vector<int> out;
  if (f.degree() <= 0) return out;
  for (auto& [d, g] : distinct_degree_factorization(R, radical(R, f))) {
    for (int i = 0; i < g.degree() / d; ++i) out.push_back(d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int count_distinct_roots(const FqPolyRing& R, const FqPoly& f) {
  if (f.degree() <= 0) return 0;
  const FqPoly x = R.x();
  FqPoly h = R.powmod(x, R.field().order(), f);
  return R.gcd(f, R.sub(h, x)).degree();
}

// ---- integers / rationals ----------------------------------------------------

namespace {

void ztrim(ZPoly& a) {
  while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  ztrim(out);
  return out;
}

void zmod(ZPoly& a, const Integer& m) {
  for (auto& v : a) {
    v %= m;
    if (sgn(v) < 0) v += m;
  }
  ztrim(a);
}

void zsymmetric(ZPoly& a, const Integer& m) {
  zmod(a, m);
  const Integer half = m / 2;
  for (auto& v : a) {
    if (v > half) v -= m;
  }
  ztrim(a);
}

ZPoly zsub(const ZPoly& a, const ZPoly& b) {
  ZPoly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  ztrim(out);
  return out;
}

// Division by a monic divisor over Z; returns false on a nonzero remainder.
bool zdiv_monic(const ZPoly& a, const ZPoly& b, ZPoly& quotient) {
  ZPoly r = a;
  const int db = static_cast<int>(b.size()) - 1;
  if (static_cast<int>(r.size()) - 1 < db) {
    quotient.clear();
    return r.empty();
  }
  quotient.assign(r.size() - b.size() + 1, 0);
  for (int i = static_cast<int>(r.size()) - 1; i >= db; --i) {
    Integer coef = r[i];
    if (sgn(coef) == 0) continue;
    quotient[i - db] = coef;
    for (int j = 0; j <= db; ++j) r[i - db + j] -= coef * b[j];
  }
  ztrim(r);
  ztrim(quotient);
  return r.empty();
}

FqPoly to_fp(const FqPolyRing& R, const ZPoly& a) {
  const std::uint32_t p = R.field().characteristic();
  std::vector<FiniteField::Elem> cs(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    Integer r = a[i] % p;
    if (sgn(r) < 0) r += p;
    cs[i] = static_cast<FiniteField::Elem>(r.get_ui());
  }
  return R.from(std::move(cs));
}

ZPoly from_fp(const FqPoly& a) {
  ZPoly out(a.c.size());
  for (std::size_t i = 0; i < a.c.size(); ++i) out[i] = static_cast<unsigned long>(a.c[i]);
  return out;
}

ZPoly zadd_scaled(const ZPoly& a, const ZPoly& b, const Integer& s) {
  ZPoly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += s * b[i];
  ztrim(out);
  return out;
}

// Lifts T = g*h (mod p), g and h monic and coprime mod p, to T = G*H mod p^a.
std::pair<ZPoly, ZPoly> hensel_lift_pair(const FqPolyRing& R, const ZPoly& target, const FqPoly& g,
                                         const FqPoly& h, unsigned a) {
  const std::uint32_t p = R.field().characteristic();
  auto eg = R.ext_gcd(g, h);
  if (eg.g.degree() != 0) throw ComputationFailed("Hensel lifting requires coprime factors");
  ZPoly G = from_fp(g), H = from_fp(h);
  Integer pj = p;
  for (unsigned j = 1; j < a; ++j) {
    const Integer pj1 = pj * p;
    ZPoly E = zsub(target, zmul(G, H));
    zmod(E, pj1);
    for (auto& v : E) v /= pj;
    const FqPoly e = to_fp(R, E);
    const FqPoly A = R.rem(R.mul(eg.t, e), g);
    const FqPoly B = R.exact_div(R.sub(e, R.mul(A, h)), g);
    G = zadd_scaled(G, from_fp(A), pj);
    H = zadd_scaled(H, from_fp(B), pj);
    pj = pj1;
  }
  zmod(G, pj);
  zmod(H, pj);
  return {G, H};
}

std::vector<ZPoly> hensel_lift_all(const FqPolyRing& R, const ZPoly& target, std::vector<FqPoly> factors,
                                   unsigned a) {
  if (factors.size() == 1) return {target};
  FqPoly rest = R.one();
  for (std::size_t i = 1; i < factors.size(); ++i) rest = R.mul(rest, factors[i]);
  auto [G, H] = hensel_lift_pair(R, target, factors[0], rest, a);
  std::vector<ZPoly> out{G};
  factors.erase(factors.begin());
  auto tail = hensel_lift_all(R, H, std::move(factors), a);
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

}  // namespace

std::vector<ZPoly> factor_squarefree_integer(const ZPoly& input) {
  ZPoly f = input;
  ztrim(f);
  const int n = static_cast<int>(f.size()) - 1;
  if (n <= 1) return {f};

  const Integer lc = f[n];
  ZPoly F(f.size());
  {
    Integer scale = 1;  // lc^(n-1-i), built from the top
    for (int i = n - 1; i >= 0; --i) {
      F[i] = f[i] * scale;
      scale *= lc;
    }
    F[n] = 1;
  }

  std::uint32_t p = 3;
  std::vector<FqPoly> modular;
  for (;; p += 2) {
    if (!is_prime(p)) continue;
    FiniteField Fp(p, 1);
    FqPolyRing R(Fp);
    FqPoly Fbar = to_fp(R, F);
    if (!is_squarefree(R, Fbar)) continue;
    for (auto& fac : factor(R, Fbar)) modular.push_back(fac.poly);
    break;
  }
  if (modular.size() == 1) return {f};

  Integer norm2 = 0;
  for (auto& v : F) norm2 += v * v;
  Integer norm = sqrt(norm2) + 1;
  Integer bound = 2 * (norm << static_cast<unsigned>(n)) + 1;
  unsigned a = 1;
  Integer pa = p;
  while (pa <= bound) {
    pa *= p;
    ++a;
  }

  FiniteField Fp(p, 1);
  FqPolyRing R(Fp);
  std::vector<ZPoly> lifted = hensel_lift_all(R, F, modular, a);

  std::vector<ZPoly> monic_factors;
  ZPoly rest = F;
  std::size_t k = 1;
  while (2 * k <= lifted.size()) {
    bool found = false;
    const std::size_t m = lifted.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m) && !found; ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) != k) continue;
      ZPoly G{1};
      for (std::size_t i = 0; i < m; ++i) {
        if (mask >> i & 1) {
          G = zmul(G, lifted[i]);
          zmod(G, pa);
        }
      }
      zsymmetric(G, pa);
      ZPoly quotient;
      if (!G.empty() && G.back() == 1 && zdiv_monic(rest, G, quotient)) {
        monic_factors.push_back(G);
        rest = quotient;
        std::vector<ZPoly> kept;
        for (std::size_t i = 0; i < m; ++i) {
          if (!(mask >> i & 1)) kept.push_back(lifted[i]);
        }
        lifted = std::move(kept);
        found = true;
      }
    }
    if (!found) ++k;
  }
  if (rest.size() > 1) monic_factors.push_back(rest);

  std::vector<ZPoly> out;
  for (auto& G : monic_factors) {
    ZPoly g(G.size());
    Integer pw = 1;
    for (std::size_t i = 0; i < G.size(); ++i) {
      g[i] = G[i] * pw;
      pw *= lc;
    }
    Integer content = 0;
    for (auto& v : g) content = gcd(content, v);
    for (auto& v : g) v /= content;
    if (sgn(g.back()) < 0) {
      for (auto& v : g) v = -v;
    }
    out.push_back(std::move(g));
  }
  return out;
}

ZPoly primitive_integer_part(const QPoly& f) {
  Integer den = 1;
  for (auto& v : f.c) den = lcm(den, Integer(v.get_den()));
  ZPoly out(f.c.size());
  for (std::size_t i = 0; i < f.c.size(); ++i) {
    Rational s = f.c[i] * den;
    out[i] = s.get_num();
  }
  Integer content = 0;
  for (auto& v : out) content = gcd(content, v);
  if (sgn(content) != 0) {
    for (auto& v : out) v /= content;
  }
  if (!out.empty() && sgn(out.back()) < 0) {
    for (auto& v : out) v = -v;
  }
  return out;
}

bool is_squarefree(const QPolyRing& R, const QPoly& f) {
  if (f.degree() <= 0) return true;
  return R.gcd(f, R.derivative(f)).degree() == 0;
}

std::vector<Factor<RationalField>> factor(const QPolyRing& R, const QPoly& f, std::uint64_t) {
  std::vector<Factor<RationalField>> out;
  if (f.degree() <= 0) return out;
  // Yun's squarefree decomposition (characteristic zero).
  QPoly fm = R.monic(f);
  QPoly a0 = R.gcd(fm, R.derivative(fm));
  QPoly b = R.quo(fm, a0);
  QPoly c = R.quo(R.derivative(fm), a0);
  QPoly d = R.sub(c, R.derivative(b));
  for (int i = 1; b.degree() > 0; ++i) {
    QPoly a = R.gcd(b, d);
    b = R.quo(b, a);
    c = R.quo(d, a);
    d = R.sub(c, R.derivative(b));
    if (a.degree() <= 0) continue;
    for (auto& z : factor_squarefree_integer(primitive_integer_part(a))) {
      std::vector<Rational> cs(z.begin(), z.end());
      out.push_back({R.monic(R.from(std::move(cs))), i});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.poly.degree() != y.poly.degree()) return x.poly.degree() < y.poly.degree();
    return x.poly.c < y.poly.c;
  });
  return out;
}

std::vector<int> irreducible_factor_degrees(const QPolyRing& R, const QPoly& f) {
  std::vector<int> out;
  for (auto& fac : factor(R, f)) out.push_back(fac.poly.degree());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace paraspec
