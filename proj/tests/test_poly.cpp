#include "doctest.h"

#include <paraspec/poly_factor.hpp>

#include <random>

using namespace paraspec;
using Elem = FiniteField::Elem;

namespace {

FqPoly random_poly(const FiniteField& F, int deg, std::mt19937_64& rng, bool monic = true) {
  std::vector<Elem> c(static_cast<std::size_t>(deg) + 1);
  for (auto& v : c) v = F.random(rng);
  if (monic) c.back() = 1;
  return FqPolyRing(F).from(c);
}

int brute_roots(const FiniteField& F, const FqPoly& f) {
  FqPolyRing R(F);
  int n = 0;
  for (std::uint64_t i = 0; i < F.order(); ++i) n += F.is_zero(R.eval(f, F.element(i))) ? 1 : 0;
  return n;
}

// Number of monic irreducibles of degree d over F_q by Moebius inversion.
long necklace(long q, int d) {
  auto mobius = [](int n) {
    int m = 1;
    for (int p = 2; p * p <= n; ++p) {
      if (n % p == 0) {
        n /= p;
        if (n % p == 0) return 0;
        m = -m;
      }
    }
    return n > 1 ? -m : m;
  };
  long s = 0;
  for (int e = 1; e <= d; ++e) {
    if (d % e) continue;
    long pw = 1;
    for (int i = 0; i < d / e; ++i) pw *= q;
    s += mobius(e) * pw;
  }
  return s / d;
}

QPoly qpoly(std::initializer_list<long> c) {
  static RationalField Q;
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return QPolyRing(Q).from(v);
}

}  // namespace

TEST_CASE("division, gcd and Bezout over finite fields") {
  std::mt19937_64 rng(7);
  for (std::uint64_t q : {2, 5, 9, 16}) {
    FiniteField F(q);
    FqPolyRing R(F);
    for (int t = 0; t < 50; ++t) {
      auto a = random_poly(F, 1 + static_cast<int>(rng() % 8), rng);
      auto b = random_poly(F, 1 + static_cast<int>(rng() % 5), rng);
      auto [qq, r] = R.divmod(a, b);
      CHECK(R.add(R.mul(qq, b), r) == a);
      CHECK(r.degree() < b.degree());
      auto eg = R.ext_gcd(a, b);
      CHECK(R.add(R.mul(eg.s, a), R.mul(eg.t, b)) == eg.g);
      CHECK(eg.g == R.gcd(a, b));
      CHECK(R.rem(a, eg.g).is_zero());
      Elem s = F.random(rng);
      auto sh = R.taylor_shift(a, s);
      for (int k = 0; k < 5; ++k) {
        Elem x = F.random(rng);
        CHECK(R.eval(sh, x) == R.eval(a, F.add(x, s)));
      }
    }
  }
}

TEST_CASE("root counts agree with evaluation") {
  std::mt19937_64 rng(11);
  for (std::uint64_t q : {2, 3, 4, 7, 8, 25}) {
    FiniteField F(q);
    FqPolyRing R(F);
    for (int t = 0; t < 40; ++t) {
      auto f = random_poly(F, 1 + static_cast<int>(rng() % 7), rng);
      CHECK(count_distinct_roots(R, f) == brute_roots(F, f));
    }
  }
}

TEST_CASE("factorization reproduces the polynomial") {
  std::mt19937_64 rng(3);
  for (std::uint64_t q : {2, 3, 4, 5, 9, 27}) {
    FiniteField F(q);
    FqPolyRing R(F);
    for (int t = 0; t < 30; ++t) {
      auto a = random_poly(F, 1 + static_cast<int>(rng() % 4), rng);
      auto b = random_poly(F, 1 + static_cast<int>(rng() % 4), rng);
      auto f = R.mul(R.mul(a, a), b);
      auto fs = factor(R, f);
      FqPoly prod = R.one();
      for (const auto& fa : fs) {
        CHECK(fa.poly.lead() == 1);
        CHECK(irreducible_factor_degrees(R, fa.poly) == std::vector<int>{fa.poly.degree()});
        for (int m = 0; m < fa.multiplicity; ++m) prod = R.mul(prod, fa.poly);
      }
      CHECK(prod == f);
    }
  }
}

TEST_CASE("irreducible counts match the necklace formula") {
  for (auto [q, d] : std::vector<std::pair<std::uint64_t, int>>{{2, 1}, {2, 2}, {2, 3}, {2, 4}, {2, 5},
                                                                {3, 2}, {3, 3}, {4, 2}, {5, 2}}) {
    FiniteField F(q);
    FqPolyRing R(F);
    long total = 1;
    for (int i = 0; i < d; ++i) total *= static_cast<long>(q);
    long irr = 0;
    for (long idx = 0; idx < total; ++idx) {
      std::vector<Elem> c(static_cast<std::size_t>(d) + 1, 1);
      long v = idx;
      for (int i = 0; i < d; ++i) {
        c[i] = static_cast<Elem>(v % static_cast<long>(q));
        v /= static_cast<long>(q);
      }
      auto f = R.from(c);
      if (irreducible_factor_degrees(R, f) == std::vector<int>{d} && factor(R, f).size() == 1 &&
          factor(R, f)[0].multiplicity == 1)
        ++irr;
    }
    CAPTURE(q);
    CAPTURE(d);
    CHECK(irr == necklace(static_cast<long>(q), d));
  }
}

TEST_CASE("factorization over the rationals") {
  RationalField Q;
  QPolyRing R(Q);
  SUBCASE("cyclotomic x^12 - 1") {
    auto f = qpoly({-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1});
    auto degs = irreducible_factor_degrees(R, f);
    CHECK(degs == std::vector<int>{1, 1, 2, 2, 2, 4});
  }
  SUBCASE("x^4 + 1 is irreducible") {
    CHECK(irreducible_factor_degrees(R, qpoly({1, 0, 0, 0, 1})) == std::vector<int>{4});
  }
  SUBCASE("x^4 - 10x^2 + 1 is irreducible") {
    CHECK(irreducible_factor_degrees(R, qpoly({1, 0, -10, 0, 1})) == std::vector<int>{4});
  }
  SUBCASE("repeated and rational factors") {
    auto a = qpoly({-2, 0, 1});
    auto b = qpoly({1, 1, 0, 1});
    auto c = R.from({Rational(-1, 2), Rational(1)});
    auto f = R.scale(R.mul(R.mul(a, b), R.mul(c, c)), Rational(3, 7));
    auto fs = factor(R, f);
    REQUIRE(fs.size() == 3);
    QPoly prod = R.one();
    for (const auto& fa : fs)
      for (int m = 0; m < fa.multiplicity; ++m) prod = R.mul(prod, fa.poly);
    CHECK(prod == R.monic(f));
    CHECK_FALSE(is_squarefree(R, f));
    CHECK(is_squarefree(R, R.mul(a, b)));
  }
  SUBCASE("large coefficients") {
    auto a = qpoly({123456, -98765, 1});
    auto b = qpoly({-7777, 0, 3, 1});
    auto d = qpoly({1, 1, 1, 1, 1});
    auto f = R.mul(R.mul(a, b), d);
    auto degs = irreducible_factor_degrees(R, f);
    std::vector<int> expected = irreducible_factor_degrees(R, a);
    for (int v : irreducible_factor_degrees(R, b)) expected.push_back(v);
    expected.push_back(4);
    std::sort(expected.begin(), expected.end());
    CHECK(degs == expected);
  }
}
