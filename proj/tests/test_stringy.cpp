#include "doctest.h"

#include <cmath>
#include <complex>
#include <numeric>
#include <random>

#include <paraspec/cyclotomic.hpp>
#include <paraspec/errors.hpp>
#include <paraspec/poly.hpp>
#include <paraspec/stringy.hpp>

using namespace paraspec;

namespace {

using Complex = std::complex<long double>;

Complex numeric(const Cyclotomic& z) {
  const long double pi = std::acos(-1.0L);
  Complex acc = 0;
  for (std::size_t k = 0; k < z.coefficients().size(); ++k) {
    acc += static_cast<long double>(z.coefficients()[k].get_d()) *
           std::polar(1.0L, 2 * pi * static_cast<long double>(k) / z.conductor());
  }
  return acc;
}

long euler_phi(long n) {
  long count = 0;
  for (long k = 1; k <= n; ++k) count += std::gcd(k, n) == 1;
  return count;
}

EPolynomial epoly(std::initializer_list<std::tuple<long, long, long>> terms) {
  EPolynomial e;
  for (auto [p, q, c] : terms) e.add_term(p, q, c);
  return e;
}

CountPolynomial counts(std::initializer_list<std::pair<long, long>> terms) {
  CountPolynomial c;
  for (auto [e, v] : terms) c[Rational(e)] = v;
  return c;
}

// Z/2 acting on the affine plane by negation.
OrbifoldDescription plane_mod_sign() {
  OrbifoldDescription d;
  d.ambient_dim = 2;
  d.group = {{"id", 1}, {"-1", 2}};
  SectorComponent plane{"plane", epoly({{2, 2, 1}}), epoly({{2, 2, 1}}), counts({{2, 1}}), {0, 0}, RootOfUnity{0, 1}};
  SectorComponent origin{"origin", epoly({{0, 0, 1}}), EPolynomial{}, counts({{0, 1}}), {1, 1}, RootOfUnity{1, 2}};
  d.sectors["id"] = {plane};
  d.sectors["-1"] = {origin};
  return d;
}

}  // namespace

TEST_CASE("cyclotomic polynomials have Euler phi degree and vanish at primitive roots") {
  for (long n = 1; n <= 200; ++n) {
    auto phi = cyclotomic_polynomial(n);
    CHECK(static_cast<long>(phi.size()) - 1 == euler_phi(n));
    CHECK(phi.back() == 1);
  }
  const RationalField Q;
  const PolyRing<RationalField> R(Q);
  for (long n = 1; n <= 60; ++n) {
    auto prod = R.one();
    for (long d = 1; d <= n; ++d)
      if (n % d == 0) prod = R.mul(prod, R.from(cyclotomic_polynomial(d)));
    CHECK(prod == R.sub(R.monomial(Rational(1), static_cast<int>(n)), R.one()));
  }
  CHECK(cyclotomic_polynomial(4) == std::vector<Rational>{1, 0, 1});
  CHECK(cyclotomic_polynomial(6) == std::vector<Rational>{1, -1, 1});
  CHECK(cyclotomic_polynomial(12) == std::vector<Rational>{1, 0, -1, 0, 1});
}

TEST_CASE("cyclotomic arithmetic agrees with complex evaluation") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    auto random_value = [&] {
      Cyclotomic z;
      for (int t = 0; t < 3; ++t) {
        static const long orders[] = {1, 2, 3, 4, 5, 6, 8, 10, 12};  // conductors up to 120
        const long order = orders[rng() % std::size(orders)];
        const long num = static_cast<long>(rng() % 30) - 15;
        z += Cyclotomic(Rational(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 3))) *
             Cyclotomic::root_of_unity(num, order);
      }
      return z;
    };
    const Cyclotomic a = random_value(), b = random_value();
    CHECK(std::abs(numeric(a + b) - (numeric(a) + numeric(b))) < 1e-9L);
    CHECK(std::abs(numeric(a * b) - numeric(a) * numeric(b)) < 1e-9L);
    CHECK(std::abs(numeric(a.conjugate()) - std::conj(numeric(a))) < 1e-9L);
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("roots of unity form a compatible system") {
  CHECK(Cyclotomic::root_of_unity(3, 6) == Cyclotomic(Rational(-1)));
  CHECK(Cyclotomic::root_of_unity(2, 8) == Cyclotomic::root_of_unity(1, 4));
  CHECK(Cyclotomic::root_of_unity(1, 4) * Cyclotomic::root_of_unity(1, 4) == Cyclotomic(Rational(-1)));
  CHECK(Cyclotomic::root_of_unity(-1, 3) == Cyclotomic::root_of_unity(2, 3));
  CHECK((Cyclotomic::root_of_unity(1, 3) + Cyclotomic::root_of_unity(2, 3)) == Cyclotomic(Rational(-1)));
  CHECK(Cyclotomic::root_of_unity(1, 4).to_string() == "zeta4");
  CHECK_FALSE(Cyclotomic::root_of_unity(1, 4).is_real());
  CHECK((Cyclotomic::root_of_unity(1, 5) + Cyclotomic::root_of_unity(4, 5)).is_real());
  CHECK_THROWS_AS(Cyclotomic::root_of_unity(1, 4).rational_value(), InvalidInput);
}

TEST_CASE("fermionic shift") {
  CHECK(fermionic_shift({1, 1}, 2) == 1);
  CHECK(fermionic_shift({0, 0, 0}, 5) == 0);
  CHECK(fermionic_shift({1, 3}, 4) == 1);
  CHECK(fermionic_shift({1}, 2) == Rational(1, 2));
  CHECK_THROWS_AS(fermionic_shift({2}, 2), InvalidInput);
  CHECK_THROWS_AS(fermionic_shift({-1}, 3), InvalidInput);
}

TEST_CASE("E-polynomial arithmetic") {
  auto a = epoly({{1, 0, 1}, {0, 1, 1}});
  auto sq = a * a;
  CHECK(sq == epoly({{2, 0, 1}, {1, 1, 2}, {0, 2, 1}}));
  CHECK((a + epoly({{1, 0, -1}})) == epoly({{0, 1, 1}}));
  EPolynomial half;
  half.add_term(Rational(1, 2), Rational(1, 2), 3);
  CHECK(half.to_string() == "3*u^(1/2)*v^(1/2)");
  CHECK(half.evaluate_diagonal(7) == 21);
  CHECK(half.shifted(Rational(1, 2)) == epoly({{1, 1, 3}}));
  CHECK(epoly({{2, 2, 1}, {1, 1, 1}}).to_string() == "u^2*v^2 + u*v");
}

TEST_CASE("stringy E-polynomials") {
  auto d = plane_mod_sign();
  CHECK(stringy_E(d) == epoly({{2, 2, 1}, {1, 1, 1}}));
  CHECK(stringy_E_twisted(d) == epoly({{2, 2, 1}}));

  OrbifoldDescription trivial;
  trivial.ambient_dim = 2;
  trivial.group = {{"e", 1}};
  trivial.sectors["e"] = {d.sectors["id"][0]};
  CHECK(stringy_E(trivial) == epoly({{2, 2, 1}}));

  OrbifoldDescription point;
  point.ambient_dim = 0;
  point.group = {{"e", 1}, {"g", 2}};
  point.sectors["e"] = {SectorComponent{"pt", epoly({{0, 0, 1}}), std::nullopt, counts({{0, 1}}), {}, std::nullopt}};
  point.sectors["g"] = point.sectors["e"];
  CHECK(stringy_E(point) == epoly({{0, 0, 2}}));

  // empty non-identity sectors leave the identity contribution
  auto only_id = d;
  only_id.sectors["-1"].clear();
  CHECK(stringy_E(only_id) == epoly({{2, 2, 1}}));

  auto missing = d;
  missing.sectors["-1"][0].e_poly.reset();
  CHECK_THROWS_WITH_AS(stringy_E(missing), doctest::Contains("origin"), InvalidInput);
}

TEST_CASE("stringy point counts") {
  auto d = plane_mod_sign();
  CHECK(to_string(stringy_count(d)) == "q^2 + q");
  CHECK(stringy_count_at(d, 9) == Cyclotomic(Rational(90)));
  CHECK(to_string(stringy_count_twisted(d)) == "q^2 - q");
  for (long q : {2, 3, 4, 5, 7, 9}) {
    CHECK(stringy_count_twisted_at(d, q) == Cyclotomic(Rational(q * q - q)));
    CHECK(stringy_count_twisted_at(d, q).is_real());
  }

  auto untwisted_traces = d;
  for (auto& [g, comps] : untwisted_traces.sectors)
    for (auto& c : comps) c.twist_trace = RootOfUnity{0, 1};
  CHECK(stringy_count_twisted(untwisted_traces) == stringy_count(untwisted_traces));

  // an extra order-four sector with count q and trace i
  auto extra = d;
  extra.group.push_back({"g4", 4});
  extra.sectors["g4"] = {SectorComponent{"line", std::nullopt, std::nullopt, counts({{1, 1}}), {0, 0},
                                         RootOfUnity{1, 4}}};
  auto without_minus = extra;
  without_minus.sectors.erase("-1");
  const auto value = stringy_count_twisted_at(without_minus, 5);
  CHECK(value == Cyclotomic(Rational(25)) + Cyclotomic(Rational(5)) * Cyclotomic::root_of_unity(1, 4));
  CHECK(value.to_string() == "25 + 5*zeta4");
  CHECK_FALSE(value.is_real());

  auto no_trace = d;
  no_trace.sectors["-1"][0].twist_trace.reset();
  CHECK_THROWS_WITH_AS(stringy_count_twisted(no_trace), doctest::Contains("trace"), InvalidInput);
}

TEST_CASE("fractional exponents need perfect powers") {
  OrbifoldDescription d;
  d.ambient_dim = 1;
  d.group = {{"e", 1}, {"s", 2}};
  d.sectors["e"] = {SectorComponent{"line", epoly({{1, 1, 1}}), std::nullopt, counts({{1, 1}}), {0}, std::nullopt}};
  d.sectors["s"] = {SectorComponent{"origin", epoly({{0, 0, 1}}), std::nullopt, counts({{0, 1}}), {1}, std::nullopt}};
  CHECK(to_string(stringy_count(d)) == "q + q^(1/2)");
  CHECK(stringy_count_at(d, 9) == Cyclotomic(Rational(12)));
  CHECK_THROWS_WITH_AS(stringy_count_at(d, 5), doctest::Contains("perfect power"), InvalidInput);
  for (long q : {2, 3, 4, 5}) CHECK(weight_consistency(d, q));
}

TEST_CASE("weight consistency") {
  auto d = plane_mod_sign();
  for (long q : {2, 3, 4, 5}) CHECK(weight_consistency(d, q));
  auto corrupted = d;
  (*corrupted.sectors["id"][0].count)[Rational(2)] = 2;
  CHECK_FALSE(weight_consistency(corrupted, 3));
}

TEST_CASE("description validation") {
  auto d = plane_mod_sign();
  d.sectors["-1"][0].eigen_exponents = {1};
  d.group.push_back({"id", 1});
  try {
    d.validate();
    FAIL("expected validation failure");
  } catch (const InvalidInput& e) {
    const std::string msg = e.what();
    CHECK(msg.find("duplicate") != std::string::npos);
    CHECK(msg.find("eigen exponents") != std::string::npos);
    CHECK(msg.find("identity") != std::string::npos);
  }
  auto bad_identity = plane_mod_sign();
  bad_identity.sectors["id"][0].eigen_exponents = {0, 1};
  CHECK_THROWS_AS(bad_identity.validate(), InvalidInput);
  auto unknown = plane_mod_sign();
  unknown.sectors["x"] = {};
  CHECK_THROWS_WITH_AS(unknown.validate(), doctest::Contains("names no group element"), InvalidInput);
}
