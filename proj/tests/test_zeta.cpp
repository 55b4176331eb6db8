#include "doctest.h"

#include <paraspec/errors.hpp>
#include <paraspec/zeta.hpp>

using namespace paraspec;

namespace {
std::vector<Integer> ints(std::initializer_list<long> v) {
  std::vector<Integer> out;
  for (long x : v) out.emplace_back(x);
  return out;
}
}  // namespace

TEST_CASE("zeta fits") {
  auto L = zeta_fit(ints({8}), 5, 1);
  CHECK(L.b == ints({1, 2, 5}));
  CHECK(L.to_string() == "1 + 2*T + 5*T^2");
  CHECK(zeta_fit({}, 5, 0).b == ints({1}));
  CHECK(zeta_fit(ints({6}), 5, 1).b == ints({1, 0, 5}));
  CHECK_THROWS_AS(zeta_fit(ints({8, 30}), 5, 1), ComputationFailed);
  CHECK(zeta_fit(ints({8, 32}), 5, 1).b == ints({1, 2, 5}));
}

TEST_CASE("predicted counts invert the fit") {
  // product of two genus one factors over GF(7)
  LPolynomial L{ints({1, 3, 16, 21, 49})};  // (1 + T + 7T^2)(1 + 2T + 7T^2)
  CHECK(functional_equation_holds(L, 7));
  auto counts = predicted_counts(L, 7, 4);
  CHECK(zeta_fit(counts, 7, 2).b == L.b);
  CHECK(infer_genus(counts, 7, 3) == 2);
  CHECK(weil_check(counts, 2, 7));
}

TEST_CASE("class numbers and Weil bound") {
  CHECK(class_numbers(LPolynomial{ints({1, 2, 5})}, LPolynomial{ints({1})}).h_jac == 8);
  CHECK(class_numbers(LPolynomial{ints({1})}, LPolynomial{ints({1})}).h_prym == 1);
  CHECK(class_numbers(LPolynomial{ints({1, 0, 5})}, LPolynomial{ints({1})}).h_jac == 6);
  CHECK_THROWS_AS(class_numbers(LPolynomial{ints({1, 2, 5})}, LPolynomial{ints({1, 2})}), ComputationFailed);
  CHECK(weil_check(ints({8}), 1, 5));
  CHECK(weil_check(ints({6}), 3, 5));
  CHECK_FALSE(weil_check(ints({5 + 2 + 5}), 1, 5));  // q + 2 + ceil(2 sqrt q)
}
