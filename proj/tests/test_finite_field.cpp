#include "doctest.h"

#include <paraspec/errors.hpp>
#include <paraspec/finite_field.hpp>
#include <paraspec/rational.hpp>

#include <random>

using namespace paraspec;
using Elem = FiniteField::Elem;

namespace {

// Schoolbook product of digit vectors reduced by the field modulus.
Elem slow_mul(const FiniteField& F, Elem a, Elem b) {
  const std::uint32_t p = F.characteristic();
  const unsigned k = F.degree();
  auto da = F.digits(a), db = F.digits(b);
  da.resize(k, 0);
  db.resize(k, 0);
  std::vector<std::uint64_t> prod(2 * k, 0);
  for (unsigned i = 0; i < k; ++i)
    for (unsigned j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{da[i]} * db[j]) % p;
  const auto& m = F.modulus();
  for (unsigned d = 2 * k - 1; d >= k; --d) {
    const std::uint64_t c = prod[d];
    if (c == 0) continue;
    for (unsigned i = 0; i <= k; ++i) prod[d - k + i] = (prod[d - k + i] + (p - c) * m[i]) % p;
  }
  std::vector<std::uint32_t> out(prod.begin(), prod.begin() + k);
  return F.from_digits(out);
}

}  // namespace

TEST_CASE("prime power decomposition") {
  CHECK(prime_power_decompose(9) == std::pair<std::uint32_t, unsigned>{3, 2});
  CHECK(prime_power_decompose(2) == std::pair<std::uint32_t, unsigned>{2, 1});
  CHECK(prime_power_decompose(1024) == std::pair<std::uint32_t, unsigned>{2, 10});
  CHECK_THROWS_AS(prime_power_decompose(12), InvalidInput);
  CHECK_THROWS_AS(prime_power_decompose(1), InvalidInput);
  CHECK_THROWS_AS(prime_power_decompose(0), InvalidInput);
  for (std::uint64_t n = 2; n < 200; ++n) {
    bool naive = true;
    for (std::uint64_t d = 2; d * d <= n; ++d) naive = naive && n % d != 0;
    CHECK(is_prime(n) == naive);
  }
}

TEST_CASE("field axioms by exhaustion") {
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49}) {
    CAPTURE(q);
    FiniteField F(q);
    CHECK(F.order() == q);
    const std::uint32_t p = F.characteristic();
    for (Elem a = 0; a < q; ++a) {
      CHECK(F.add(a, F.neg(a)) == 0);
      CHECK(F.pow(a, q) == a);
      if (a != 0) CHECK(F.mul(a, F.inv(a)) == 1);
      for (Elem b = 0; b < q; ++b) {
        // digit-wise addition
        auto da = F.digits(a), db = F.digits(b);
        da.resize(F.degree(), 0);
        db.resize(F.degree(), 0);
        std::vector<std::uint32_t> ds(F.degree());
        for (unsigned i = 0; i < F.degree(); ++i) ds[i] = (da[i] + db[i]) % p;
        CHECK(F.add(a, b) == F.from_digits(ds));
        CHECK(F.mul(a, b) == slow_mul(F, a, b));
      }
    }
    // generator has full order
    Elem g = F.generator(), x = g;
    std::uint64_t order = 1;
    while (x != 1) {
      x = F.mul(x, g);
      ++order;
    }
    CHECK(order == q - 1);
  }
}

TEST_CASE("zero has no inverse") {
  FiniteField F(9);
  CHECK_THROWS(F.inv(0));
}

TEST_CASE("field size cap") {
  CHECK_THROWS_AS(FiniteField(2, 23), ResourceExhausted);
  CHECK_NOTHROW(FiniteField(4194301));  // prime fields carry no tables
}

TEST_CASE("embeddings are ring homomorphisms") {
  for (auto [p, a, b] : std::vector<std::tuple<unsigned, unsigned, unsigned>>{
           {2, 1, 4}, {2, 2, 4}, {3, 1, 2}, {3, 2, 4}, {5, 2, 4}, {2, 3, 6}, {7, 1, 3}}) {
    FiniteField S(p, a), B(p, b);
    FieldEmbedding emb(S, B);
    std::mt19937_64 rng(1);
    for (int t = 0; t < 300; ++t) {
      Elem x = S.random(rng), y = S.random(rng);
      CHECK(emb(S.add(x, y)) == B.add(emb(x), emb(y)));
      CHECK(emb(S.mul(x, y)) == B.mul(emb(x), emb(y)));
    }
    CHECK(emb(1) == 1);
  }
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-4") == Rational(-4));
  CHECK_THROWS_AS(parse_rational("1/0"), InvalidInput);
  CHECK_THROWS_AS(parse_rational("abc"), InvalidInput);
  CHECK_THROWS_AS(parse_rational(""), InvalidInput);
  Integer root;
  CHECK(exact_root(Integer(625), 4, root));
  CHECK(root == 5);
  CHECK(exact_root(Integer(-27), 3, root));
  CHECK(root == -3);
  CHECK_FALSE(exact_root(Integer(26), 3, root));
}
