#include "doctest.h"

#include <paraspec/kernels.hpp>

#include <random>
#include <vector>

using namespace paraspec::kernels;

namespace {

std::vector<std::uint32_t> naive(const std::vector<std::uint32_t>& c, const std::vector<std::uint32_t>& xs,
                                 std::uint32_t p) {
  std::vector<std::uint32_t> out;
  for (auto x : xs) {
    std::uint64_t acc = 0, pw = 1;
    for (auto v : c) {
      acc = (acc + v * pw) % p;
      pw = pw * x % p;
    }
    out.push_back(static_cast<std::uint32_t>(acc));
  }
  return out;
}

}  // namespace

TEST_CASE("scalar kernel matches direct evaluation") {
  std::mt19937_64 rng(5);
  for (std::uint32_t p : {2u, 3u, 101u, 65521u, 2147483647u}) {
    std::vector<std::uint32_t> c(9), xs(37), out(37);
    for (auto& v : c) v = static_cast<std::uint32_t>(rng() % p);
    for (auto& v : xs) v = static_cast<std::uint32_t>(rng() % p);
    scalar::eval_poly_mod_p(c, xs, out, p);
    CHECK(out == naive(c, xs, p));
  }
}

TEST_CASE("vector kernel is equivalent to the scalar kernel") {
  if (!avx2::supported()) {
    MESSAGE("avx2 not available on this CPU");
    return;
  }
  std::mt19937_64 rng(9);
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 31u, 257u, 1021u, 4093u}) {
    for (std::size_t n : {0u, 1u, 7u, 8u, 9u, 64u, 1000u}) {
      for (int deg : {0, 1, 4, 13}) {
        std::vector<std::uint32_t> c(static_cast<std::size_t>(deg) + 1), xs(n), a(n), b(n);
        for (auto& v : c) v = static_cast<std::uint32_t>(rng() % p);
        for (auto& v : xs) v = static_cast<std::uint32_t>(rng() % p);
        scalar::eval_poly_mod_p(c, xs, a, p);
        avx2::eval_poly_mod_p(c, xs, b, p);
        CHECK(a == b);
      }
    }
  }
  // extreme residues
  const std::uint32_t p = 4093;
  std::vector<std::uint32_t> c(20, p - 1), xs(4093), a(4093), b(4093);
  for (std::uint32_t i = 0; i < p; ++i) xs[i] = i;
  scalar::eval_poly_mod_p(c, xs, a, p);
  avx2::eval_poly_mod_p(c, xs, b, p);
  CHECK(a == b);
}

TEST_CASE("dispatcher honours the modulus limit") {
  std::vector<std::uint32_t> c{1, 2, 3}, xs{5, 6, 7}, out(3);
  eval_poly_mod_p(Isa::avx2, c, xs, out, 65521);
  CHECK(out == naive(c, xs, 65521));
  CHECK(std::string(isa_name(Isa::scalar)) == "scalar");
}
