#include "paraspec/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define PARASPEC_HAVE_AVX2_TU 1
#endif

namespace paraspec::kernels::avx2 {

#if PARASPEC_HAVE_AVX2_TU

namespace {

// a*b mod p for lanes with a, b < p <= 4093: the product is exact in fp32 and
// the truncated quotient is off by at most one.
inline __m256i mulmod(__m256i a, __m256i b, __m256i vp, __m256 vinv) {
  const __m256i prod = _mm256_mullo_epi32(a, b);
  const __m256 fq = _mm256_mul_ps(_mm256_cvtepi32_ps(prod), vinv);
  const __m256i q = _mm256_cvttps_epi32(fq);
  __m256i r = _mm256_sub_epi32(prod, _mm256_mullo_epi32(q, vp));
  // r in [-p, 2p): fold back into [0, p).
  r = _mm256_add_epi32(r, _mm256_and_si256(_mm256_cmpgt_epi32(_mm256_setzero_si256(), r), vp));
  const __m256i pm1 = _mm256_sub_epi32(vp, _mm256_set1_epi32(1));
  r = _mm256_sub_epi32(r, _mm256_and_si256(_mm256_cmpgt_epi32(r, pm1), vp));
  return r;
}

inline __m256i addmod(__m256i a, __m256i b, __m256i vp) {
  __m256i s = _mm256_add_epi32(a, b);
  const __m256i pm1 = _mm256_sub_epi32(vp, _mm256_set1_epi32(1));
  return _mm256_sub_epi32(s, _mm256_and_si256(_mm256_cmpgt_epi32(s, pm1), vp));
}

}  // namespace

bool supported() {
  static const bool ok = __builtin_cpu_supports("avx2");
  return ok;
}

void eval_poly_mod_p(std::span<const std::uint32_t> coeffs, std::span<const std::uint32_t> xs,
                     std::span<std::uint32_t> out, std::uint32_t p) {
  const std::size_t n = xs.size();
  const __m256i vp = _mm256_set1_epi32(static_cast<int>(p));
  const __m256 vinv = _mm256_set1_ps(1.0f / static_cast<float>(p));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(xs.data() + i));
    __m256i acc = _mm256_setzero_si256();
    for (std::size_t j = coeffs.size(); j-- > 0;) {
      acc = addmod(mulmod(acc, x, vp, vinv), _mm256_set1_epi32(static_cast<int>(coeffs[j])), vp);
    }
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.data() + i), acc);
  }
  if (i < n) scalar::eval_poly_mod_p(coeffs, xs.subspan(i), out.subspan(i), p);
}

#else

bool supported() { return false; }

void eval_poly_mod_p(std::span<const std::uint32_t> coeffs, std::span<const std::uint32_t> xs,
                     std::span<std::uint32_t> out, std::uint32_t p) {
  scalar::eval_poly_mod_p(coeffs, xs, out, p);
}

#endif

}  // namespace paraspec::kernels::avx2
