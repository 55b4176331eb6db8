#include "paraspec/kernels.hpp"

#include <cstdlib>
#include <cstring>

#include "paraspec/errors.hpp"

namespace paraspec::kernels {

namespace scalar {

void eval_poly_mod_p(std::span<const std::uint32_t> coeffs, std::span<const std::uint32_t> xs,
                     std::span<std::uint32_t> out, std::uint32_t p) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::uint64_t acc = 0;
    for (std::size_t j = coeffs.size(); j-- > 0;) acc = (acc * xs[i] + coeffs[j]) % p;
    out[i] = static_cast<std::uint32_t>(acc);
  }
}

}  // namespace scalar

Isa active_isa() {
  static const Isa isa = [] {
    const char* forced = std::getenv("PARASPEC_SIMD");
    if (forced != nullptr && std::strcmp(forced, "scalar") == 0) return Isa::scalar;
    return avx2::supported() ? Isa::avx2 : Isa::scalar;
  }();
  return isa;
}

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::avx2:
      return "avx2";
    case Isa::scalar:
      break;
  }
  return "scalar";
}

void eval_poly_mod_p(Isa isa, std::span<const std::uint32_t> coeffs, std::span<const std::uint32_t> xs,
                     std::span<std::uint32_t> out, std::uint32_t p) {
  if (out.size() < xs.size()) throw InvalidInput("eval_poly_mod_p: output span too small");
  if (isa == Isa::avx2 && p <= kMaxVectorModulus && avx2::supported()) {
    avx2::eval_poly_mod_p(coeffs, xs, out, p);
    return;
  }
  scalar::eval_poly_mod_p(coeffs, xs, out, p);
}

void eval_poly_mod_p(std::span<const std::uint32_t> coeffs, std::span<const std::uint32_t> xs,
                     std::span<std::uint32_t> out, std::uint32_t p) {
  eval_poly_mod_p(active_isa(), coeffs, xs, out, p);
}

}  // namespace paraspec::kernels
