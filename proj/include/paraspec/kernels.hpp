#pragma once

#include <cstdint>
#include <span>

// Data-parallel inner loops of the point counter. Every kernel has a scalar
// reference implementation; vector variants must agree with it bit for bit.
namespace paraspec::kernels {

enum class Isa { scalar, avx2 };

// Best instruction set supported by the running CPU, unless the environment
// variable PARASPEC_SIMD=scalar forces the reference path.
Isa active_isa();
const char* isa_name(Isa isa);

// Largest modulus the vector kernels accept (products must stay below 2^24).
inline constexpr std::uint32_t kMaxVectorModulus = 4093;

// out[i] = coeffs(xs[i]) mod p, coefficients ascending and reduced mod p.
void eval_poly_mod_p(std::span<const std::uint32_t> coeffs, std::span<const std::uint32_t> xs,
                     std::span<std::uint32_t> out, std::uint32_t p);
void eval_poly_mod_p(Isa isa, std::span<const std::uint32_t> coeffs, std::span<const std::uint32_t> xs,
                     std::span<std::uint32_t> out, std::uint32_t p);

namespace scalar {
void eval_poly_mod_p(std::span<const std::uint32_t> coeffs, std::span<const std::uint32_t> xs,
                     std::span<std::uint32_t> out, std::uint32_t p);
}

namespace avx2 {
bool supported();
void eval_poly_mod_p(std::span<const std::uint32_t> coeffs, std::span<const std::uint32_t> xs,
                     std::span<std::uint32_t> out, std::uint32_t p);
}

}  // namespace paraspec::kernels
