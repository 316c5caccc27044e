#pragma once

// Packed bitmask kernels for powerset Boolean rings with at most 8 atoms.
//
// An operation of arity n <= 4 packs into a uint32 with coefficient j in
// byte j. Ring addition is xor and multiplication is and, so a composite
// sum_l f[l] * g_l is computed bytewise as xor_l (bcast(f[l]) & g_l).
//
// Each kernel has a scalar reference and SIMD variants (AVX2 on x86-64,
// NEON on aarch64) selected at runtime; all variants return identical results.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

#include "clonekit/finite_ring.hpp"

namespace clonekit::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa) noexcept;
bool isa_available(Isa isa) noexcept;
// Widest available variant, unless CLONEKIT_ISA=scalar|avx2|neon names another available one.
Isa selected_isa() noexcept;

inline constexpr std::size_t kMaxPackedArity = 4;
inline constexpr std::size_t kMaxPackedAtoms = 8;
inline constexpr std::size_t kNoViolation = static_cast<std::size_t>(-1);

std::uint32_t pack(std::span<const Elem> coeffs);
constexpr std::uint32_t broadcast(Elem e) noexcept { return 0x01010101U * (e & 0xffU); }

// One (f, g_1..g_{k-1}) prefix of a distributivity scan; the last tuple slot
// g_k ranges over the candidates. For a candidate c:
//   h = partial ^ (last & c)
//   holds iff (coeff[i] & h) == fixed[i] for i < prefix, and (last & h) == (last & c)
struct C5Block {
  std::uint32_t partial = 0;  // xor_{i<prefix} bcast(f[i]) & g_i
  std::uint32_t last = 0;     // bcast(f[k])
  std::array<std::uint32_t, 8> coeff{};  // bcast(f[i]), i < prefix
  std::array<std::uint32_t, 8> fixed{};  // bcast(f[i]) & g_i, i < prefix
  std::size_t prefix = 0;
};

// Index of the first violating candidate, or kNoViolation.
std::size_t c5_first_violation(const C5Block& block, std::span<const std::uint32_t> candidates,
                               Isa isa = selected_isa());

namespace detail {
std::size_t c5_first_violation_scalar(const C5Block& block, std::span<const std::uint32_t> candidates);
std::size_t c5_first_violation_avx2(const C5Block& block, std::span<const std::uint32_t> candidates);
std::size_t c5_first_violation_neon(const C5Block& block, std::span<const std::uint32_t> candidates);
}  // namespace detail

}  // namespace clonekit::kernels
