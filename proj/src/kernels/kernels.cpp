#include "clonekit/kernels.hpp"

#include <cstdlib>
#include <cstring>

#include "clonekit/error.hpp"

namespace clonekit::kernels {

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(CLONEKIT_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") != 0;
#else
      return false;
#endif
    case Isa::Neon:
#if defined(CLONEKIT_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

namespace {

Isa detect() noexcept {
  if (const char* env = std::getenv("CLONEKIT_ISA")) {
    for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
      if (isa_name(isa) == env && isa_available(isa)) return isa;
    }
  }
  if (isa_available(Isa::Avx2)) return Isa::Avx2;
  if (isa_available(Isa::Neon)) return Isa::Neon;
  return Isa::Scalar;
}

}  // namespace

Isa selected_isa() noexcept {
  static const Isa isa = detect();
  return isa;
}

std::uint32_t pack(std::span<const Elem> coeffs) {
  if (coeffs.size() > kMaxPackedArity) {
    throw Error(ErrorCode::ArityMismatch, "packed operations hold at most 4 coefficients");
  }
  std::uint32_t out = 0;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (coeffs[j] > 0xffU) throw Error(ErrorCode::CarrierTooLarge, "packed coefficient exceeds 8 atoms");
    out |= coeffs[j] << (8 * j);
  }
  return out;
}

namespace detail {

std::size_t c5_first_violation_scalar(const C5Block& block, std::span<const std::uint32_t> candidates) {
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const std::uint32_t g = candidates[c];
    const std::uint32_t h = block.partial ^ (block.last & g);
    std::uint32_t bad = (block.last & h) ^ (block.last & g);
    for (std::size_t i = 0; i < block.prefix; ++i) bad |= (block.coeff[i] & h) ^ block.fixed[i];
    if (bad != 0) return c;
  }
  return kNoViolation;
}

#if !defined(CLONEKIT_HAVE_AVX2)
std::size_t c5_first_violation_avx2(const C5Block& block, std::span<const std::uint32_t> candidates) {
  return c5_first_violation_scalar(block, candidates);
}
#endif

#if !defined(CLONEKIT_HAVE_NEON)
std::size_t c5_first_violation_neon(const C5Block& block, std::span<const std::uint32_t> candidates) {
  return c5_first_violation_scalar(block, candidates);
}
#endif

}  // namespace detail

std::size_t c5_first_violation(const C5Block& block, std::span<const std::uint32_t> candidates, Isa isa) {
  if (block.prefix > block.coeff.size()) throw Error(ErrorCode::ArityMismatch, "C5Block prefix too long");
  switch (isa) {
    case Isa::Avx2:
      if (isa_available(Isa::Avx2)) return detail::c5_first_violation_avx2(block, candidates);
      break;
    case Isa::Neon:
      if (isa_available(Isa::Neon)) return detail::c5_first_violation_neon(block, candidates);
      break;
    case Isa::Scalar:
      break;
  }
  return detail::c5_first_violation_scalar(block, candidates);
}

}  // namespace clonekit::kernels
