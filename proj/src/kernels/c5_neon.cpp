// aarch64 only; NEON is baseline there.
#include <arm_neon.h>

#include "clonekit/kernels.hpp"

namespace clonekit::kernels::detail {

std::size_t c5_first_violation_neon(const C5Block& block, std::span<const std::uint32_t> candidates) {
  const std::size_t n = candidates.size();
  const uint32x4_t partial = vdupq_n_u32(block.partial);
  const uint32x4_t last = vdupq_n_u32(block.last);
  uint32x4_t coeff[8];
  uint32x4_t fixed[8];
  for (std::size_t i = 0; i < block.prefix; ++i) {
    coeff[i] = vdupq_n_u32(block.coeff[i]);
    fixed[i] = vdupq_n_u32(block.fixed[i]);
  }

  std::size_t c = 0;
  for (; c + 4 <= n; c += 4) {
    const uint32x4_t g = vld1q_u32(candidates.data() + c);
    const uint32x4_t lg = vandq_u32(last, g);
    const uint32x4_t h = veorq_u32(partial, lg);
    uint32x4_t bad = veorq_u32(vandq_u32(last, h), lg);
    for (std::size_t i = 0; i < block.prefix; ++i) {
      bad = vorrq_u32(bad, veorq_u32(vandq_u32(coeff[i], h), fixed[i]));
    }
    if (vmaxvq_u32(bad) != 0) {
      const std::size_t hit = c5_first_violation_scalar(block, candidates.subspan(c, 4));
      return c + hit;
    }
  }
  const std::size_t tail = c5_first_violation_scalar(block, candidates.subspan(c));
  return tail == kNoViolation ? kNoViolation : c + tail;
}

}  // namespace clonekit::kernels::detail
