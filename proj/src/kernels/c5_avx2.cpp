// Compiled with -mavx2; only reached after isa_available(Isa::Avx2).
#include <immintrin.h>

#include "clonekit/kernels.hpp"

namespace clonekit::kernels::detail {

std::size_t c5_first_violation_avx2(const C5Block& block, std::span<const std::uint32_t> candidates) {
  const std::size_t n = candidates.size();
  const __m256i partial = _mm256_set1_epi32(static_cast<int>(block.partial));
  const __m256i last = _mm256_set1_epi32(static_cast<int>(block.last));
  const __m256i zero = _mm256_setzero_si256();
  __m256i coeff[8];
  __m256i fixed[8];
  for (std::size_t i = 0; i < block.prefix; ++i) {
    coeff[i] = _mm256_set1_epi32(static_cast<int>(block.coeff[i]));
    fixed[i] = _mm256_set1_epi32(static_cast<int>(block.fixed[i]));
  }

  std::size_t c = 0;
  for (; c + 8 <= n; c += 8) {
    const __m256i g = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(candidates.data() + c));
    const __m256i lg = _mm256_and_si256(last, g);
    const __m256i h = _mm256_xor_si256(partial, lg);
    __m256i bad = _mm256_xor_si256(_mm256_and_si256(last, h), lg);
    for (std::size_t i = 0; i < block.prefix; ++i) {
      bad = _mm256_or_si256(bad, _mm256_xor_si256(_mm256_and_si256(coeff[i], h), fixed[i]));
    }
    const int ok = _mm256_movemask_ps(_mm256_castsi256_ps(_mm256_cmpeq_epi32(bad, zero)));
    if (ok != 0xff) return c + static_cast<std::size_t>(__builtin_ctz(~ok & 0xff));
  }
  const std::size_t tail = c5_first_violation_scalar(block, candidates.subspan(c));
  return tail == kNoViolation ? kNoViolation : c + tail;
}

}  // namespace clonekit::kernels::detail
