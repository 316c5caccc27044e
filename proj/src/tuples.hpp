#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace clonekit::detail {

inline constexpr std::uint64_t kSaturated = ~std::uint64_t{0};

inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kSaturated / b) return kSaturated;
  return a * b;
}

inline std::uint64_t sat_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) out = sat_mul(out, base);
  return out;
}

// Odometer over len digits in [0, base), last digit fastest.
// fn returns false to stop; the return value says whether the scan completed.
inline bool for_each_tuple(std::size_t base, std::size_t len,
                           const std::function<bool(std::span<const std::size_t>)>& fn) {
  std::vector<std::size_t> idx(len, 0);
  if (len > 0 && base == 0) return true;
  for (;;) {
    if (!fn(idx)) return false;
    std::size_t pos = len;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < base) break;
      idx[pos] = 0;
      if (pos == 0) return true;
    }
    if (len == 0) return true;
  }
}

}  // namespace clonekit::detail
