#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>

#include "bellinger/error.hpp"

namespace bellinger {

/// Largest n for which every C(n, k) fits in 64 unsigned bits.
inline constexpr std::uint64_t kMaxExactSubsetN = 62;

/// Number of k-element subsets of an n-element set, computed exactly with a
/// running product that is reduced by the gcd before every multiplication.
inline std::uint64_t count_subsets(std::uint64_t n, std::uint64_t k) {
  if (k > n) {
    throw Error("invalid subset size: k = " + std::to_string(k) +
                " exceeds n = " + std::to_string(n));
  }
  if (n > kMaxExactSubsetN) {
    throw Error("n = " + std::to_string(n) +
                " exceeds the exact 64-bit limit of " +
                std::to_string(kMaxExactSubsetN));
  }
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // result * (n - k + i) / i is exact; divide the common factor out first.
    std::uint64_t numerator = n - k + i;
    std::uint64_t divisor = i;
    const auto g = std::gcd(result, divisor);
    result /= g;
    divisor /= g;
    numerator /= divisor;
    if (__builtin_mul_overflow(result, numerator, &result)) {
      throw Error("subset count overflows 64 bits");
    }
  }
  return result;
}

}  // namespace bellinger
