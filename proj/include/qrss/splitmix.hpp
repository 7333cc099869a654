#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

namespace qrss {

/// SplitMix64. The exact output sequence is part of the shadow format: the
/// pixel permutation and the Shamir coefficients are both derived from it,
/// so any change here breaks compatibility with existing share files.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Unbiased draw from [0, bound). Outputs at or above the largest multiple
  /// of bound that fits in 2^64 are rejected and redrawn.
  constexpr std::uint64_t uniform(std::uint64_t bound) noexcept {
    if (bound <= 1) return 0;
    // 2^64 mod bound, computed without 128-bit arithmetic.
    const std::uint64_t excess = (std::numeric_limits<std::uint64_t>::max() % bound + 1) % bound;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - excess;
    for (;;) {
      const std::uint64_t z = next();
      if (excess == 0 || z <= limit) return z % bound;
    }
  }

 private:
  std::uint64_t state_;
};

/// Fisher-Yates order for n items: item i of the shuffled list is item
/// order[i] of the original. Swaps run from the last slot down to slot 1,
/// each partner drawn uniformly from [0, i].
inline std::vector<std::size_t> shuffle_order(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  SplitMix64 rng(seed);
  for (std::size_t i = n; i-- > 1;) {
    const auto j = static_cast<std::size_t>(rng.uniform(i + 1));
    std::swap(order[i], order[j]);
  }
  return order;
}

template <typename T>
std::vector<T> apply_shuffle(std::span<const T> items, std::uint64_t seed) {
  const auto order = shuffle_order(items.size(), seed);
  std::vector<T> out(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) out[i] = items[order[i]];
  return out;
}

template <typename T>
std::vector<T> undo_shuffle(std::span<const T> items, std::uint64_t seed) {
  const auto order = shuffle_order(items.size(), seed);
  std::vector<T> out(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) out[order[i]] = items[i];
  return out;
}

}  // namespace qrss
