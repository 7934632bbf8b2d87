#pragma once

// Seeded draws with a fixed algorithm. std::uniform_int_distribution and
// std::shuffle are implementation-defined, so they would make generated data
// differ between standard libraries; mt19937_64's output sequence does not.

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace confrec {

using Rng = std::mt19937_64;

/// Uniform integer in [0, bound), bound > 0. Rejection sampling, no modulo bias.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

/// Fisher-Yates shuffle.
template <typename T>
void shuffle(std::span<T> items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace confrec
