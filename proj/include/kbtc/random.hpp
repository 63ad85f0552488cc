#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace kbtc {

// std::uniform_int_distribution and std::shuffle are implementation-defined,
// so shuffles are built directly on mt19937_64 output to stay identical
// across standard libraries.
using Rng = std::mt19937_64;

// Uniform integer in [0, bound) by rejection sampling.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = Rng::max() - (Rng::max() % bound);
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return draw % bound;
}

// Uniform double in [0, 1) from the top 53 bits.
inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <typename T>
void fisher_yates_shuffle(std::span<T> items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(rng, i));
    using std::swap;
    swap(items[i - 1], items[j]);
  }
}

}  // namespace kbtc
