#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace bentail::detail {

// Reproducibility helpers. std::shuffle and uniform_int_distribution are
// implementation-defined, so anything whose output is part of the observable
// contract (splits, suite draws) uses these fixed algorithms over a seeded
// mt19937_64 instead.

// Uniform draw from [0, n) by rejection, no modulo bias.
inline std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

// Fisher-Yates with the fixed draw above.
template <class T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i)
    std::swap(v[i - 1], v[draw_below(rng, i)]);
}

// [0, 1) with 53 random bits, the standard double-precision construction.
inline double draw_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace bentail::detail
