#ifndef ADEFF_RNG_HPP
#define ADEFF_RNG_HPP

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace adeff {

// All stochastic operations in the toolkit draw from std::mt19937_64 seeded
// explicitly. The generator and the helpers below are fully specified, so
// results are bit-identical across platforms and compilers.

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Derives an independent stream seed, e.g. one per one-vs-rest class.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed + stream);
}

// Unbiased draw from [0, n). Rejection sampling keeps the mapping exact
// regardless of how the standard library would implement distributions.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - max % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

// Fisher-Yates; std::shuffle is implementation-defined, this is not.
template <typename T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace adeff

#endif
