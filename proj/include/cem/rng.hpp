#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace cem {

// Deterministic 64-bit generator (splitmix64). Standard-library engines and
// distributions are implementation-defined, so everything seed-dependent in
// this project goes through this class: identical seeds must give identical
// artifacts across runs and platforms.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Unbiased integer in [0, bound); bound must be nonzero.
  uint64_t next_below(uint64_t bound) {
    const uint64_t limit = ~uint64_t{0} - ~uint64_t{0} % bound;
    uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % bound;
  }

  // Uniform in [0, 1) with 53 bits of precision.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in [-s, s].
  double next_symmetric(double s) { return (2.0 * next_double() - 1.0) * s; }

 private:
  uint64_t state_;
};

// Stable seed for an independent sub-stream of a master seed.
inline uint64_t derive_seed(uint64_t seed, uint64_t stream) {
  Rng r(seed ^ (0x9e3779b97f4a7c15ull * (stream + 1)));
  return r.next_u64();
}

// Fisher-Yates driven by Rng; std::shuffle is implementation-defined.
template <typename T>
void deterministic_shuffle(std::vector<T>& items, Rng& rng) {
  for (size_t i = items.size(); i > 1; --i) {
    size_t j = static_cast<size_t>(rng.next_below(i));
    T tmp = std::move(items[i - 1]);
    items[i - 1] = std::move(items[j]);
    items[j] = std::move(tmp);
  }
}

}  // namespace cem
