#pragma once

#include <cassert>
#include <cstdint>
#include <utility>
#include <vector>

namespace advt {

/// SplitMix64 (Steele, Lea & Flood). The project-wide deterministic
/// generator: the full output sequence is pinned by the three constants
/// below, so fold plans, parameter initializations and epoch shuffles
/// reproduce bit-for-bit on any platform.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) noexcept : state_(seed) {}

  uint64_t next() noexcept {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound). Rejection sampling, no modulo bias.
  uint64_t next_below(uint64_t bound) noexcept {
    assert(bound > 0);
    const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t v = next();
    while (v >= limit) v = next();
    return v % bound;
  }

  /// Uniform double in the open interval (0, 1): (k + 0.5) * 2^-53 with
  /// k the top 53 bits of the next output. Never returns an endpoint.
  double next_double() noexcept {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  uint64_t state_;
};

/// Stable sub-stream seed for (seed, stream): fold f of a k-fold run draws
/// from derive_seed(seed, f) so folds stay independent of execution order.
inline uint64_t derive_seed(uint64_t seed, uint64_t stream) noexcept {
  SplitMix64 g(seed ^ (0xBF58476D1CE4E5B9ULL * (stream + 1)));
  return g.next();
}

/// In-place Fisher-Yates. With a fixed generator state the permutation is
/// identical everywhere; this is the only shuffle the library uses.
template <typename T>
void deterministic_shuffle(std::vector<T>& v, SplitMix64& rng) {
  for (size_t i = v.size(); i > 1; --i) {
    size_t j = static_cast<size_t>(rng.next_below(i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace advt
