#pragma once

#include <cstdint>

#include "dsr/field.hpp"

namespace dsr {

/// splitmix64 stream; fixed algorithm so seeded runs are reproducible across
/// platforms and standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  /// Independent substream for (seed, index), used for per-trial streams.
  static Rng substream(uint64_t seed, uint64_t index) {
    Rng mix(seed ^ (0x9e3779b97f4a7c15ull * (index + 1)));
    mix.next();
    return mix;
  }

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound) by rejection.
  uint64_t below(uint64_t bound) {
    uint64_t limit = ~0ull - ~0ull % bound;
    uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % bound;
  }

  uint32_t field_element(const Field& f) { return (uint32_t)below(f.q()); }

  /// Nonzero element.
  uint32_t field_nonzero(const Field& f) {
    return 1 + (uint32_t)below(f.q() - 1);
  }

  /// Bernoulli(p) with p given as a double in [0,1].
  bool bernoulli(double p) { return (next() >> 11) * 0x1.0p-53 < p; }

 private:
  uint64_t state_;
};

}  // namespace dsr
