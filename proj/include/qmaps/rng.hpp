#pragma once
#include <cstdint>

namespace qmaps {

// Deterministic fixed-width RNG: xoshiro256** seeded through splitmix64.
// All sampling in the library draws from this generator only, so a (seed,
// stream) pair fully determines every artifact on every platform.
struct Rng {
  uint64_t s[4];

  explicit Rng(uint64_t seed) {
    uint64_t x = seed;
    for (int i = 0; i < 4; i++) s[i] = splitmix64(x);
  }

  static uint64_t splitmix64(uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static uint64_t rotl(uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

  uint64_t next() {
    uint64_t result = rotl(s[1] * 5, 7) * 9;
    uint64_t t = s[1] << 17;
    s[2] ^= s[0];
    s[3] ^= s[1];
    s[1] ^= s[2];
    s[0] ^= s[3];
    s[2] ^= t;
    s[3] = rotl(s[3], 45);
    return result;
  }

  // Exact uniform integer in [0, bound) by rejection.
  uint64_t below(uint64_t bound) {
    if (bound <= 1) return 0;
    uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % bound;
  }

  // Uniform double in [0,1) with 53 bits; only used in float-mode weights
  // and Monte Carlo, never in exact samplers.
  double uniform() { return (next() >> 11) * 0x1.0p-53; }
};

// Counter-based stream derivation: one master seed, per-task streams.
inline Rng derive_stream(uint64_t master_seed, uint64_t stream_index) {
  uint64_t x = master_seed;
  uint64_t a = Rng::splitmix64(x);
  x = stream_index ^ 0xd2b74407b1ce6e93ULL;
  uint64_t b = Rng::splitmix64(x);
  return Rng(a ^ Rng::rotl(b, 23));
}

}  // namespace qmaps
