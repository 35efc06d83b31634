#pragma once

// seeded deterministic rng: splitmix64 seeding a xoshiro-style generator;
// callers derive one generator per worker from (seed, worker index)

#include <cstdint>

namespace ordscan {

struct Rng {
  std::uint64_t s[4];

  explicit Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& w : s) {
      // splitmix64
      x += 0x9e3779b97f4a7c15ull;
      std::uint64_t z = x;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
      w = z ^ (z >> 31);
    }
  }

  static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

  std::uint64_t next() {
    // xoshiro256**
    std::uint64_t result = rotl(s[1] * 5, 7) * 9;
    std::uint64_t t = s[1] << 17;
    s[2] ^= s[0];
    s[3] ^= s[1];
    s[1] ^= s[2];
    s[0] ^= s[3];
    s[2] ^= t;
    s[3] = rotl(s[3], 45);
    return result;
  }

  // uniform in [0, bound) without modulo bias
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t threshold = (0 - bound) % bound;
    while (true) {
      std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  double uniform01() { return (next() >> 11) * 0x1.0p-53; }
};

inline Rng worker_rng(std::uint64_t seed, std::uint64_t worker) {
  return Rng(seed * 0x9e3779b97f4a7c15ull + worker * 0xda942042e4dd58b5ull + 1);
}

}  // namespace ordscan
