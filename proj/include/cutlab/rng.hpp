#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

namespace cutlab {

// SplitMix64. Used only to derive stream seeds from a master seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic sub-seed for a (master, a, b, c) key. Components keyed by
// position so (1,2) and (2,1) land in different streams.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t s = master;
  (void)splitmix64(s);
  s ^= 0x9e3779b97f4a7c15ULL * (a + 1);
  (void)splitmix64(s);
  s ^= 0xc2b2ae3d27d4eb4fULL * (b + 1);
  (void)splitmix64(s);
  s ^= 0x165667b19e3779f9ULL * (c + 1);
  return splitmix64(s);
}

// All randomized paths run on mt19937_64: its raw output sequence is fixed by
// the standard, so runs reproduce bit-for-bit across platforms.
using Rng = std::mt19937_64;

// Uniform draw from [0, k) by rejection; no modulo bias.
inline std::uint64_t bounded(Rng& rng, std::uint64_t k) {
  if (k <= 1) return 0;
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - max % k;  // multiple of k
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % k;
}

inline double uniform01(Rng& rng) {
  // top 53 bits -> [0, 1)
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Standard normal via Box-Muller on the top 53 bits of the generator.
// u1 lies in (0, 1] so the log is finite. One deviate per call; the sine
// branch is discarded to keep the consumption pattern simple and documented.
inline double standard_gaussian(Rng& rng) {
  constexpr double two_pi = 6.283185307179586476925286766559;
  const double u1 = static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
  const double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

}  // namespace cutlab
