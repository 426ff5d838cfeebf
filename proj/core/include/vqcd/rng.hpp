#pragma once

#include <cstdint>
#include <random>

namespace vqcd::rng {

/// splitmix64 mixing step; used to derive independent stream seeds.
inline std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic stream keyed by (seed, path, block). Streams for
/// distinct keys are independent for simulation purposes, so parallel
/// paths reproduce regardless of scheduling.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t path = 0,
                                   std::uint64_t block = 0) {
  std::uint64_t s = mix(seed);
  s = mix(s ^ mix(path + 0x632be59bd9b4e019ULL));
  s = mix(s ^ mix(block + 0x9e6c63d0876a9a47ULL));
  return std::mt19937_64(s);
}

}  // namespace vqcd::rng
