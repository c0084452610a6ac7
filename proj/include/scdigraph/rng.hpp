#pragma once

#include <cstdint>
#include <random>

namespace scd {

using rng_type = std::mt19937_64;

// splitmix64 finalizer; used to derive independent per-task streams.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t task) {
  return mix64(mix64(master) ^ mix64(task + 0x632be59bd9b4e019ULL));
}

inline rng_type make_rng(std::uint64_t master, std::uint64_t task) {
  std::seed_seq seq{static_cast<std::uint32_t>(derive_seed(master, task)),
                    static_cast<std::uint32_t>(derive_seed(master, task) >> 32)};
  return rng_type(seq);
}

// Uniform double in [0, 1).
inline double uniform01(rng_type& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace scd
