#pragma once

#include <cstdint>

namespace ionspin {

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based child seed: independent of how many siblings are drawn.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t counter) {
  return mix64(master ^ mix64(counter + 0x632be59bd9b4e019ULL));
}

// Uniform double in [0, 1) from 53 high bits; identical on every platform.
inline double unit_double(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

}  // namespace ionspin
