#pragma once

#include <cstdint>
#include <random>

namespace biocell {

/// Random stream used by every stochastic path. std::mt19937_64's output
/// sequence is fixed by the C++ standard, so a seed reproduces the same draws
/// on every conforming platform. Distributions from <random> are not used
/// because their algorithms are implementation-defined.
using RandomStream = std::mt19937_64;

/// SplitMix64 finaliser (Steele, Lea, Flood 2014). Full avalanche on 64 bits.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed of run `index` under `master`: mix64(mix64(master) ^ index).
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
    return mix64(mix64(master) ^ index);
}

/// Uniform double in [0, 1) from the top 53 bits of one draw.
inline double uniform01(RandomStream& stream) {
    return static_cast<double>(stream() >> 11) * 0x1.0p-53;
}

}  // namespace biocell
