#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace dtwc {

using Rng = std::mt19937_64;

// Mixes a parent seed with a stream label (splitmix64 finalizer). Used to hand independent,
// reproducible seeds to sub-stages without sharing a generator.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

// Uniform sample of `count` distinct positions from [0, n), returned in draw order.
std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t count, std::uint64_t seed);

}  // namespace dtwc
