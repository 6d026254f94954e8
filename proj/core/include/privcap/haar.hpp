#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "privcap/matrix.hpp"

namespace privcap {

/// SplitMix64 finaliser. Used to derive independent per-sample seeds from
/// (seed, index) pairs.
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

[[nodiscard]] constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    return mix64(seed ^ mix64(index + 0x632be59bd9b4e019ULL));
}

/// n x n complex Ginibre matrix: i.i.d. entries (x + i y)/sqrt(2), x, y ~ N(0, 1).
[[nodiscard]] ComplexMatrix ginibre(std::size_t n, std::mt19937_64& rng);

/// Haar-distributed n x n unitary, deterministic in `seed`.
[[nodiscard]] ComplexMatrix haar_unitary(std::size_t n, std::uint64_t seed);
[[nodiscard]] ComplexMatrix haar_unitary(std::size_t n, std::mt19937_64& rng);

}  // namespace privcap
