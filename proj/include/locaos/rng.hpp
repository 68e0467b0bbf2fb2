#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "locaos/text.hpp"

namespace locaos {

using Rng = std::mt19937_64;

// Labeled substream of a base seed. Runs that share a seed but use different
// labels draw from independent generators.
inline Rng make_stream(std::uint64_t seed, std::string_view label, std::uint64_t index = 0) {
    const std::uint64_t h = fnv1a64(label);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return Rng(seq);
}

// Uniform integer in [0, n). Rejection sampling keeps the result independent
// of the standard library's distribution implementation.
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = Rng::max() - Rng::max() % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return static_cast<std::size_t>(x % bound);
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <typename It>
void shuffle_range(It first, It last, Rng& rng) {
    // Forward Fisher-Yates: position k is final after step k, so a partial run
    // yields a prefix of the same permutation.
    const auto n = static_cast<std::size_t>(last - first);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t j = k + uniform_index(rng, n - k);
        std::swap(first[k], first[j]);
    }
}

}  // namespace locaos
