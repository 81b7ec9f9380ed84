#pragma once

#include <cstdint>
#include <random>

namespace mftk {

// Every stochastic routine draws from std::mt19937_64. Independent
// sub-streams (one per surrogate, one per day, ...) are keyed by
// (seed, stream) through a SplitMix64 mix, so results do not depend on
// the order in which streams are consumed.
inline constexpr const char* kRngAlgorithm = "mt19937_64/splitmix64-substreams";

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
    return Rng(substream_seed(seed, stream));
}

// Unbiased integer in [0, bound) by rejection; the mapping is fixed here
// instead of relying on std::uniform_int_distribution, whose algorithm is
// implementation-defined.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    const std::uint64_t limit = bound == 0 ? 0 : (~std::uint64_t{0} - bound + 1) % bound;
    for (;;) {
        const std::uint64_t x = rng();
        if (x >= limit) return x % bound;
    }
}

}  // namespace mftk
