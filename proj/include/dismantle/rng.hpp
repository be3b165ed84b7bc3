#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

namespace dismantle {

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// splitmix64 stream: the seed for sub-stream r of a base seed.  Keeps
// replications decorrelated while staying reproducible from one integer.
inline std::uint64_t seed_for(std::uint64_t base, std::uint64_t stream) {
    return mix64(base + (stream + 1) * 0x9E3779B97F4A7C15ull);
}

// Unbiased draw from [0, n) by rejection; avoids the implementation-defined
// behaviour of std::uniform_int_distribution across standard libraries.
inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
    if (n == 0) throw std::invalid_argument("uniform_index over empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = (UINT64_MAX / span) * span;
    std::uint64_t r;
    do {
        r = rng();
    } while (r >= limit);
    return static_cast<std::size_t>(r % span);
}

}  // namespace dismantle
