#pragma once

#include <cstdint>

namespace occ {

/// SplitMix64. Small, fast, and splittable: seeding with (seed, stream) gives
/// independent streams, which keeps per-trial draws identical no matter how
/// trials are divided across threads.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    SplitMix64(std::uint64_t seed, std::uint64_t stream)
        : state(seed + stream * 0x9E3779B97F4A7C15ULL) {
        // decorrelate nearby (seed, stream) pairs
        next();
        next();
    }

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform on [0, 1).
    double next01() { return (next() >> 11) * 0x1.0p-53; }

    /// Unbiased uniform integer in [0, bound) by multiply-shift rejection.
    std::uint64_t below(std::uint64_t bound) {
        using u128 = unsigned __int128;
        for (;;) {
            std::uint64_t x = next();
            u128 m = static_cast<u128>(x) * bound;
            auto lo = static_cast<std::uint64_t>(m);
            if (lo < bound) {
                std::uint64_t threshold = (0 - bound) % bound;
                if (lo < threshold) continue;
            }
            return static_cast<std::uint64_t>(m >> 64);
        }
    }
};

}  // namespace occ
