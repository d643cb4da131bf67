#pragma once

#include <cstdint>

namespace holoball {

// Deterministic 64-bit generator (splitmix construction). The whole point of
// carrying our own generator is that the stream is pinned by the algorithm,
// not by a standard library implementation, so a port in any language
// reproduces every sampled grid bit for bit from the same seed.
class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

    constexpr std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53 bits of precision.
    double uniform01() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

private:
    std::uint64_t state_;
};

} // namespace holoball
