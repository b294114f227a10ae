#pragma once

#include <cstdint>

#include "setshaping/sequence.hpp"

namespace setshaping {

// SplitMix64 (Steele, Lea, Flood 2014). 64-bit state stepped by the golden
// gamma; all-integer, so streams are identical on every platform.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Unbiased uniform draw from {1, .., ns} by rejecting the first
    // 2^64 mod ns outputs.
    Symbol uniform_symbol(Symbol ns) {
        const std::uint64_t threshold = (0 - std::uint64_t{ns}) % ns;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return static_cast<Symbol>(r % ns) + 1;
        }
    }

private:
    std::uint64_t state_;
};

// Substream for one trial: offset the master seed along the golden-gamma
// orbit so trials are order-independent and individually reproducible.
inline SplitMix64 trial_rng(std::uint64_t seed, std::uint64_t trial_index) {
    return SplitMix64(seed + (trial_index + 1) * 0x9E3779B97F4A7C15ULL);
}

} // namespace setshaping
