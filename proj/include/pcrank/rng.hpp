#pragma once

#include <cmath>
#include <cstdint>

namespace pcrank {

/// SplitMix64 step; used both as a tiny standalone generator and to mix
/// stream identifiers into derived seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Small deterministic generator with portable output. Every random draw in
/// the library goes through this type so results do not depend on standard
/// library distribution internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) noexcept {
        // Two splitmix steps decorrelate adjacent seeds.
        std::uint64_t s = seed;
        state_[0] = splitmix64(s);
        state_[1] = splitmix64(s);
    }

    /// xoshiro-style 64-bit output (xorshift128+ variant).
    std::uint64_t next_u64() noexcept {
        std::uint64_t x = state_[0];
        const std::uint64_t y = state_[1];
        state_[0] = y;
        x ^= x << 23;
        state_[1] = x ^ y ^ (x >> 17) ^ (y >> 26);
        return state_[1] + y;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) noexcept {
        return lo + (hi - lo) * uniform();
    }

    /// Unbiased uniform integer in [0, bound); bound > 0.
    std::uint64_t uniform_below(std::uint64_t bound) noexcept {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    /// Log-uniform double on [lo, hi]; lo, hi > 0.
    double log_uniform(double lo, double hi) noexcept {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }

private:
    std::uint64_t state_[2];
};

/// Derives an independent stream seed from a master seed and up to four
/// stream coordinates (trial ids, group ids, ...). Trials seeded this way
/// are order-independent, which keeps experiment output identical for any
/// worker count.
inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::uint64_t a,
                                 std::uint64_t b = 0,
                                 std::uint64_t c = 0,
                                 std::uint64_t d = 0) noexcept {
    std::uint64_t s = master;
    splitmix64(s);
    s ^= 0x8f1bbcdc4d9f2d10ULL + a;
    splitmix64(s);
    s ^= 0x2545f4914f6cdd1dULL + b;
    splitmix64(s);
    s ^= 0x27d4eb2f165667c5ULL + c;
    splitmix64(s);
    s ^= 0x9e3779b97f4a7c15ULL + d;
    return splitmix64(s);
}

}  // namespace pcrank
