#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "entsim/cmatrix.hpp"

namespace entsim {

/// SplitMix64 output function; also used to derive substream seeds.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// xoshiro256** generator, seeded through SplitMix64. All distributions are
/// implemented here rather than via <random> so that streams are
/// bit-reproducible for a given build.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64_next(sm);
    }

    /// Generator for item `index` of a keyed stream: seeds with the
    /// (index+1)-th SplitMix64 output of `seed`. Used for per-sample
    /// dataset substreams.
    static Rng substream(std::uint64_t seed, std::uint64_t index) {
        std::uint64_t sm = seed + index * 0x9E3779B97F4A7C15ULL;
        return Rng(splitmix64_next(sm));
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform angle in [0, 2*pi).
    double angle() { return uniform() * 6.283185307179586476925286766559; }

    /// Exp(1), via inversion; uniform() < 1 keeps the log argument positive.
    double exponential() { return -std::log(1.0 - uniform()); }

    /// Pair of independent N(0,1) draws (Box-Muller).
    std::pair<double, double> normal_pair() {
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
        const double a = 6.283185307179586476925286766559 * u2;
        return {r * std::cos(a), r * std::sin(a)};
    }

    /// Complex with independent N(0,1) real and imaginary parts.
    Complex standard_normal_complex() {
        auto [re, im] = normal_pair();
        return {re, im};
    }

    /// Unbiased integer in [0, n) by rejection.
    std::uint64_t uniform_index(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % n;
    }

    /// Fisher-Yates shuffle with this generator.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::uint64_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[uniform_index(i)]);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
};

}  // namespace entsim
