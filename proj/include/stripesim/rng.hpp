// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string_view>

namespace stripesim {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

} // namespace detail

// Seeded generator with a stable cross-platform stream: xoshiro256** 1.0
// (Blackman & Vigna, public domain), state initialized via splitmix64.
// std::mt19937 plus the <random> distributions would not do here because the
// standard leaves distribution algorithms implementation-defined; every draw
// below is explicit arithmetic on the raw generator output, so the sequence
// produced by (seed, calls) is identical on every platform and toolchain.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = detail::splitmix64(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform double in [0, 1), 53 random bits.
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [lo, hi], inclusive, unbiased via rejection.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        if (lo > hi) throw std::invalid_argument("uniform_int: lo > hi");
        const std::uint64_t range = std::uint64_t(hi) - std::uint64_t(lo) + 1;
        if (range == 0) return std::int64_t(next_u64()); // full 64-bit span
        const std::uint64_t limit = range * (~std::uint64_t(0) / range);
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return lo + std::int64_t(x % range);
    }

    // Box-Muller without spare caching, so the draw count per call is fixed.
    double normal(double mean, double sigma) {
        const double u1 = double((next_u64() >> 11) + 1) * 0x1.0p-53; // (0, 1]
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        return mean + sigma * radius * std::cos(6.283185307179586476925286766559 * u2);
    }

    // Inverse-CDF exponential with the given rate (mean 1/rate).
    double exponential(double rate) {
        if (rate <= 0) throw std::invalid_argument("exponential: rate must be > 0");
        return -std::log(1.0 - uniform()) / rate;
    }

    // Independent stream derived from the original seed and an id; the
    // derivation ignores how many draws were made on this instance.
    Rng substream(std::uint64_t id) const {
        std::uint64_t sm = seed_ ^ 0x5851f42d4c957f2dull;
        sm += id * 0x14057b7ef767814full;
        std::uint64_t derived = detail::splitmix64(sm);
        derived ^= detail::splitmix64(sm);
        return Rng(derived);
    }

    Rng substream(std::string_view label) const {
        return substream(detail::fnv1a64(label));
    }

    std::uint64_t seed() const { return seed_; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t seed_;
    std::array<std::uint64_t, 4> state_{};
};

// Named stream derivation for wiring one global seed to independent consumers.
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view label) {
    return Rng(seed).substream(label).seed();
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t id) {
    return Rng(seed).substream(id).seed();
}

} // namespace stripesim
