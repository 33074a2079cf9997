#pragma once

// Random number generation with a fixed, documented algorithm so that every
// platform reproduces the same streams bit for bit.
//
//   seeding:    SplitMix64 (Steele, Lea, Flood 2014), golden-ratio increment
//   generator:  xoshiro256** 1.0 (Blackman, Vigna 2018)
//   doubles:    top 53 bits of a 64-bit draw scaled by 2^-53, giving [0, 1)
//   integers:   Lemire's multiply-shift with rejection, exactly uniform on [0, n)
//
// Nothing here goes through <random> distributions, whose output is
// implementation defined.

#include <array>
#include <cstdint>

namespace pacp {

__extension__ using uint128 = unsigned __int128;

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

// SplitMix64 output function (the variant-13 finalizer of MurmurHash3).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next() noexcept {
        state_ += kGoldenGamma;
        return mix64(state_);
    }

private:
    std::uint64_t state_;
};

class Xoshiro256ss {
public:
    using result_type = std::uint64_t;

    explicit constexpr Xoshiro256ss(std::uint64_t seed) noexcept : s_{} {
        SplitMix64 sm(seed);
        for (auto& word : s_) word = sm.next();
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    constexpr result_type operator()() noexcept { return next(); }

    constexpr std::uint64_t next() noexcept {
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

    // Uniform on [0, 1) with 53 random bits.
    constexpr double uniform01() noexcept {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // Uniform on {0, ..., bound - 1}; bound must be positive.
    std::uint64_t below(std::uint64_t bound) noexcept {
        uint128 product = static_cast<uint128>(next()) * bound;
        auto low = static_cast<std::uint64_t>(product);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                product = static_cast<uint128>(next()) * bound;
                low = static_cast<std::uint64_t>(product);
            }
        }
        return static_cast<std::uint64_t>(product >> 64);
    }

    [[nodiscard]] constexpr const std::array<std::uint64_t, 4>& state() const noexcept {
        return s_;
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> s_;
};

// Seed for replicate `replicate` of graph size `n` in an experiment keyed by
// `master`. Stateless, so any worker can derive any task's stream:
//
//   h = mix64(master + golden)
//   h = mix64(h ^ (n * golden))
//   h = mix64(h ^ ((replicate + 1) * 0xD1B54A32D192ED03))
constexpr std::uint64_t replicate_seed(std::uint64_t master, std::uint64_t n,
                                       std::uint64_t replicate) noexcept {
    std::uint64_t h = mix64(master + kGoldenGamma);
    h = mix64(h ^ (n * kGoldenGamma));
    h = mix64(h ^ ((replicate + 1) * 0xD1B54A32D192ED03ULL));
    return h;
}

}  // namespace pacp
