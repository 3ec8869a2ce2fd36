// Deterministic random number generation.
//
// The generator is xoshiro256++ 1.0 (Blackman & Vigna), seeded through
// splitmix64 (Steele, Lea & Flood) exactly as the xoshiro authors recommend.
// Both algorithms are public-domain reference designs with published test
// vectors, so any implementation in any language that follows them produces
// the same stream for the same 64-bit seed.
//
// Parallel shot batches use derive_stream(seed, batch_index) to obtain
// independent sub-streams; merging batch results in batch order makes the
// parallel and sequential runs bit-identical.
#pragma once

#include <array>
#include <cstdint>

namespace bellparity::rng {

inline constexpr std::uint64_t splitmix64_next(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Sub-stream seed for (seed, index): one splitmix64 step over the pair.
inline constexpr std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index) noexcept {
    std::uint64_t s = seed + 0x9E3779B97F4A7C15ull * (index + 1);
    return splitmix64_next(s);
}

class Xoshiro256pp {
public:
    explicit constexpr Xoshiro256pp(std::uint64_t seed) noexcept {
        for (auto& w : state_) w = splitmix64_next(seed);
    }

    constexpr std::uint64_t next() noexcept {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform double in [0, 1): top 53 bits of the 64-bit output.
    constexpr double uniform01() noexcept { return (next() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    constexpr double uniform(double lo, double hi) noexcept {
        return lo + (hi - lo) * uniform01();
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t v, int k) noexcept {
        return (v << k) | (v >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
};

}  // namespace bellparity::rng
