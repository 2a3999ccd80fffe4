#pragma once

// SplitMix64: the output is a bit-mix of a counter advanced by the
// golden-ratio increment, so per-instance streams seeded independently
// as mix(seed, instance-id) are stable under any parallel schedule.

#include <cstdint>

namespace salemlab {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Stream seed for one experiment instance.
    static std::uint64_t instance_seed(std::uint64_t seed, std::uint64_t instance) {
        return mix(seed + 0x9E3779B97F4A7C15ull * (instance + 1));
    }

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix(state_);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform in [0, n); fixed-point scaling, deterministic everywhere.
    std::uint64_t next_below(std::uint64_t n) {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next()) * n) >> 64);
    }

    bool next_bool() { return (next() >> 63) != 0; }

private:
    std::uint64_t state_;
};

}  // namespace salemlab
