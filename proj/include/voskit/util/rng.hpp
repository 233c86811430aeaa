#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace voskit::util {

std::uint64_t splitmix64(std::uint64_t state);
std::uint64_t fnv1a64(std::string_view s);

// Deterministic draws on top of std::mt19937_64. The engine itself is fully
// specified by the standard; the real-valued draws below avoid
// std::uniform_*_distribution, whose output is implementation-defined, so
// equal seeds give equal streams on every platform. The order of draws is
// part of any provenance contract built on this type.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi); returns lo exactly when the range is collapsed.
    double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

    bool bernoulli(double p) { return uniform() < p; }

    // Uniform integer in [0, n), n >= 1. Multiply-shift mapping; the bias is
    // below 2^-64 per draw.
    std::uint64_t below(std::uint64_t n) {
        const unsigned __int128 wide = static_cast<unsigned __int128>(next_u64()) * n;
        return static_cast<std::uint64_t>(wide >> 64);
    }

private:
    std::mt19937_64 engine_;
};

// Stream seed for one clip worker: mixes the global seed, the sequence
// identity, and the clip index so parallel workers never share a stream.
std::uint64_t derive_stream(std::uint64_t global_seed, std::string_view sequence_id,
                            std::uint64_t clip_index, std::uint64_t salt = 0);

} // namespace voskit::util
