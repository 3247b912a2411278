#pragma once

#include <cstdint>

namespace spinpair {

// Deterministic counter-style generator built on the splitmix64 finalizer
// (Steele, Lea, Flood 2014). Every Monte Carlo loop in this project draws
// from a per-sample substream derived from (seed, sample index), so results
// are independent of how a loop is partitioned across workers.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Substream for one sample: decorrelates (seed, stream) pairs so that
// stream i can be drawn without generating streams 0..i-1.
inline Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
    return Rng(mix64(seed ^ mix64(stream + 0x632BE59BD9B4E019ULL)));
}

}  // namespace spinpair
