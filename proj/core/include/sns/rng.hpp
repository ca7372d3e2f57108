#pragma once

#include <cstdint>

namespace sns::rng {

/// splitmix64 finalizer.
inline std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Documented seed split: substream `tag` of stream `seed`. Used for noise
/// channels, Monte Carlo samples and initial-datum phases, so adding streams
/// never reshuffles existing ones.
inline std::uint64_t seed_split(std::uint64_t seed, std::uint64_t tag) {
    return mix(seed ^ mix(tag + 1));
}

/// Counter-based stream: value i of the stream is mix(seed + (i+1)*golden).
/// Stateless given (seed, i); the Stream below just tracks the counter.
class Stream {
public:
    explicit Stream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform on (0, 1] (never zero, safe for log).
    double next_uniform() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1p-53;
    }

    /// Standard normal pair via Box-Muller.
    void next_normal_pair(double& z0, double& z1);

    /// Single standard normal (draws a pair, caches the second).
    double next_normal();

private:
    std::uint64_t state_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

void box_muller(double u1, double u2, double& z0, double& z1);

inline void Stream::next_normal_pair(double& z0, double& z1) {
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    box_muller(u1, u2, z0, z1);
}

inline double Stream::next_normal() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    double z0, z1;
    next_normal_pair(z0, z1);
    cached_ = z1;
    has_cached_ = true;
    return z0;
}

}  // namespace sns::rng
