#pragma once

#include <cstdint>

namespace quadweb {

/// splitmix64 finalizer.  Bijective on uint64, good avalanche, and tiny;
/// we only need reproducible streams, not cryptographic strength.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic generator used everywhere randomness appears.  Every
/// consumer derives its own stream from (seed, stream id), so adding a
/// draw in one place never shifts the values another place sees.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    /// Independent stream for sub-task `stream` of run `seed`.
    static Rng derive(std::uint64_t seed, std::uint64_t stream) {
        return Rng(mix64(seed) ^ mix64(stream + 0x715cdd3c9fe2c3a1ULL));
    }

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, bound).  Rejection keeps it unbiased.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound * ((~0ULL) / bound);
        std::uint64_t v = next();
        while (v >= limit) v = next();
        return v % bound;
    }

private:
    std::uint64_t state_;
};

}  // namespace quadweb
