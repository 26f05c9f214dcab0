#pragma once

#include <cstdint>
#include <random>

namespace coverlab {

/// Deterministic seeded generator used for every stochastic operation.
/// Engine: std::mt19937_64 (output sequence fixed by the standard), seeded
/// through one SplitMix64 step so that nearby seeds decorrelate. Bounded
/// draws use rejection below a power-of-two mask, so results are identical
/// on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n) {
        std::uint64_t mask = n - 1;
        mask |= mask >> 1;  mask |= mask >> 2;  mask |= mask >> 4;
        mask |= mask >> 8;  mask |= mask >> 16; mask |= mask >> 32;
        for (;;) {
            std::uint64_t x = engine_() & mask;
            if (x < n) return x;
        }
    }

    /// Derive an independent stream, e.g. one per sampling shard.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
        return splitmix64(seed + 0x9e3779b97f4a7c15ULL * (stream + 1));
    }

private:
    static std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::mt19937_64 engine_;
};

} // namespace coverlab
