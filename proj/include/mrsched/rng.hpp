#pragma once

#include <cstdint>
#include <random>

namespace mrsched {

// Deterministic random source shared by everything that draws.
//
// The generator is std::mt19937_64 seeded with one explicit 64-bit seed,
// and all reductions are implemented here rather than through
// std::uniform_*_distribution, whose output is not pinned by the standard.
// Same seed, same draw sequence, on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1), 53 mantissa bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Uniform in (0, hi]: the open-at-zero mirror of uniform01.
    double uniform_pos(double hi) { return hi * (1.0 - uniform01()); }

    // Uniform integer in [lo, hi], modulo reduction.
    std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) {
        return lo + next_u64() % (hi - lo + 1);
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace mrsched
