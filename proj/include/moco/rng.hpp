#pragma once

#include <cassert>
#include <cstdint>
#include <random>

namespace moco {

// Seeded generator with fully specified draw algorithms. std::mt19937_64 is
// bit-exact everywhere, but the standard distributions are not; the bounded
// draws below are spelled out so identical seeds give identical streams on any
// toolchain.
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t next() { return eng_(); }

    // Uniform in [lo, hi], inclusive. Rejection sampling, no modulo bias.
    int64_t uniform(int64_t lo, int64_t hi) {
        assert(lo <= hi);
        uint64_t range = static_cast<uint64_t>(hi - lo);
        if (range == UINT64_MAX) return static_cast<int64_t>(next());
        uint64_t bound = range + 1;
        uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return lo + static_cast<int64_t>(x % bound);
    }

    // Uniform in [0, 1) with 53 bits of precision.
    double uniform01() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    bool chance(double p) { return uniform01() < p; }

private:
    std::mt19937_64 eng_;
};

}  // namespace moco
