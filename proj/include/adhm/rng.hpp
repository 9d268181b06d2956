#pragma once

#include <cstdint>
#include <random>

#include "adhm/scalar.hpp"

namespace adhm {

// Deterministic seeded source. Raw mt19937_64 output only; the standard
// distributions are implementation-defined, so sampling stays in-house to
// keep reports byte-identical across platforms.
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    uint64_t next() { return gen_(); }

    // inclusive bounds
    long int_in(long lo, long hi) {
        return lo + static_cast<long>(next() % static_cast<uint64_t>(hi - lo + 1));
    }

    // small rational with numerator in [-num_max, num_max] and denominator
    // in [1, den_max]
    Scalar rational(long num_max = 3, long den_max = 2) {
        return Scalar::rational(int_in(-num_max, num_max), int_in(1, den_max));
    }

    Scalar nonzero_rational(long num_max = 3, long den_max = 2) {
        for (;;) {
            Scalar s = rational(num_max, den_max);
            if (!s.is_zero()) return s;
        }
    }

    Rng derived(uint64_t index) const {
        // decorrelate per-item streams
        uint64_t s = seed_mix_ ^ (0x9e3779b97f4a7c15ULL * (index + 1));
        return Rng(s);
    }

    void note_seed(uint64_t s) { seed_mix_ = s; }

private:
    std::mt19937_64 gen_;
    uint64_t seed_mix_ = 0;
};

inline Rng make_rng(uint64_t seed) {
    Rng r(seed);
    r.note_seed(seed);
    return r;
}

}  // namespace adhm
