#pragma once

#include <cstdint>
#include <vector>

namespace chalsim {

// Deterministic PRNG for simulation trials. splitmix64 with rejection-sampled
// bounded draws; std::uniform_* distributions are implementation-defined, so
// identical seeds must not depend on the standard library for reproducibility.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n); n > 0. Rejection sampling keeps the draw unbiased.
    uint64_t bounded(uint64_t n) {
        uint64_t threshold = (0 - n) % n;
        for (;;) {
            uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

    // Uniform in [0, n] inclusive.
    int64_t bounded_inclusive(int64_t n) {
        return static_cast<int64_t>(bounded(static_cast<uint64_t>(n) + 1));
    }

    // Fisher-Yates in place.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(bounded(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    uint64_t state_;
};

// Per-trial stream derivation: trial t of a scenario seeded s gets an
// independent deterministic stream regardless of worker assignment.
inline uint64_t trial_seed(uint64_t scenario_seed, uint64_t trial_index) {
    uint64_t x = scenario_seed ^ (0x6A09E667F3BCC909ULL + trial_index * 0x9E3779B97F4A7C15ULL);
    x ^= x >> 33;
    x *= 0xFF51AFD7ED558CCDULL;
    x ^= x >> 33;
    x *= 0xC4CEB9FE1A85EC53ULL;
    x ^= x >> 33;
    return x;
}

} // namespace chalsim
