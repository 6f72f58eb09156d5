#pragma once

#include <cstdint>

namespace lpt {

// splitmix64 (Steele/Lea/Flood constants). The one generator used across the
// project so sample streams do not depend on standard-library internals.
struct SplitMix64 {
    uint64_t state;

    explicit SplitMix64(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // uniform integer in [lo, hi], inclusive. Modulo bias is irrelevant for
    // the tiny spans used here (alphabet sizes, pixel widths, QF levels).
    int64_t uniform_int(int64_t lo, int64_t hi) {
        uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
        return lo + static_cast<int64_t>(next() % span);
    }
};

inline uint64_t hash_mix(uint64_t a, uint64_t b) {
    SplitMix64 s(a);
    SplitMix64 t(s.next() ^ (b + 0x9e3779b97f4a7c15ULL));
    return t.next();
}

inline uint64_t fnv1a64(const char* data, size_t len) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (size_t i = 0; i < len; ++i) {
        h ^= static_cast<unsigned char>(data[i]);
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Counter-based stream: draw i is a pure function of (seed, i). Used for
// dropout masks and weight init so runs replay exactly and adding a parameter
// does not shift the draws of the others.
struct RngStream {
    uint64_t seed;
    uint64_t counter = 0;

    explicit RngStream(uint64_t s) : seed(s) {}

    uint64_t next() { return hash_mix(seed, counter++); }

    double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // uniform in [-limit, limit)
    double uniform_sym(double limit) { return (2.0 * u01() - 1.0) * limit; }
};

}  // namespace lpt
