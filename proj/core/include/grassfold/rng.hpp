#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "grassfold/rational.hpp"

namespace grassfold {

// Deterministic seeded generator for witness search and sampling. Every
// randomized procedure in the library derives its stream from an explicit
// seed plus a context tag so results are reproducible bit for bit.
class Rng {
  public:
    explicit Rng(uint64_t seed) : g_(seed) {}

    static uint64_t mix(uint64_t seed, const std::string& tag) {
        uint64_t h = seed ^ 0x9e3779b97f4a7c15ULL;
        for (unsigned char c : tag) {
            h ^= c;
            h *= 0x100000001b3ULL;
            h ^= h >> 29;
        }
        return h;
    }

    uint64_t next() { return g_(); }

    long integer(long lo, long hi) {
        std::uniform_int_distribution<long> d(lo, hi);
        return d(g_);
    }

    // Rational of height <= h: numerator in [-h, h], denominator in [1, 8].
    Rat rational(long h) {
        long num = integer(-h, h);
        long den = integer(1, 8);
        Rat r(num, den);
        r.canonicalize();
        return r;
    }

    Rat nonzero_rational(long h) {
        for (;;) {
            Rat r = rational(h);
            if (r != 0) return r;
        }
    }

  private:
    std::mt19937_64 g_;
};

}  // namespace grassfold
