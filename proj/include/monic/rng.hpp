#ifndef MONIC_RNG_HPP
#define MONIC_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "monic/matrix.hpp"

namespace monic {

// Seeded source of generic sample points. Genericity choices draw complex
// numbers with integer real/imaginary parts in [-999, 999]; the required open
// conditions are verified afterwards, so the output is certified regardless
// of sampling luck.
class Rng {
   public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::int64_t integer(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(gen_);
    }

    Complex generic_complex() {
        return Complex(static_cast<double>(integer(-999, 999)), static_cast<double>(integer(-999, 999)));
    }

    // small-magnitude complex with integer parts, nonzero
    Complex small_complex(std::int64_t bound = 9) {
        for (;;) {
            Complex c(static_cast<double>(integer(-bound, bound)), static_cast<double>(integer(-bound, bound)));
            if (c != Complex(0, 0)) return c;
        }
    }

    CMat generic_vector(std::size_t n) {
        CMat v(n, 1, Complex(0, 0));
        for (std::size_t i = 0; i < n; ++i) v.at(i, 0) = generic_complex();
        return v;
    }

    double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }

    // independent substream; label decorrelates forks taken at the same state
    Rng fork(std::uint64_t label) {
        std::uint64_t s = gen_() ^ (label * 0x9e3779b97f4a7c15ull);
        return Rng(s);
    }

    std::mt19937_64& engine() { return gen_; }

   private:
    std::mt19937_64 gen_;
};

}  // namespace monic

#endif
