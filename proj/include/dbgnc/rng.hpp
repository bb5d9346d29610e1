#pragma once

#include <gmpxx.h>

#include <cstdint>

namespace dbgnc {

// Deterministic randomness source for every sampling operation in the
// library. Wraps GMP's Mersenne Twister so arbitrary-precision draws are
// reproducible from a 64-bit seed, which the tests and the benchmark rely on.
class Rng {
public:
    explicit Rng(unsigned long seed) : state_(gmp_randinit_mt) { state_.seed(seed); }

    // Uniform in [0, bound). bound must be positive.
    mpz_class below(const mpz_class& bound) { return state_.get_z_range(bound); }

    // Uniform in [lo, hi] inclusive.
    mpz_class range(const mpz_class& lo, const mpz_class& hi) {
        return lo + below(hi - lo + 1);
    }

    std::uint64_t word() {
        mpz_class w = state_.get_z_bits(64);
        std::uint64_t out = 0;
        mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, w.get_mpz_t());
        return out;
    }

private:
    gmp_randclass state_;
};

// SplitMix64 finalizer; used to derive independent sub-seeds and to hash
// walk positions in the kangaroo solver.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace dbgnc
