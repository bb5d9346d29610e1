#pragma once

#include <gtest/gtest.h>

#include "dbgnc/bgn.hpp"
#include "dbgnc/ec.hpp"
#include "dbgnc/rng.hpp"

namespace testutil {

// Minimal GF(5) instance of the curve family: 6 points including O.
// q1/q2/n are irrelevant for pure group-law tests.
inline dbgnc::CurveParams gf5() {
    dbgnc::CurveParams p;
    p.pp = 5;
    p.group_order = 6;
    return p;
}

// Toy deployment curve: q1 = 11, q2 = 13, n = 143, cofactor 6, pp = 857.
inline const dbgnc::CurveParams& toy() {
    static const dbgnc::CurveParams p = dbgnc::generate_parameters(10);
    return p;
}

// Medium deployment: q1, q2 just above 2^64.
inline const dbgnc::CurveParams& medium() {
    static const dbgnc::CurveParams p = dbgnc::generate_parameters(mpz_class(1) << 64);
    return p;
}

inline std::pair<dbgnc::PublicKey, dbgnc::PrivateKey> toy_keys(unsigned long seed = 1001,
                                                               const mpz_class& T = 12) {
    dbgnc::Rng rng(seed);
    return dbgnc::bgn_keygen(toy(), T, rng);
}

inline std::pair<dbgnc::PublicKey, dbgnc::PrivateKey> medium_keys(unsigned long seed = 2002,
                                                                  const mpz_class& T = 100) {
    dbgnc::Rng rng(seed);
    return dbgnc::bgn_keygen(medium(), T, rng);
}

}  // namespace testutil
