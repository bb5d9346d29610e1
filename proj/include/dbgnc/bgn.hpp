#pragma once

#include <optional>
#include <utility>

#include "dbgnc/dlog.hpp"
#include "dbgnc/ec.hpp"
#include "dbgnc/rng.hpp"

// The base Boneh-Goh-Nissim cryptosystem on the order-n subgroup of the
// engineered curve: C = m*g + r*h with h of order q1, decrypted by projecting
// with q1 and taking a small interval log to base g0 = q1*g.

namespace dbgnc {

struct PrivateKey {
    mpz_class q1;
    mpz_class q2;
};

struct PublicKey {
    CurveParams params;
    CurvePoint g;   // order n
    CurvePoint u;   // order n, independent of g
    CurvePoint h;   // q2*u, order q1
    CurvePoint g0;  // q1*g, order q2
    mpz_class T;    // message bound, 0 < T < q2
};

struct Ciphertext {
    CurvePoint c;
};

inline std::pair<PublicKey, PrivateKey> bgn_keygen(const CurveParams& params, const mpz_class& T,
                                                   Rng& rng) {
    if (T <= 0 || T >= params.q2) {
        throw ParameterError("message bound T must satisfy 0 < T < q2");
    }
    PublicKey pk;
    pk.params = params;
    pk.T = T;
    pk.g = sample_point_of_order_n(params, rng);
    // Reject u in {g, -g} so h and g0 are not trivially related.
    do {
        pk.u = sample_point_of_order_n(params, rng);
    } while (pk.u == pk.g || pk.u == point_neg(pk.g, params));
    pk.h = scalar_mul(params.q2, pk.u, params);
    pk.g0 = scalar_mul(params.q1, pk.g, params);
    return {pk, PrivateKey{params.q1, params.q2}};
}

inline Ciphertext bgn_encrypt_with_r(const PublicKey& pk, const mpz_class& m,
                                     const mpz_class& r) {
    if (m < 0 || m > pk.T) throw ParameterError("plaintext outside [0, T]");
    CurvePoint c = point_add(scalar_mul(m, pk.g, pk.params), scalar_mul(r, pk.h, pk.params),
                             pk.params);
    return Ciphertext{c};
}

inline Ciphertext bgn_encrypt(const PublicKey& pk, const mpz_class& m, Rng& rng) {
    return bgn_encrypt_with_r(pk, m, rng.below(pk.params.n));
}

// m = log_{q1*g}(q1*C) over [0, T]; nullopt signals an out-of-range or
// malformed ciphertext.
inline std::optional<mpz_class> bgn_decrypt(const PublicKey& pk, const PrivateKey& sk,
                                            const Ciphertext& ct, Rng& rng) {
    require_on_curve(ct.c, pk.params);
    CurvePoint target = scalar_mul(sk.q1, ct.c, pk.params);
    LogQuery q{pk.g0, target, 0, pk.T};
    return pollard_lambda(q, pk.params, rng);
}

inline Ciphertext ct_add(const PublicKey& pk, const Ciphertext& a, const Ciphertext& b) {
    return Ciphertext{point_add(a.c, b.c, pk.params)};
}

}  // namespace dbgnc
