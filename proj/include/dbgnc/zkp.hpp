#pragma once

#include <utility>

#include "dbgnc/ec.hpp"
#include "dbgnc/errors.hpp"
#include "dbgnc/rng.hpp"

// Interactive proof that the prover holds the secret s behind a public
// verification point vk = s*g. The verifier draws a and b, publishes
// (a*g, t1, t2) with t = coords(a*vk) .* coords(b*g), and keeps coords(b*g).
// The prover divides t by coords(s*(a*g)); the response equals the retained
// coordinates exactly when the secret matches. The protocol multiplies and
// inverts coordinates, so the identity and points with a zero coordinate are
// excluded by resampling.

namespace dbgnc {

struct ZkChallenge {
    CurvePoint a_g;  // a*g, sent to the prover
    mpz_class t1;
    mpz_class t2;
};

struct ZkSession {
    mpz_class b1;  // coordinates of b*g, retained by the verifier
    mpz_class b2;
};

struct ZkResponse {
    mpz_class z1;
    mpz_class z2;
};

namespace detail {

inline bool zk_degenerate(const CurvePoint& p) {
    return p.is_identity() || p.x == 0 || p.y == 0;
}

}  // namespace detail

// Verifier side, step 1-3. vk = s*g is the prover's public point; a and b are
// drawn from [1, n-1], n being the order bound of the working subgroup.
inline std::pair<ZkChallenge, ZkSession> zk_challenge(const CurvePoint& vk, const CurvePoint& g,
                                                      const CurveParams& params, Rng& rng) {
    require_on_curve(vk, params);
    require_on_curve(g, params);
    if (vk.is_identity() || g.is_identity()) {
        throw ParameterError("zk_challenge requires finite vk and g");
    }
    for (int attempt = 0; attempt < 256; ++attempt) {
        mpz_class a = rng.range(1, params.n - 1);
        mpz_class b = rng.range(1, params.n - 1);
        CurvePoint a_vk = scalar_mul(a, vk, params);
        CurvePoint a_g = scalar_mul(a, g, params);
        CurvePoint b_g = scalar_mul(b, g, params);
        if (detail::zk_degenerate(a_vk) || detail::zk_degenerate(a_g) ||
            detail::zk_degenerate(b_g)) {
            continue;
        }
        ZkChallenge ch{a_g, mod_p(a_vk.x * b_g.x, params.pp), mod_p(a_vk.y * b_g.y, params.pp)};
        ZkSession sess{b_g.x, b_g.y};
        return {ch, sess};
    }
    throw RetryExhaustedError("zk_challenge could not avoid degenerate points");
}

// Prover side, steps 4-5: z = t ./ coords(s*(a*g)).
inline ZkResponse zk_respond(const mpz_class& s, const ZkChallenge& ch,
                             const CurveParams& params) {
    CurvePoint r = scalar_mul(s, ch.a_g, params);
    if (detail::zk_degenerate(r)) {
        throw DegeneratePointError("s*(a*g) is degenerate; reissue the challenge");
    }
    return ZkResponse{mod_p(ch.t1 * inv_mod(r.x, params.pp), params.pp),
                      mod_p(ch.t2 * inv_mod(r.y, params.pp), params.pp)};
}

inline bool zk_verify(const ZkSession& sess, const ZkResponse& resp) {
    return resp.z1 == sess.b1 && resp.z2 == sess.b2;
}

}  // namespace dbgnc
