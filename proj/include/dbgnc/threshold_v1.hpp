#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "dbgnc/bgn.hpp"
#include "dbgnc/dlog.hpp"
#include "dbgnc/zkp.hpp"

// First distributed BGN: the dealer Shamir-shares q1 over Z_n, each server
// publishes c_i = log_{g0}((d_i - beta_i)*C) together with beta_i = d_i mod q1
// and a share-validity transcript, and the combiner interpolates with
// D-scaled Lagrange coefficients (D = l!) to recover m = log_B(A).
//
// beta_i is computed by the dealer: the decomposition d_i = q1*alpha_i +
// beta_i needs q1, which servers must not hold. The server only ever uses
// d_i - beta_i = q1*alpha_i, so it never learns alpha_i or q1.

namespace dbgnc {

struct ShareKey {
    int index = 0;    // i in [1, l]
    mpz_class d;      // f(i) mod n
    mpz_class beta;   // d mod q1, dealer-computed
    int l = 0;
    int t = 0;
};

struct VerificationKey {
    int index = 0;
    CurvePoint gi;  // d_i * g
};

// Completed run of the share-validity protocol, shipped with the share.
struct ShareProof {
    ZkChallenge challenge;
    ZkSession session;
    ZkResponse response;
};

struct DecryptionShare {
    int index = 0;
    mpz_class c;     // interval log of gamma_i*C to base g0
    mpz_class beta;  // published because the combining sum A needs it
    ShareProof proof;
};

struct LagrangeContext {
    std::vector<int> S;  // participating share indices, |S| = t+1
    int l = 0;
    mpz_class D;  // l!, makes every coefficient an integer
};

inline mpz_class factorial(int l) {
    mpz_class d;
    mpz_fac_ui(d.get_mpz_t(), static_cast<unsigned long>(l));
    return d;
}

inline LagrangeContext make_lagrange_context(std::vector<int> indices, int l) {
    LagrangeContext ctx;
    ctx.S = std::move(indices);
    ctx.l = l;
    ctx.D = factorial(l);
    return ctx;
}

// mu^S_{i,j} = D * prod_{j' in S\{j}} (i - j') / prod_{j' in S\{j}} (j - j').
// Division is exact when D = l!; a remainder indicates a wrong D and is a
// hard error.
inline mpz_class lagrange_mu(const LagrangeContext& ctx, int i, int j) {
    if (std::find(ctx.S.begin(), ctx.S.end(), j) == ctx.S.end()) {
        throw ParameterError("lagrange_mu: j is not in S");
    }
    mpz_class num = ctx.D;
    mpz_class den = 1;
    for (int jp : ctx.S) {
        if (jp == j) continue;
        num *= i - jp;
        den *= j - jp;
    }
    mpz_class quot, rem;
    mpz_tdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (rem != 0) throw Error("lagrange_mu: non-exact division (wrong D)");
    return quot;
}

// Dealing with explicit polynomial coefficients (coeffs[0] = f_0 = q1).
// Exposed so tests and the numerical-example driver can pin the polynomial.
inline std::pair<std::vector<ShareKey>, std::vector<VerificationKey>> deal_with_coefficients(
    const PublicKey& pk, const std::vector<mpz_class>& coeffs, int l, int t) {
    if (t < 1 || t >= l) throw ParameterError("deal requires 1 <= t < l");
    if (static_cast<int>(coeffs.size()) != t + 1) {
        throw ParameterError("deal needs t+1 polynomial coefficients");
    }
    mpz_class gcd;
    mpz_class d_fac = factorial(l);
    mpz_gcd(gcd.get_mpz_t(), d_fac.get_mpz_t(), pk.params.n.get_mpz_t());
    if (gcd != 1) throw ParameterError("l! must be coprime to n");

    std::vector<ShareKey> shares;
    std::vector<VerificationKey> vks;
    for (int i = 1; i <= l; ++i) {
        mpz_class acc = 0;
        for (int j = t; j >= 0; --j) acc = acc * i + coeffs[static_cast<size_t>(j)];
        mpz_class d = mod_p(acc, pk.params.n);
        ShareKey sk;
        sk.index = i;
        sk.d = d;
        sk.beta = mod_p(d, pk.params.q1);
        sk.l = l;
        sk.t = t;
        shares.push_back(std::move(sk));
        vks.push_back(VerificationKey{i, scalar_mul(shares.back().d, pk.g, pk.params)});
    }
    return {shares, vks};
}

// Shamir dealing of q1: f_0 = q1, f_1..f_t uniform in Z_n, d_i = f(i) mod n.
// If any d_i collides with q1 or q2 the whole polynomial is resampled so the
// sharing stays uniform.
inline std::pair<std::vector<ShareKey>, std::vector<VerificationKey>> deal(
    const PublicKey& pk, const PrivateKey& sk, int l, int t, Rng& rng) {
    for (int attempt = 0; attempt < 256; ++attempt) {
        std::vector<mpz_class> coeffs;
        coeffs.push_back(sk.q1);
        for (int j = 0; j < t; ++j) coeffs.push_back(rng.below(pk.params.n));
        auto dealt = deal_with_coefficients(pk, coeffs, l, t);
        bool collided = false;
        for (const auto& share : dealt.first) {
            if (share.d == sk.q1 || share.d == sk.q2) {
                collided = true;
                break;
            }
        }
        if (!collided) return dealt;
    }
    throw RetryExhaustedError("dealing kept producing d_i in {q1, q2}");
}

namespace detail {

// Statement for the share-validity proof: knowing d with
//   gi + lam*(c*g0 + beta*C) == d*(g + lam*C)
// holds exactly when gi = d*g and c*g0 + beta*C = d*C. lam is the smallest
// positive integer keeping both combination points finite, recomputable by
// anyone from public data.
inline std::pair<CurvePoint, CurvePoint> share_statement(const PublicKey& pk,
                                                         const Ciphertext& ct,
                                                         const CurvePoint& gi,
                                                         const mpz_class& c,
                                                         const mpz_class& beta) {
    CurvePoint v = point_add(scalar_mul(c, pk.g0, pk.params), scalar_mul(beta, ct.c, pk.params),
                             pk.params);
    for (int lam = 1; lam <= 64; ++lam) {
        CurvePoint base = point_add(pk.g, scalar_mul(lam, ct.c, pk.params), pk.params);
        CurvePoint point = point_add(gi, scalar_mul(lam, v, pk.params), pk.params);
        if (!base.is_identity() && !point.is_identity()) return {point, base};
    }
    throw RetryExhaustedError("no non-degenerate share statement combination");
}

}  // namespace detail

// Server-side decryption: gamma_i*C computed as (d_i - beta_i)*C, then
// c_i = log_{g0}(gamma_i*C) over [0, c_hi]. The default range is [0, q2-1]
// (the true c_i is uniform modulo q2); callers that can bound c_i, like the
// numerical-example pipeline, pass a tighter c_hi to keep the walk short.
inline DecryptionShare share_decrypt(const ShareKey& share, const PublicKey& pk,
                                     const Ciphertext& ct, const VerificationKey& vk, Rng& rng,
                                     const std::optional<mpz_class>& c_hi = std::nullopt) {
    require_on_curve(ct.c, pk.params);
    mpz_class hi;
    if (c_hi) {
        hi = *c_hi;
    } else if (pk.params.q2 > 0) {
        hi = pk.params.q2 - 1;
    } else {
        hi = pk.params.n - 1;  // q2 unknown: any representative modulo q2 combines the same
    }
    CurvePoint gamma_c = scalar_mul(share.d - share.beta, ct.c, pk.params);
    LogQuery q{pk.g0, gamma_c, 0, hi};
    std::optional<mpz_class> c = pollard_lambda(q, pk.params, rng);
    if (!c) throw NotFoundError("share log not found: malformed ciphertext or bad range");

    auto [statement_point, statement_base] =
        detail::share_statement(pk, ct, vk.gi, *c, share.beta);
    auto [challenge, session] = zk_challenge(statement_point, statement_base, pk.params, rng);
    ZkResponse response = zk_respond(share.d, challenge, pk.params);
    return DecryptionShare{share.index, *c, share.beta, ShareProof{challenge, session, response}};
}

// Transcript check applied by the combiner before a share may enter S.
inline bool verify_decryption_share(const PublicKey& pk, const Ciphertext& ct,
                                    const DecryptionShare& share, const VerificationKey& vk) {
    (void)ct;
    if (share.index != vk.index || share.c < 0) return false;
    const ShareProof& p = share.proof;
    if (p.challenge.a_g.is_identity() || !is_on_curve(p.challenge.a_g, pk.params)) return false;
    if (p.challenge.t1 == 0 || p.challenge.t2 == 0) return false;
    if (p.response.z1 == 0 || p.response.z2 == 0) return false;
    if (!is_on_curve(CurvePoint(p.session.b1, p.session.b2), pk.params)) return false;
    return zk_verify(p.session, p.response);
}

// Combining: discard shares whose transcript fails, take the t+1 valid
// shares with the lowest indices as S, and recover
//   m = log_B(A),  B = sum mu_{0,j}*g_j,  A = sum mu_{0,j}*(c_j*g0 + beta_j*C).
inline mpz_class combine(const PublicKey& pk, const Ciphertext& ct,
                         const std::vector<DecryptionShare>& shares,
                         const std::vector<VerificationKey>& vks, int l, int t, Rng& rng) {
    require_on_curve(ct.c, pk.params);
    std::map<int, const VerificationKey*> vk_by_index;
    for (const auto& vk : vks) vk_by_index[vk.index] = &vk;

    std::vector<const DecryptionShare*> valid;
    for (const auto& share : shares) {
        auto it = vk_by_index.find(share.index);
        if (it == vk_by_index.end()) continue;
        if (verify_decryption_share(pk, ct, share, *it->second)) valid.push_back(&share);
    }
    std::sort(valid.begin(), valid.end(),
              [](const DecryptionShare* a, const DecryptionShare* b) {
                  return a->index < b->index;
              });
    if (static_cast<int>(valid.size()) < t + 1) {
        throw InsufficientSharesError("fewer than t+1 valid decryption shares");
    }
    valid.resize(static_cast<size_t>(t) + 1);

    std::vector<int> indices;
    for (const auto* share : valid) indices.push_back(share->index);
    LagrangeContext ctx = make_lagrange_context(indices, l);

    CurvePoint b_sum = CurvePoint::identity();
    CurvePoint a_sum = CurvePoint::identity();
    for (const auto* share : valid) {
        mpz_class mu = lagrange_mu(ctx, 0, share->index);
        const CurvePoint& gi = vk_by_index[share->index]->gi;
        CurvePoint contribution =
            point_add(scalar_mul(share->c, pk.g0, pk.params),
                      scalar_mul(share->beta, ct.c, pk.params), pk.params);
        b_sum = point_add(b_sum, scalar_mul(mu, gi, pk.params), pk.params);
        a_sum = point_add(a_sum, scalar_mul(mu, contribution, pk.params), pk.params);
    }
    if (b_sum.is_identity()) throw Error("combine: degenerate base B = O");

    LogQuery q{b_sum, a_sum, 0, pk.T};
    std::optional<mpz_class> m = pollard_lambda(q, pk.params, rng);
    if (!m) throw NotFoundError("combine: no plaintext in [0, T]");
    return *m;
}

}  // namespace dbgnc
