#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <utility>

#include "dbgnc/errors.hpp"
#include "dbgnc/rng.hpp"

// Prime-field and elliptic-curve group arithmetic over the supersingular
// family y^2 = x^3 + 1 on GF(pp) with pp = 2 (mod 3), plus the parameter
// search that engineers a curve of order pp + 1 = cofactor * q1 * q2.

namespace dbgnc {

// Group-operation instrumentation. A counter is attached to a CurveParams
// copy for the duration of one benchmark run or test; it is not global
// state. point_additions counts every group-law evaluation, including
// identity and inverse shortcuts; lambda_calls counts interval-log solver
// invocations.
struct OpCounter {
    std::uint64_t point_additions = 0;
    std::uint64_t lambda_calls = 0;
};

struct CurvePoint {
    mpz_class x;
    mpz_class y;
    bool infinity = true;

    CurvePoint() = default;
    CurvePoint(mpz_class px, mpz_class py)
        : x(std::move(px)), y(std::move(py)), infinity(false) {}

    static CurvePoint identity() { return CurvePoint(); }
    bool is_identity() const { return infinity; }

    friend bool operator==(const CurvePoint& a, const CurvePoint& b) {
        if (a.infinity != b.infinity) return false;
        if (a.infinity) return true;
        return a.x == b.x && a.y == b.y;
    }
    friend bool operator!=(const CurvePoint& a, const CurvePoint& b) { return !(a == b); }
};

struct CurveParams {
    mpz_class q1;           // prime factor of n (secret in deployments)
    mpz_class q2;           // prime factor of n (secret in deployments)
    mpz_class n;            // q1 * q2, order of the working subgroup
    mpz_class cofactor;     // the l of the search loop: pp + 1 = cofactor * n
    mpz_class pp;           // field prime, pp = cofactor * n - 1, pp = 2 (mod 3)
    mpz_class group_order;  // pp + 1
    OpCounter* counter = nullptr;

    CurveParams with_counter(OpCounter* c) const {
        CurveParams out = *this;
        out.counter = c;
        return out;
    }
};

// --- field helpers ---------------------------------------------------------

inline mpz_class mod_p(const mpz_class& v, const mpz_class& p) {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
    return r;
}

inline mpz_class inv_mod(const mpz_class& v, const mpz_class& p) {
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t()) == 0) {
        throw Error("modular inverse does not exist");
    }
    return r;
}

inline mpz_class pow_mod(const mpz_class& b, const mpz_class& e, const mpz_class& p) {
    mpz_class r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    return r;
}

// --- primality and parameter generation ------------------------------------

// Trial division by small primes, then 64 Miller-Rabin rounds (error < 2^-128).
inline bool is_probable_prime(const mpz_class& x) {
    static const int kSmallPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                       43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
    if (x < 2) return false;
    for (int p : kSmallPrimes) {
        if (x == p) return true;
        if (mpz_divisible_ui_p(x.get_mpz_t(), p)) return false;
    }
    return mpz_probab_prime_p(x.get_mpz_t(), 64) != 0;
}

// Smallest prime strictly greater than x.
inline mpz_class next_prime(const mpz_class& x) {
    if (x < 0) throw ParameterError("next_prime requires x >= 0");
    if (x < 2) return 2;
    mpz_class c = x + 1;
    if (mpz_even_p(c.get_mpz_t())) ++c;
    while (!is_probable_prime(c)) c += 2;
    return c;
}

// The parameter search: q1 = next_prime(q1_seed), q2 = next_prime(q1),
// then the smallest cofactor l >= 1 such that pp = l*q1*q2 - 1 is prime and
// pp != 1 (mod 3). The resulting curve y^2 = x^3 + 1 over GF(pp) is
// supersingular with exactly pp + 1 points, so it contains a subgroup of
// order n = q1*q2. The search is deterministic in q1_seed.
inline CurveParams generate_parameters(const mpz_class& q1_seed) {
    CurveParams params;
    params.q1 = next_prime(q1_seed);
    params.q2 = next_prime(params.q1);
    if (params.q1 == params.q2) {
        throw ParameterError("q1_seed produced q1 == q2");
    }
    params.n = params.q1 * params.q2;
    params.cofactor = 1;
    params.pp = params.n - 1;
    while (params.pp <= 3 || !is_probable_prime(params.pp) || params.pp % 3 == 1) {
        ++params.cofactor;
        params.pp = params.cofactor * params.n - 1;
    }
    params.group_order = params.pp + 1;
    return params;
}

// --- curve group law --------------------------------------------------------

inline bool is_on_curve(const CurvePoint& p, const CurveParams& params) {
    if (p.is_identity()) return true;
    if (p.x < 0 || p.x >= params.pp || p.y < 0 || p.y >= params.pp) return false;
    mpz_class lhs = mod_p(p.y * p.y, params.pp);
    mpz_class rhs = mod_p(p.x * p.x * p.x + 1, params.pp);
    return lhs == rhs;
}

inline void require_on_curve(const CurvePoint& p, const CurveParams& params) {
    if (!is_on_curve(p, params)) throw OffCurveError("point is not on y^2 = x^3 + 1");
}

inline CurvePoint point_neg(const CurvePoint& p, const CurveParams& params) {
    if (p.is_identity()) return p;
    return CurvePoint(p.x, mod_p(-p.y, params.pp));
}

namespace detail {

// Chord-tangent law without operand validation; every call is one counted
// group addition.
inline CurvePoint add_raw(const CurvePoint& p, const CurvePoint& q, const CurveParams& params) {
    if (params.counter) ++params.counter->point_additions;
    if (p.is_identity()) return q;
    if (q.is_identity()) return p;
    const mpz_class& pp = params.pp;
    mpz_class lambda;
    if (p.x == q.x) {
        if (mod_p(p.y + q.y, pp) == 0) return CurvePoint::identity();  // P + (-P)
        // same x, y1 == y2 != 0: tangent. a = 0 on this family.
        lambda = mod_p(3 * p.x * p.x * inv_mod(mod_p(2 * p.y, pp), pp), pp);
    } else {
        lambda = mod_p((q.y - p.y) * inv_mod(mod_p(q.x - p.x, pp), pp), pp);
    }
    mpz_class x3 = mod_p(lambda * lambda - p.x - q.x, pp);
    mpz_class y3 = mod_p(lambda * (p.x - x3) - p.y, pp);
    return CurvePoint(std::move(x3), std::move(y3));
}

}  // namespace detail

inline CurvePoint point_add(const CurvePoint& p, const CurvePoint& q, const CurveParams& params) {
    require_on_curve(p, params);
    require_on_curve(q, params);
    return detail::add_raw(p, q, params);
}

// k*P by double-and-add; k < 0 means |k|*(-P), needed because Lagrange
// coefficients can be negative.
inline CurvePoint scalar_mul(const mpz_class& k, const CurvePoint& p, const CurveParams& params) {
    require_on_curve(p, params);
    if (k == 0 || p.is_identity()) return CurvePoint::identity();
    mpz_class a = k;
    CurvePoint base = p;
    if (a < 0) {
        a = -a;
        base = point_neg(base, params);
    }
    CurvePoint acc = CurvePoint::identity();
    for (long i = static_cast<long>(mpz_sizeinbase(a.get_mpz_t(), 2)) - 1; i >= 0; --i) {
        if (!acc.is_identity()) acc = detail::add_raw(acc, acc, params);
        if (mpz_tstbit(a.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) {
            acc = detail::add_raw(acc, base, params);
        }
    }
    return acc;
}

// k*P by k repeated additions. This is the cost-model fixture matching the
// naive operation counts of the DEGECC/DBGNC comparison; k*P costs exactly
// k counted additions.
inline CurvePoint naive_scalar_mul(const mpz_class& k, const CurvePoint& p,
                                   const CurveParams& params) {
    require_on_curve(p, params);
    if (k < 0) throw ParameterError("naive_scalar_mul requires k >= 0");
    if (k > 100000000) throw ParameterError("naive_scalar_mul scalar too large");
    CurvePoint acc = CurvePoint::identity();
    for (mpz_class i = 0; i < k; ++i) acc = detail::add_raw(acc, p, params);
    return acc;
}

// --- square and cube roots in GF(pp) ----------------------------------------

// Tonelli-Shanks; fast path for p = 3 (mod 4). Returns nullopt for
// non-residues.
inline std::optional<mpz_class> sqrt_mod(const mpz_class& a, const mpz_class& p) {
    mpz_class v = mod_p(a, p);
    if (v == 0) return mpz_class(0);
    if (mpz_legendre(v.get_mpz_t(), p.get_mpz_t()) != 1) return std::nullopt;
    if (p % 4 == 3) return pow_mod(v, (p + 1) / 4, p);
    mpz_class q = p - 1;
    unsigned long s = 0;
    while (mpz_even_p(q.get_mpz_t())) {
        q /= 2;
        ++s;
    }
    mpz_class z = 2;
    while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;
    mpz_class m = s;
    mpz_class c = pow_mod(z, q, p);
    mpz_class t = pow_mod(v, q, p);
    mpz_class r = pow_mod(v, (q + 1) / 2, p);
    while (t != 1) {
        mpz_class t2 = t;
        mpz_class i = 0;
        while (t2 != 1) {
            t2 = mod_p(t2 * t2, p);
            ++i;
            if (i == m) return std::nullopt;
        }
        mpz_class b = c;
        for (mpz_class j = 0; j < m - i - 1; ++j) b = mod_p(b * b, p);
        m = i;
        c = mod_p(b * b, p);
        t = mod_p(t * c, p);
        r = mod_p(r * b, p);
    }
    return r;
}

// Cubing is a bijection on GF(pp) when pp = 2 (mod 3), so every element has
// exactly one cube root: a^(3^-1 mod (pp-1)).
inline mpz_class cube_root_mod(const mpz_class& a, const mpz_class& p) {
    mpz_class e = inv_mod(3, p - 1);
    return pow_mod(mod_p(a, p), e, p);
}

// --- point sampling ---------------------------------------------------------

// Uniform finite point: sample y and solve x^3 = y^2 - 1, which has a unique
// root. This is also why the curve has exactly pp + 1 points.
inline CurvePoint random_point(const CurveParams& params, Rng& rng) {
    mpz_class y = rng.below(params.pp);
    mpz_class x = cube_root_mod(y * y - 1, params.pp);
    return CurvePoint(std::move(x), std::move(y));
}

// A point of exact order n: clear the cofactor, then accept only candidates
// annihilated by neither q1 nor q2. Needs the factorization of n, so this is
// a dealer-side operation.
inline CurvePoint sample_point_of_order_n(const CurveParams& params, Rng& rng,
                                          int max_retries = 256) {
    if (params.q1 == 0 || params.q2 == 0) {
        throw ParameterError("sample_point_of_order_n needs the factorization of n");
    }
    for (int i = 0; i < max_retries; ++i) {
        CurvePoint r = random_point(params, rng);
        CurvePoint q = scalar_mul(params.cofactor, r, params);
        if (q.is_identity()) continue;
        if (scalar_mul(params.q1, q, params).is_identity()) continue;
        if (scalar_mul(params.q2, q, params).is_identity()) continue;
        return q;
    }
    throw RetryExhaustedError("no point of order n found within retry bound");
}

}  // namespace dbgnc
