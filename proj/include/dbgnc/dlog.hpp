#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dbgnc/ec.hpp"
#include "dbgnc/errors.hpp"
#include "dbgnc/rng.hpp"

// Interval discrete-logarithm solvers. bsgs is the deterministic
// baby-step/giant-step oracle; pollard_lambda is the production tame/wild
// kangaroo path with a bsgs fallback when the walks fail and the range
// permits. Every returned value k satisfies k*base == target and
// lo <= k <= hi.

namespace dbgnc {

struct LogQuery {
    CurvePoint base;
    CurvePoint target;
    mpz_class lo;
    mpz_class hi;
};

namespace detail {

inline void validate_query(const LogQuery& q, const CurveParams& params) {
    if (q.base.is_identity()) throw ParameterError("log base must not be the identity");
    require_on_curve(q.base, params);
    require_on_curve(q.target, params);
    if (q.lo > q.hi) throw ParameterError("log interval is empty");
}

inline std::uint64_t point_key(const CurvePoint& p) {
    if (p.is_identity()) return splitmix64(0x5bd1e995);
    std::uint64_t hx = mpz_get_ui(p.x.get_mpz_t());
    std::uint64_t hy = mpz_get_ui(p.y.get_mpz_t());
    return splitmix64(hx ^ splitmix64(hy));
}

// Hash map from point to exponent with exact-point confirmation on lookup.
class PointTable {
public:
    void insert_if_absent(const CurvePoint& p, const mpz_class& e) {
        auto& bucket = map_[point_key(p)];
        for (const auto& entry : bucket) {
            if (entry.first == p) return;
        }
        bucket.emplace_back(p, e);
    }

    const mpz_class* find(const CurvePoint& p) const {
        auto it = map_.find(point_key(p));
        if (it == map_.end()) return nullptr;
        for (const auto& entry : it->second) {
            if (entry.first == p) return &entry.second;
        }
        return nullptr;
    }

private:
    std::unordered_map<std::uint64_t, std::vector<std::pair<CurvePoint, mpz_class>>> map_;
};

inline mpz_class isqrt(const mpz_class& v) {
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
    return r;
}

}  // namespace detail

constexpr std::uint64_t kBsgsRangeBound = 1ULL << 32;

// Smallest k in [lo, hi] with k*base == target, or nullopt. Deterministic;
// memory O(sqrt(hi - lo)).
inline std::optional<mpz_class> bsgs(const LogQuery& q, const CurveParams& params) {
    detail::validate_query(q, params);
    mpz_class width = q.hi - q.lo;
    if (width + 1 > kBsgsRangeBound) {
        throw RangeTooLargeError("bsgs range exceeds 2^32");
    }
    mpz_class mz = detail::isqrt(width) + 1;
    std::uint64_t m = mz.get_ui();

    detail::PointTable babies;
    CurvePoint cur = CurvePoint::identity();
    for (std::uint64_t j = 0; j < m; ++j) {
        babies.insert_if_absent(cur, mpz_class(static_cast<unsigned long>(j)));
        cur = detail::add_raw(cur, q.base, params);
    }

    // gamma_i = target - (lo + i*m)*base; a hit at baby j gives k = lo + i*m + j.
    CurvePoint gamma = detail::add_raw(
        q.target, scalar_mul(-q.lo, q.base, params), params);
    CurvePoint giant_step = point_neg(scalar_mul(mpz_class(static_cast<unsigned long>(m)),
                                                 q.base, params),
                                      params);
    mpz_class imax = width / static_cast<unsigned long>(m) + 1;
    for (mpz_class i = 0; i <= imax; ++i) {
        if (const mpz_class* j = babies.find(gamma)) {
            mpz_class k = q.lo + i * static_cast<unsigned long>(m) + *j;
            if (k <= q.hi) return k;
        }
        gamma = detail::add_raw(gamma, giant_step, params);
    }
    return std::nullopt;
}

namespace detail {

struct JumpSet {
    std::vector<mpz_class> sizes;    // 16 pseudo-random jump distances, sorted
    std::vector<CurvePoint> points;  // sizes[i] * base
    mpz_class mean;
};

// 16 jump sizes uniform in [1, 2*mean_target] so the mean is about
// sqrt(width)/2. Points are built incrementally over the sorted gaps, which
// keeps the setup cost flat across interval sizes.
inline JumpSet make_jumps(const CurvePoint& base, const mpz_class& width, Rng& rng,
                          const CurveParams& params) {
    JumpSet js;
    mpz_class mean_target = isqrt(width) / 2;
    if (mean_target < 2) mean_target = 2;
    for (int i = 0; i < 16; ++i) js.sizes.push_back(rng.range(1, 2 * mean_target));
    std::sort(js.sizes.begin(), js.sizes.end());
    mpz_class total = 0;
    CurvePoint cur = scalar_mul(js.sizes[0], base, params);
    js.points.push_back(cur);
    total += js.sizes[0];
    for (int i = 1; i < 16; ++i) {
        mpz_class gap = js.sizes[i] - js.sizes[i - 1];
        if (gap > 0) cur = add_raw(cur, scalar_mul(gap, base, params), params);
        js.points.push_back(cur);
        total += js.sizes[i];
    }
    js.mean = total / 16;
    if (js.mean < 1) js.mean = 1;
    return js;
}

inline int jump_index(const CurvePoint& p) { return static_cast<int>(point_key(p) & 15); }

}  // namespace detail

// Pollard's interval kangaroo. The tame walk starts at the midpoint
// ceil((lo+hi)/2)*base and lays a footprint spanning the full interval width
// past the midpoint; the wild walk starts at the target and is caught when
// it lands on a recorded footprint position. Walk failure re-randomizes the
// jump table up to 8 times, then falls back to bsgs when the range allows.
inline std::optional<mpz_class> pollard_lambda(const LogQuery& q, const CurveParams& params,
                                               Rng& rng) {
    detail::validate_query(q, params);
    if (params.counter) ++params.counter->lambda_calls;
    mpz_class width = q.hi - q.lo;

    if (width <= 16) {
        CurvePoint cur = scalar_mul(q.lo, q.base, params);
        for (mpz_class k = q.lo; k <= q.hi; ++k) {
            if (cur == q.target) return k;
            cur = detail::add_raw(cur, q.base, params);
        }
        return std::nullopt;
    }
    mpz_class sqrt_w = detail::isqrt(width);
    if (sqrt_w > (mpz_class(1) << 40)) {
        throw RangeTooLargeError("interval too wide for a kangaroo walk");
    }

    const int kMaxWalks = 8;
    for (int attempt = 0; attempt < kMaxWalks; ++attempt) {
        detail::JumpSet jumps = detail::make_jumps(q.base, width, rng, params);
        mpz_class mid = (q.lo + q.hi + 1) / 2;

        detail::PointTable footprint;
        CurvePoint tame = scalar_mul(mid, q.base, params);
        mpz_class tame_exp = mid;
        mpz_class span_end = mid + width + 4 * jumps.mean;
        mpz_class step_cap = 6 * (sqrt_w + 16);
        for (mpz_class steps = 0;; ++steps) {
            footprint.insert_if_absent(tame, tame_exp);
            if (tame_exp >= span_end || steps >= step_cap) break;
            int idx = detail::jump_index(tame);
            tame = detail::add_raw(tame, jumps.points[idx], params);
            tame_exp += jumps.sizes[idx];
        }

        CurvePoint wild = q.target;
        mpz_class dist = 0;
        mpz_class dist_max = (q.hi - mid) + width + 8 * jumps.mean;
        while (dist <= dist_max) {
            if (const mpz_class* hit = footprint.find(wild)) {
                mpz_class candidate = *hit - dist;
                if (candidate >= q.lo && candidate <= q.hi &&
                    scalar_mul(candidate, q.base, params) == q.target) {
                    return candidate;
                }
                break;  // collision outside the interval: re-randomize
            }
            int idx = detail::jump_index(wild);
            wild = detail::add_raw(wild, jumps.points[idx], params);
            dist += jumps.sizes[idx];
        }
    }

    if (width + 1 <= kBsgsRangeBound) return bsgs(q, params);
    throw RetryExhaustedError(
        "pollard_lambda walks exhausted and range exceeds the bsgs fallback bound");
}

}  // namespace dbgnc
