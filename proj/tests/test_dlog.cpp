#include <gtest/gtest.h>

#include "dbgnc/dlog.hpp"
#include "util.hpp"

using namespace dbgnc;

namespace {

CurvePoint toy_generator() {
    Rng rng(31);
    return sample_point_of_order_n(testutil::toy(), rng);
}

}  // namespace

TEST(Bsgs, IdentityTargetIsZero) {
    CurvePoint g = toy_generator();
    EXPECT_EQ(bsgs({g, CurvePoint::identity(), 0, 100}, testutil::toy()), 0);
}

TEST(Bsgs, FindsConstructedLogs) {
    const CurveParams& p = testutil::toy();
    CurvePoint g = toy_generator();
    EXPECT_EQ(bsgs({g, scalar_mul(7, g, p), 0, 100}, p), 7);
    for (int k : {1, 2, 50, 99, 142}) {
        EXPECT_EQ(bsgs({g, scalar_mul(k, g, p), 0, 142}, p), k);
    }
    // offset interval
    EXPECT_EQ(bsgs({g, scalar_mul(60, g, p), 50, 100}, p), 60);
}

TEST(Bsgs, ReturnsSmallestSolutionInRange) {
    const CurveParams& p = testutil::toy();
    CurvePoint g = toy_generator();  // order 143
    // both 5 and 148 solve k*g = 5*g within [0, 286]
    EXPECT_EQ(bsgs({g, scalar_mul(5, g, p), 0, 286}, p), 5);
    EXPECT_EQ(bsgs({g, scalar_mul(5, g, p), 100, 286}, p), 148);
}

TEST(Bsgs, NotFoundWhenLogOutsideRange) {
    const CurveParams& p = testutil::toy();
    CurvePoint g = toy_generator();
    EXPECT_EQ(bsgs({g, scalar_mul(50, g, p), 0, 10}, p), std::nullopt);
}

TEST(Bsgs, RangeBoundEnforced) {
    const CurveParams& p = testutil::toy();
    CurvePoint g = toy_generator();
    LogQuery q{g, g, 0, (mpz_class(1) << 33)};
    EXPECT_THROW(bsgs(q, p), RangeTooLargeError);
}

TEST(Bsgs, RejectsBadQueries) {
    const CurveParams& p = testutil::toy();
    CurvePoint g = toy_generator();
    EXPECT_THROW(bsgs({CurvePoint::identity(), g, 0, 10}, p), ParameterError);
    EXPECT_THROW(bsgs({g, g, 10, 0}, p), ParameterError);
}

TEST(PollardLambda, IdentityTargetIsZero) {
    Rng rng(1);
    CurvePoint g = toy_generator();
    EXPECT_EQ(pollard_lambda({g, CurvePoint::identity(), 0, 1000}, testutil::toy(), rng), 0);
}

TEST(PollardLambda, AgreesWithBsgsOnToyCurve) {
    const CurveParams& p = testutil::toy();
    CurvePoint g = toy_generator();
    Rng rng(37);
    for (int trial = 0; trial < 60; ++trial) {
        mpz_class hi = rng.range(1, 142);
        mpz_class k = rng.range(0, hi);
        LogQuery q{g, scalar_mul(k, g, p), 0, hi};
        auto viaL = pollard_lambda(q, p, rng);
        auto viaB = bsgs(q, p);
        ASSERT_TRUE(viaL.has_value());
        EXPECT_EQ(*viaL, *viaB);
    }
}

TEST(PollardLambda, AgreesWithBsgsOnMediumCurve) {
    const CurveParams& p = testutil::medium();
    Rng seedr(41);
    CurvePoint g = sample_point_of_order_n(p, seedr);
    Rng rng(43);
    for (int trial = 0; trial < 50; ++trial) {
        mpz_class hi = rng.range(1, 10000);
        mpz_class k = rng.range(0, hi);
        LogQuery q{g, scalar_mul(k, g, p), 0, hi};
        auto viaL = pollard_lambda(q, p, rng);
        ASSERT_TRUE(viaL.has_value());
        EXPECT_EQ(*viaL, k);  // n >> hi so the solution is unique
        EXPECT_EQ(*viaL, *bsgs(q, p));
    }
}

TEST(PollardLambda, SoundnessOfReturnedValues) {
    const CurveParams& p = testutil::medium();
    Rng seedr(47);
    CurvePoint g = sample_point_of_order_n(p, seedr);
    Rng rng(53);
    for (int trial = 0; trial < 10; ++trial) {
        mpz_class lo = rng.range(0, 1000000);
        mpz_class k = lo + rng.range(0, 100000);
        LogQuery q{g, scalar_mul(k, g, p), lo, lo + 100000};
        auto found = pollard_lambda(q, p, rng);
        ASSERT_TRUE(found.has_value());
        EXPECT_GE(*found, q.lo);
        EXPECT_LE(*found, q.hi);
        EXPECT_EQ(scalar_mul(*found, q.base, p), q.target);
    }
}

TEST(PollardLambda, CongruentModuloBaseOrderOnWideRanges) {
    // base order 143 << range width: several k in range solve the relation;
    // the result must agree with bsgs modulo the order.
    const CurveParams& p = testutil::toy();
    CurvePoint g = toy_generator();
    Rng rng(59);
    for (int trial = 0; trial < 20; ++trial) {
        mpz_class k = rng.range(0, 142);
        LogQuery q{g, scalar_mul(k, g, p), 0, 100000};
        auto viaL = pollard_lambda(q, p, rng);
        auto viaB = bsgs(q, p);
        ASSERT_TRUE(viaL.has_value());
        ASSERT_TRUE(viaB.has_value());
        EXPECT_EQ(mod_p(*viaL - *viaB, 143), 0);
        EXPECT_EQ(scalar_mul(*viaL, g, p), q.target);
    }
}

TEST(PollardLambda, NotFoundViaFallback) {
    const CurveParams& p = testutil::toy();
    CurvePoint g = toy_generator();
    Rng rng(61);
    EXPECT_EQ(pollard_lambda({g, scalar_mul(50, g, p), 0, 10}, p, rng), std::nullopt);
}

TEST(PollardLambda, TargetOutsideSubgroupExhaustsRetries) {
    const CurveParams& p = testutil::toy();
    CurvePoint g = toy_generator();
    Rng rng(67);
    CurvePoint outside = random_point(p, rng);
    while (scalar_mul(p.n, outside, p).is_identity()) outside = random_point(p, rng);
    // width above the bsgs fallback bound, target unreachable: every walk fails
    LogQuery q{g, outside, 0, (mpz_class(1) << 33)};
    EXPECT_THROW(pollard_lambda(q, p, rng), RetryExhaustedError);
}

TEST(PollardLambda, HugeRangeRejected) {
    const CurveParams& p = testutil::medium();
    Rng seedr(71);
    CurvePoint g = sample_point_of_order_n(p, seedr);
    Rng rng(73);
    LogQuery q{g, g, 0, (mpz_class(1) << 90)};
    EXPECT_THROW(pollard_lambda(q, p, rng), RangeTooLargeError);
}

TEST(PollardLambda, CountsLambdaCalls) {
    OpCounter counter;
    CurveParams p = testutil::toy().with_counter(&counter);
    Rng rng(79);
    CurvePoint g = sample_point_of_order_n(p, rng);
    pollard_lambda({g, scalar_mul(9, g, p), 0, 142}, p, rng);
    pollard_lambda({g, scalar_mul(5, g, p), 0, 142}, p, rng);
    EXPECT_EQ(counter.lambda_calls, 2u);
    EXPECT_GT(counter.point_additions, 0u);
}
