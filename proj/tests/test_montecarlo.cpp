#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "relage/montecarlo.hpp"

using namespace relage;

namespace {

TransformTable build(Source src, int s_max = 2) { return build_transforms(make_distribution(std::move(src)), s_max); }

}  // namespace

TEST(MonteCarlo, ReferenceGeneratorStream) {
    // splitmix64 from state 0 and the first xoshiro256** outputs are pinned
    // so that other implementations can reproduce the sample stream.
    std::uint64_t st = 0;
    EXPECT_EQ(splitmix64(st), 0xE220A8397B1DCDAFULL);
    Xoshiro256ss a(1), b(1);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());
    Xoshiro256ss c(2);
    EXPECT_NE(Xoshiro256ss(1).next(), c.next());
}

TEST(MonteCarlo, UniformDrawsInUnitInterval) {
    Xoshiro256ss g(99);
    for (int i = 0; i < 10000; ++i) {
        const double u = g.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
}

TEST(MonteCarlo, ExponentialSampleMean) {
    const auto t = build(Exponential{1.0});
    McConfig cfg;
    cfg.n = 100000;
    cfg.seed = 11;
    const auto smp = sample_xs(t, 2, cfg);
    const double mean = std::accumulate(smp.xs.begin(), smp.xs.end(), 0.0) / cfg.n;
    EXPECT_NEAR(mean, 1.0, 3.0 / std::sqrt(static_cast<double>(cfg.n)));
}

TEST(MonteCarlo, SamplingIsDeterministic) {
    const auto t = build(Weibull{2.0, 1.0});
    McConfig cfg;
    cfg.n = 1000;
    cfg.seed = 5;
    EXPECT_EQ(sample_xs(t, 1, cfg).xs, sample_xs(t, 1, cfg).xs);
    McConfig other = cfg;
    other.seed = 6;
    EXPECT_NE(sample_xs(t, 1, cfg).xs, sample_xs(t, 1, other).xs);
}

TEST(MonteCarlo, UniformSecondLevelSurvivalAtHalf) {
    const auto t = build(Uniform{1.0});
    McConfig cfg;
    cfg.n = 100000;
    cfg.seed = 3;
    const auto smp = sample_xs(t, 2, cfg);
    std::size_t above = 0;
    for (double x : smp.xs) {
        ASSERT_GE(x, 0.0);
        ASSERT_LE(x, 1.0);
        above += x > 0.5;
    }
    const double p = 0.25;
    EXPECT_NEAR(static_cast<double>(above) / cfg.n, p, 3.0 * std::sqrt(p * (1 - p) / cfg.n));
}

TEST(MonteCarlo, KsSameDistribution) {
    const auto t = build(Exponential{1.0});
    McConfig cfg;
    cfg.seed = 17;
    EXPECT_LE(ks_distance_phi(t, t, 1, cfg).ks, 1.36 / std::sqrt(1e5) * 3.0);
}

TEST(MonteCarlo, KsWeibullVersusExponentialAndConvergence) {
    const auto w = build(Weibull{2.0, 1.0}), e = build(Exponential{1.0});
    McConfig big;
    big.seed = 2024;
    McConfig small = big;
    small.n = 1000;
    const auto rb = ks_distance_phi(w, e, 1, big);
    EXPECT_LE(rb.ks, 0.013);
    EXPECT_EQ(rb.out_of_range, 0u);
    EXPECT_GE(ks_distance_phi(w, e, 1, small).ks / rb.ks, 5.0);
    EXPECT_EQ(rb, ks_distance_phi(w, e, 1, big));
}

TEST(MonteCarlo, BlockSeedsAreIndependentOfSampleCount) {
    // The first block is the same whatever n is, so a run can be split by blocks.
    const auto t = build(Weibull{3.0, 1.0});
    McConfig a, b;
    a.n = 5000;
    b.n = 9000;
    a.seed = b.seed = 77;
    const auto sa = sample_xs(t, 1, a), sb = sample_xs(t, 1, b);
    EXPECT_TRUE(std::equal(sa.xs.begin(), sa.xs.end(), sb.xs.begin()));
}

TEST(MonteCarlo, TooManyOutOfRangeSamplesIsAnError) {
    // X has a far heavier tail than the table of Y covers.
    const auto x = build(Weibull{0.5, 50.0}), y = build(Weibull{4.0, 0.1});
    McConfig cfg;
    cfg.n = 2000;
    EXPECT_THROW(ks_distance_phi(x, y, 1, cfg), McRangeError);
}

TEST(MonteCarlo, ConfigValidation) {
    const auto t = build(Exponential{1.0});
    McConfig cfg;
    cfg.n = 999;
    EXPECT_THROW(sample_xs(t, 1, cfg), std::invalid_argument);
    cfg.n = 1000;
    EXPECT_THROW(sample_xs(t, 3, cfg), std::out_of_range);
}
