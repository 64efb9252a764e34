#include <gtest/gtest.h>

#include <cmath>

#include "relage/distcore.hpp"

using namespace relage;

TEST(Distcore, UniformMrlAtHalf) {
    const auto u = make_distribution(Uniform{1.0});
    EXPECT_NEAR(u.mrl(0.5), 0.25, 1e-12);
    EXPECT_NEAR(u.survival(0.25), 0.75, 1e-15);
    EXPECT_EQ(u.survival(1.0), 0.0);
    EXPECT_THROW(u.hazard(1.0), std::out_of_range);
}

TEST(Distcore, WeibullHazard) {
    const auto w = make_distribution(Weibull{2.0, 1.0});
    EXPECT_NEAR(w.hazard(0.5), 1.0, 1e-14);
    EXPECT_NEAR(w.survival(1.0), std::exp(-1.0), 1e-15);
    EXPECT_NEAR(w.mrl(0.0), std::sqrt(M_PI) / 2.0, 1e-9);
    EXPECT_TRUE(std::isinf(make_distribution(Weibull{0.5, 1.0}).hazard(0.0)));
}

TEST(Distcore, ExponentialQuantities) {
    const auto e = make_distribution(Exponential{2.0});
    for (double x : {0.0, 0.3, 4.0}) {
        EXPECT_DOUBLE_EQ(evaluate(e, Quantity::Hazard, x), 2.0);
        EXPECT_DOUBLE_EQ(evaluate(e, Quantity::Mrl, x), 0.5);
        EXPECT_NEAR(evaluate(e, Quantity::Pdf, x), 2.0 * std::exp(-2.0 * x), 1e-15);
    }
}

TEST(Distcore, QuadraticMrlMrlSourceHazard) {
    const auto x = make_distribution(mrl_source("1/(4+11*t^2)"));
    EXPECT_NEAR(x.hazard(0.0), 4.0, 1e-8);
    const double g = 15.0;
    EXPECT_NEAR(x.hazard(1.0), g - 22.0 / g, 1e-7);
    EXPECT_NEAR(x.mrl(1.0), 1.0 / 15.0, 1e-15);
}

// pdf = hazard * survival for every source type.
TEST(Distcore, PdfHazardSurvivalConsistency) {
    const DistributionSpec specs[] = {
        make_distribution(Weibull{2.5, 1.3}),
        make_distribution(Uniform{2.0}),
        make_distribution(hazard_source("3/(1+x)")),
        make_distribution(mrl_source("(1+x)/2")),
        make_distribution(survival_source("(1+x)^-3")),
        affine(make_distribution(Weibull{1.5, 1.0}), 2.0, 0.5),
    };
    for (const auto& d : specs)
        for (double x : {0.05, 0.4, 0.9, 1.7}) {
            const double expect = d.hazard(x) * d.survival(x);
            EXPECT_NEAR(d.pdf(x), expect, 1e-6 * std::max(1.0, expect)) << d.describe() << " at " << x;
        }
}

// A Pareto-type law given three ways agrees in every quantity.
TEST(Distcore, HazardMrlSurvivalRoundTrip) {
    const auto h = make_distribution(hazard_source("3/(1+x)"));
    const auto m = make_distribution(mrl_source("(1+x)/2"));
    const auto s = make_distribution(survival_source("(1+x)^-3"));
    for (double x : {0.0, 0.5, 2.0, 6.0}) {
        EXPECT_NEAR(h.mrl(x), (1 + x) / 2, 1e-7 * (1 + x));
        EXPECT_NEAR(m.hazard(x), 3 / (1 + x), 1e-7);
        EXPECT_NEAR(s.hazard(x), 3 / (1 + x), 1e-6);
        EXPECT_NEAR(h.survival(x), std::pow(1 + x, -3.0), 1e-12);
        EXPECT_NEAR(m.survival(x), std::pow(1 + x, -3.0), 1e-12);
        EXPECT_NEAR(s.mrl(x), (1 + x) / 2, 1e-6 * (1 + x));
    }
}

TEST(Distcore, CumulativeHazardIncrementMatchesDifference) {
    const auto m = make_distribution(mrl_source("1/(4+5*t^2)"));
    const double a = 0.3, b = 0.45;
    EXPECT_NEAR(m.cumulative_hazard_increment(a, b), m.cumulative_hazard(b) - m.cumulative_hazard(a), 1e-12);
}

TEST(Distcore, AffineTransform) {
    const auto w = make_distribution(Weibull{2.0, 1.0});
    const auto t = affine(w, 2.0, 1.0);
    EXPECT_EQ(t.origin(), 1.0);
    for (double x : {1.2, 2.0, 3.5}) {
        EXPECT_NEAR(t.survival(x), w.survival((x - 1.0) / 2.0), 1e-15);
        EXPECT_NEAR(t.hazard(x), w.hazard((x - 1.0) / 2.0) / 2.0, 1e-15);
        EXPECT_NEAR(t.mrl(x), 2.0 * w.mrl((x - 1.0) / 2.0), 1e-9);
    }
    EXPECT_EQ(t.survival(0.5), 1.0);
    EXPECT_EQ(t.hazard(0.5), 0.0);
    EXPECT_NEAR(t.mrl(0.0), 1.0 + 2.0 * w.mrl(0.0), 1e-9);
}

TEST(Distcore, AffineComposes) {
    const auto w = make_distribution(Weibull{3.0, 1.0});
    const auto twice = affine(affine(w, 2.0, 1.0), 0.5, 1.0);
    EXPECT_DOUBLE_EQ(twice.scale(), 1.0);
    EXPECT_DOUBLE_EQ(twice.shift(), 1.5);
    for (double x : {1.6, 2.0, 2.4}) EXPECT_NEAR(twice.survival(x), w.survival(x - 1.5), 1e-15);
}

TEST(Distcore, FiniteSupportFromUniformAndHint) {
    const auto u = affine(make_distribution(Uniform{1.0}), 3.0, 0.0);
    ASSERT_TRUE(u.support_end().has_value());
    EXPECT_DOUBLE_EQ(*u.support_end(), 3.0);
    const auto s = make_distribution(survival_source("1-x"), 1.0);
    EXPECT_NEAR(s.mrl(0.5), 0.25, 1e-9);
}

TEST(Distcore, RejectsInvalidInputs) {
    EXPECT_THROW(make_distribution(Exponential{-1.0}), DistributionError);
    EXPECT_THROW(make_distribution(Weibull{0.0, 1.0}), DistributionError);
    EXPECT_THROW(make_distribution(hazard_source("x-1")), DistributionError);
    EXPECT_THROW(make_distribution(mrl_source("1-x")), std::exception);
    EXPECT_THROW(make_distribution(survival_source("2-x")), DistributionError);
    EXPECT_THROW(affine(make_distribution(Exponential{1.0}), 0.0, 0.0), DistributionError);
    EXPECT_THROW(affine(make_distribution(Exponential{1.0}), 1.0, -1.0), DistributionError);
    EXPECT_THROW(make_distribution(Exponential{1.0}).survival(-1.0), std::out_of_range);
}
