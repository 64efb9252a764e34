#include <gtest/gtest.h>

#include "relage/ageing.hpp"
#include "relage/orders.hpp"

using namespace relage;

namespace {

TransformTable build(Source src, int s_max = 3, GridConfig g = {}) {
    return build_transforms(make_distribution(std::move(src)), s_max, g);
}

std::size_t idx(AgeingClass c) { return static_cast<std::size_t>(c); }

}  // namespace

TEST(Ageing, ClassicalNames) {
    EXPECT_EQ(classical_name(2, AgeingClass::IFR), "DMRL");
    EXPECT_EQ(classical_name(2, AgeingClass::NBAFR), "HNBUE");
    EXPECT_FALSE(classical_name(4, AgeingClass::IFR));
    EXPECT_FALSE(classical_name(2, AgeingClass::NBU));
    EXPECT_FALSE(classical_name(0, AgeingClass::IFR));
}

TEST(Ageing, ExponentialIsTheBoundary) {
    const auto t = build(Exponential{1.0});
    for (int s = 1; s <= 3; ++s)
        for (const auto& v : classify(t, s)) {
            EXPECT_NE(v.kind, VerdictKind::Fails);
            EXPECT_LE(std::abs(v.margin), 1e-8 * v.scale);
        }
}

TEST(Ageing, QuadraticMrlSecondLevelIsIfr) {
    GridConfig g;
    g.x_max = 10.0;
    const auto t = build(mrl_source("1/(4+11*t^2)"), 2, g);
    EXPECT_EQ(classify(t, 2)[idx(AgeingClass::IFR)].kind, VerdictKind::Holds);
    EXPECT_EQ(classify(t, 1)[idx(AgeingClass::IFR)].kind, VerdictKind::Fails);
}

TEST(Ageing, DecreasingHazardWeibull) {
    const auto t = build(Weibull{0.5, 1.0}, 2);
    const auto v = classify(t, 1);
    EXPECT_EQ(v[idx(AgeingClass::IFR)].kind, VerdictKind::Fails);
    ASSERT_TRUE(v[idx(AgeingClass::IFR)].witness);
    EXPECT_GT(v[idx(AgeingClass::IFR)].witness->x, 0.0);
}

TEST(Ageing, IncreasingHazardWeibullInEveryClass) {
    const auto t = build(Weibull{2.0, 1.0}, 3);
    for (int s = 1; s <= 3; ++s)
        for (const auto& v : classify(t, s)) EXPECT_EQ(v.kind, VerdictKind::Holds);
}

TEST(Ageing, UniformIsIfrAtEveryLevel) {
    const auto t = build(Uniform{1.0}, 3);
    for (int s = 1; s <= 3; ++s) EXPECT_EQ(classify(t, s)[idx(AgeingClass::IFR)].kind, VerdictKind::Holds);
}

// Decisive class membership follows s-IFR => s-IFRA => s-NBU => s-NBUFR => s-NBAFR.
TEST(Ageing, ClassificationChain) {
    GridConfig g;
    g.x_max = 10.0;
    const TransformTable tabs[] = {build(Weibull{0.5, 1.0}, 2), build(Weibull{3.0, 1.0}, 2),
                                   build(mrl_source("1/(4+5*t^2)"), 2, g), build(Uniform{2.0}, 2)};
    for (const auto& t : tabs)
        for (int s = 1; s <= 2; ++s) {
            const auto v = classify(t, s);
            for (std::size_t i = 0; i < v.size(); ++i)
                for (std::size_t j = i + 1; j < v.size(); ++j)
                    if (v[i].kind == VerdictKind::Holds) EXPECT_NE(v[j].kind, VerdictKind::Fails);
        }
}

TEST(Ageing, ShiftedDistributionClassifiesLikeBase) {
    const auto base = make_distribution(Weibull{2.0, 1.0});
    const auto a = build_transforms(base, 2), b = build_transforms(affine(base, 2.0, 1.0), 2);
    for (int s = 1; s <= 2; ++s) {
        const auto va = classify(a, s), vb = classify(b, s);
        for (std::size_t c = 0; c < va.size(); ++c) EXPECT_EQ(va[c].kind, vb[c].kind);
    }
}

TEST(Ageing, ReportCarriesClassicalAliases) {
    const auto rep = ageing_report(build(Weibull{2.0, 1.0}, 3), 3);
    ASSERT_EQ(rep.levels.size(), 3u);
    EXPECT_EQ(rep.levels[1].classical[idx(AgeingClass::IFR)], "DMRL");
    EXPECT_EQ(rep.levels[2].classical[idx(AgeingClass::NBUFR)], "NDVRL");
    EXPECT_FALSE(rep.levels[2].classical[idx(AgeingClass::NBU)]);
}

TEST(Ageing, LevelOutOfRange) {
    const auto t = build(Exponential{1.0}, 2);
    EXPECT_THROW(classify(t, 3), std::out_of_range);
    EXPECT_THROW(classify(t, 0), std::out_of_range);
}
