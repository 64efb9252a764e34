#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <string>

#include "relage/orders.hpp"

using namespace relage;

namespace {

TransformTable build(Source src, int s_max = 3, GridConfig g = {}) {
    return build_transforms(make_distribution(std::move(src)), s_max, g);
}

struct Tables {
    TransformTable e1 = build(Exponential{1.0});
    TransformTable e2 = build(Exponential{2.0});
    TransformTable e3 = build(Exponential{3.0});
    TransformTable w2 = build(Weibull{2.0, 1.0});
    TransformTable w3 = build(Weibull{3.0, 1.0});
    TransformTable w4 = build(Weibull{4.0, 1.0});
    TransformTable xq, yq;
    Tables() {
        GridConfig g;
        g.x_max = 10.0;
        xq = build(mrl_source("1/(4+11*t^2)"), 2, g);
        yq = build(mrl_source("1/(4+5*t^2)"), 2, g);
    }
};

const Tables& tables() {
    static const Tables t;
    return t;
}

}  // namespace

TEST(Orders, QuadraticMrlFirstLevelFailsNearOrigin) {
    const auto& t = tables();
    const auto v = check_order(t.xq, t.yq, 1, Ordering::sIFR_R);
    EXPECT_EQ(v.kind, VerdictKind::Fails);
    ASSERT_TRUE(v.primary_shape.witness);
    // The closed-form ratio decreases on (0, 0.1746].
    EXPECT_GT(v.primary_shape.witness->x, 0.0);
    EXPECT_LT(v.primary_shape.witness->x, 0.1746);
    EXPECT_NEAR(t.xq.hazard(1, 0.0) / t.yq.hazard(1, 0.0), 1.0, 1e-6);
}

TEST(Orders, QuadraticMrlSecondLevelHolds) {
    const auto& t = tables();
    const auto v = check_order(t.xq, t.yq, 2, Ordering::sIFR_R);
    EXPECT_EQ(v.kind, VerdictKind::Holds);
    ASSERT_TRUE(v.crosscheck_shape);
    EXPECT_EQ(v.crosscheck_shape->kind, VerdictKind::Holds);
}

TEST(Orders, QuadraticMrlHazardRatioCrossesOne) {
    // Oracle: r_X/r_Y dips to 0.92427 at t = 0.1746 and returns to 1 at t = 0.33504.
    const auto& t = tables();
    EXPECT_NEAR(t.xq.hazard(1, 0.1746) / t.yq.hazard(1, 0.1746), 0.92427, 1e-5);
    EXPECT_NEAR(t.xq.hazard(1, 0.33504) / t.yq.hazard(1, 0.33504), 1.0, 1e-5);
}

TEST(Orders, PhiSurvivalOracles) {
    const auto& t = tables();
    EXPECT_NEAR(phi_survival(t.e2, t.e1, 2, 1.0), std::exp(-2.0), 1e-7);
    for (double x : {0.0, 0.5, 2.0, 7.0}) EXPECT_NEAR(phi_survival(t.w2, t.w2, 2, x), std::exp(-x), 1e-8);
    // Phi = Lambda_Y(X) with Y ~ Exp(1) is X itself, so x must stay inside the X table.
    for (double x : {0.0, 0.5, 2.0, 4.0}) EXPECT_NEAR(phi_survival(t.w2, t.e1, 1, x), std::exp(-x * x), 1e-8);
    EXPECT_THROW(phi_survival(t.w2, t.e1, 1, 1e9), TableRangeError);
}

TEST(Orders, PhiSurvivalIsNonincreasing) {
    const auto& t = tables();
    double prev = 1.0;
    for (double x = 0.0; x < 20.0; x += 0.25) {
        const double p = phi_survival(t.xq, t.yq, 1, x);
        EXPECT_LE(p, prev + 1e-15);
        EXPECT_GE(p, 0.0);
        prev = p;
    }
}

TEST(Orders, ReflexiveIsNeverAFailure) {
    const auto& t = tables();
    for (const auto* tab : {&t.e1, &t.w2, &t.w3})
        for (int s = 1; s <= 3; ++s)
            for (Ordering o : kAllOrderings) EXPECT_NE(check_order(*tab, *tab, s, o).kind, VerdictKind::Fails);
}

TEST(Orders, ProportionalCumulativeHazardsBothDirections) {
    const auto& t = tables();
    for (int s = 1; s <= 3; ++s)
        for (Ordering o : kAllOrderings) {
            for (const auto& v : {check_order(t.e2, t.e1, s, o), check_order(t.e1, t.e2, s, o)}) {
                EXPECT_NE(v.kind, VerdictKind::Fails);
                if (v.kind == VerdictKind::Inconclusive)
                    EXPECT_LE(std::abs(v.primary_shape.margin), v.tolerance * v.primary_shape.scale);
            }
        }
}

TEST(Orders, WeibullVersusExponentialChain) {
    const auto& t = tables();
    const auto c = implication_chain(t.w2, t.e1, 1);
    EXPECT_TRUE(c.consistent);
    for (const auto& v : c.verdicts) EXPECT_EQ(v.kind, VerdictKind::Holds) << to_string(v.ordering);
}

TEST(Orders, QuadraticMrlChainStaysConsistent) {
    const auto& t = tables();
    EXPECT_TRUE(implication_chain(t.xq, t.yq, 1).consistent);
    EXPECT_TRUE(implication_chain(t.yq, t.xq, 1).consistent);
}

TEST(Orders, ChainFlagDetectsViolation) {
    std::array<OrderVerdict, 5> v;
    v[0].kind = VerdictKind::Holds;
    v[3].kind = VerdictKind::Fails;
    EXPECT_FALSE(chain_consistent(v));
    v[0].kind = VerdictKind::Fails;
    EXPECT_TRUE(chain_consistent(v));
}

TEST(Orders, TransitivitySpotCheck) {
    const auto& t = tables();
    struct Triple {
        const TransformTable *x, *y, *z;
    };
    // Weibull shapes 4 > 3 > 2 with unit scale; exponentials are boundary cases.
    for (auto [x, y, z] : {Triple{&t.w4, &t.w3, &t.w2}, Triple{&t.e3, &t.e2, &t.e1}})
        for (int s = 1; s <= 2; ++s)
            for (Ordering o : kAllOrderings) {
                const auto xy = check_order(*x, *y, s, o), yz = check_order(*y, *z, s, o);
                if (xy.kind == VerdictKind::Holds && yz.kind == VerdictKind::Holds)
                    EXPECT_EQ(check_order(*x, *z, s, o).kind, VerdictKind::Holds) << to_string(o) << " s=" << s;
                if (s == 1) EXPECT_NE(check_order(*x, *z, s, o).kind, VerdictKind::Fails) << to_string(o);
            }
}

TEST(Orders, WeibullShapeOrderReversesNearOriginAtLevelTwo) {
    // d/dx log(r_{X,2}/r_{Y,2}) at 0 equals 1/mu_X - 1/mu_Y, and Gamma(1.25) > Gamma(1.5),
    // so the level-2 hazard ratio of Weibull(4) over Weibull(2) starts out decreasing.
    const auto& t = tables();
    ASSERT_GT(t.w4.gen_mean(1), t.w2.gen_mean(1));
    const auto v = check_order(t.w4, t.w2, 2, Ordering::sIFR_R);
    EXPECT_EQ(v.kind, VerdictKind::Fails);
    ASSERT_TRUE(v.primary_shape.witness);
    EXPECT_LT(v.primary_shape.witness->x, 0.1);
    EXPECT_EQ(check_order(t.w4, t.w2, 1, Ordering::sIFR_R).kind, VerdictKind::Holds);
}

TEST(Orders, LocationScaleInvariance) {
    const auto sx = make_distribution(Weibull{3.0, 1.0});
    const auto sy = make_distribution(Weibull{1.5, 2.0});
    const auto tx = build_transforms(sx, 2), ty = build_transforms(sy, 2);
    for (double a : {0.5, 2.0})
        for (double b : {0.0, 1.0}) {
            const auto ax = build_transforms(affine(sx, a, b), 2), ay = build_transforms(affine(sy, a, b), 2);
            for (int s = 1; s <= 2; ++s)
                for (Ordering o : kAllOrderings)
                    EXPECT_EQ(check_order(tx, ty, s, o).kind, check_order(ax, ay, s, o).kind)
                        << to_string(o) << " s=" << s << " a=" << a << " b=" << b;
        }
}

// H super-additive exactly when the role-swapped H^{-1} is sub-additive.
TEST(Orders, NbuDuality) {
    const auto& t = tables();
    struct Pair {
        const TransformTable *x, *y;
    };
    for (auto [x, y] : {Pair{&t.w2, &t.e1}, Pair{&t.e1, &t.w2}, Pair{&t.xq, &t.yq}, Pair{&t.w3, &t.w2}})
        for (int s = 1; s <= 2; ++s) {
            const auto v = check_order(*x, *y, s, Ordering::sNBU_R);
            ASSERT_TRUE(v.crosscheck_shape);
            if (decisive(v.primary_shape.kind) && decisive(v.crosscheck_shape->kind))
                EXPECT_EQ(v.primary_shape.kind, v.crosscheck_shape->kind);
        }
}

TEST(Orders, UndefinedThresholdIsInconclusive) {
    const auto& t = tables();
    const auto v = check_order(t.e1, t.w2, 1, Ordering::sNBUFR_R);
    EXPECT_EQ(v.kind, VerdictKind::Inconclusive);
    EXPECT_FALSE(v.note.empty());
}

TEST(Orders, ErrorsOnMissingLevel) {
    const auto& t = tables();
    EXPECT_THROW(check_order(t.xq, t.yq, 3, Ordering::sIFR_R), std::out_of_range);
    EXPECT_THROW(check_order(t.e1, t.e2, 1, Ordering::sIFR_R, OrderOptions{0.0}), std::invalid_argument);
}

TEST(Orders, OrderingNames) {
    for (Ordering o : kAllOrderings) EXPECT_EQ(ordering_from_string(to_string(o)), o);
    EXPECT_THROW(ordering_from_string("sDMRL_R"), std::invalid_argument);
}
