#include <cmath>
#include <regex>

#include <gtest/gtest.h>

#include "shehu/oracle.hpp"
#include "shehu/table.hpp"
#include "support/checks.hpp"
#include "support/generators.hpp"

using namespace shehu;
using test::kind_of;

namespace {

ImageUnderTest printed(const std::string& image, const ConstantBindings& c = {}) {
    return image_under_test(parse_image(image, c));
}

std::vector<GridPoint> grid(std::initializer_list<GridPoint> pts) { return pts; }

}  // namespace

TEST(NumericForward, Examples) {
    EXPECT_NEAR(numeric_forward(parse("1"), 2, 1), 0.5L, 1e-12L);
    EXPECT_NEAR(numeric_forward(parse("sin(t)"), 3, 2), 4.0L / 13, 1e-9L);
    EXPECT_EQ(kind_of([] { numeric_forward(parse("exp(3*t)"), 2, 1); }), ErrorKind::ROCViolation);
}

TEST(NumericForward, SymbolicOnlyAtoms) {
    EXPECT_EQ(kind_of([] { numeric_forward(parse("Si(t)"), 2, 1); }), ErrorKind::SymbolicOnly);
}

TEST(NumericForward, DeltaMollifier) {
    EXPECT_NEAR(numeric_forward(parse("delta(t - 1)"), 2, 1), std::exp(-2.0L), 1e-8L);
    EXPECT_NEAR(numeric_forward(parse("delta(t - 2)"), 3, 2), std::exp(-3.0L), 1e-8L);
}

TEST(NumericInvert, Examples) {
    EXPECT_NEAR(numeric_invert(parse_image("u/(s - u)"), 1), std::exp(1.0L), 1e-6L);
    EXPECT_NEAR(numeric_invert(parse_image("u/s"), 0.37L), 1.0L, 1e-6L);
    EXPECT_NEAR(numeric_invert(parse_image("u^2/(s^2 + u^2)"), kPi / 2), 1.0L, 1e-6L);
}

TEST(NumericInvert, IndependentOfU) {
    const ImageExpr V = parse_image("u^2/((s + u)*(s + 2*u))");
    const long double want = std::exp(-1.0L) - std::exp(-2.0L);
    for (long double u : {1.0L, 2.0L, 0.5L}) EXPECT_NEAR(numeric_invert(V, 1, u), want, 1e-7L);
}

TEST(VerifyPair, Examples) {
    VerificationReport cos = verify_pair(parse("cos(t)"), printed("u*s/(s^2 + u^2)"), grid({{2, 1}, {3, 2}}));
    EXPECT_TRUE(cos.passed());
    EXPECT_EQ(cos.points.size(), 2u);
    EXPECT_EQ(cos.checked(), 5);  // two grid points, three Talbot times

    const char* row16_printed = "u^2*(s^2 - u^2)^2/(s^2 + u^2)^2";
    VerificationReport bad = verify_pair(parse("t*cos(t)"), printed(row16_printed), grid({{2, 1}}));
    EXPECT_FALSE(bad.passed());
    ASSERT_EQ(bad.points.size(), 1u);
    EXPECT_EQ(bad.points[0].verdict, Verdict::Fail);
    VerificationReport good =
        verify_pair(parse("t*cos(t)"), printed("u^2*(s^2 - u^2)/(s^2 + u^2)^2"), grid({{2, 1}}));
    EXPECT_TRUE(good.passed());

    EXPECT_TRUE(verify_pair(parse("0"), printed("0"), default_grid()).passed());
}

TEST(VerifyPair, TalbotRoundTripForRationalImages) {
    VerificationReport r = verify_pair(parse("exp(-t)*sin(2*t)"), image_under_test(transform(parse("exp(-t)*sin(2*t)"))),
                                       default_grid());
    ASSERT_EQ(r.talbot.size(), 3u);
    for (const auto& c : r.talbot) EXPECT_EQ(c.verdict, Verdict::Pass) << c.note;
}

TEST(VerifyPair, PointsLeftOfTheAbscissaAreSkipped) {
    VerificationReport r = verify_pair(parse("exp(3*t)"), printed("u/(s - 3*u)"), default_grid());
    for (const auto& p : r.points) {
        if (p.at.s / p.at.u <= 3) EXPECT_EQ(p.verdict, Verdict::Skipped);
        else EXPECT_EQ(p.verdict, Verdict::Pass);
    }
    EXPECT_TRUE(r.passed());
}

TEST(VerifyPair, StrayUPowerFailsOnlyAwayFromUnitU) {
    // the printed shifted-delta image carries an extra factor u
    ConstantBindings a{{"a", Coeff(1)}};
    ImageUnderTest V = printed("u*exp(-a*s/u)", a);
    Expr v = parse("delta(t - a)", a);
    EXPECT_TRUE(verify_pair(v, V, grid({{2, 1}, {5, 1}})).passed());
    VerificationReport off = verify_pair(v, V, grid({{3, 2}, {4, 3}}));
    EXPECT_EQ(off.failures(), 2);
    EXPECT_TRUE(verify_pair(v, printed("exp(-a*s/u)", a), default_grid()).passed());
}

TEST(RelativeError, Floors) {
    EXPECT_EQ(relative_error(1, 1), 0.0L);
    EXPECT_NEAR(relative_error(2, 1), 0.5L, 1e-18L);
    EXPECT_LE(relative_error(1e-14L, 0), 1e-2L);
    EXPECT_LE(talbot_error(3e-16L, 1e-30L), 1e-9L);
}

// ---------------------------------------------------------------- properties

TEST(OracleProperty, QuadratureMatchesTableRows) {
    // first instance of every numeric, delta-free row
    Table t = load_table(SHEHU_FIXTURE);
    int checked = 0;
    for (const auto& e : t.entries) {
        if (e.symbolic_only) continue;
        const Instance& inst = e.instances.front();
        Expr v = parse(e.time, inst.constants);
        if (std::regex_search(e.time, std::regex("delta"))) continue;
        TransformImage V = transform(v);
        for (GridPoint p : default_grid()) {
            if (V.roc && p.s / p.u <= V.roc->value()) continue;
            const long double exact = V.eval(p.s, p.u).real();
            EXPECT_LE(relative_error(numeric_forward(v, p.s, p.u), exact), 1e-8L) << "row " << e.row;
        }
        ++checked;
    }
    EXPECT_GE(checked, 24);
}

TEST(OracleProperty, TalbotRoundTrip) {
    gen::Engine g(501);
    gen::AtomLimits lim;
    lim.max_rate = 2;
    for (int i = 0; i < 50; ++i) {
        AtomSum v = AtomSum::single(gen::atom(g, lim));
        TransformImage V = transform(v);
        AtomEvaluator ev(v);
        for (long double t : {0.5L, 1.0L, 2.0L}) {
            EXPECT_LE(talbot_error(numeric_invert(V, t), ev(t)), 1e-6L) << format(v) << " at t = " << (double)t;
        }
    }
}

TEST(OracleProperty, Deterministic) {
    gen::Engine g(502);
    for (int i = 0; i < 20; ++i) {
        AtomSum v = gen::atom_sum(g);
        TransformImage V = transform(v);
        const long double r = (V.roc ? V.roc->value() : 0) + 1;
        EXPECT_EQ(numeric_forward(v, r, 1), numeric_forward(v, r, 1));
        EXPECT_EQ(numeric_invert(V, 1), numeric_invert(V, 1));
    }
}

TEST(OracleProperty, VerdictsAreUInvariantForCorrectImages) {
    gen::Engine g(503);
    for (int i = 0; i < 30; ++i) {
        AtomSum v = gen::atom_sum(g, 2);
        TransformImage V = transform(v);
        const long double r = (V.roc ? V.roc->value() : 0) + 1;
        for (long double u : {1.0L, 2.0L, 3.0L}) {
            VerificationReport rep = verify_pair(embed(v), image_under_test(V), {{r * u, u}});
            EXPECT_TRUE(rep.passed()) << format(v) << " at u = " << (double)u;
        }
    }
}
