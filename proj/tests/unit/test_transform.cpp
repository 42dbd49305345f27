#include <cmath>

#include <gtest/gtest.h>

#include "shehu/oracle.hpp"
#include "shehu/transform.hpp"
#include "support/checks.hpp"
#include "support/generators.hpp"

using namespace shehu;
using test::kind_of;

namespace {

TransformImage image_of(const std::string& s) { return transform(parse(s)); }

/// F(r) = num/den from ascending coefficient lists.
RationalFunction rf(std::vector<Coeff> num, std::vector<Coeff> den) { return RationalFunction(CPoly(num), CPoly(den)); }

long double re(Complex z) { return z.real(); }

/// Exact images of v and v^(n), both taken through transform.
void expect_derivative_rule(const AtomSum& v, int n) {
    std::vector<Coeff> inits;
    AtomSum d = v;
    for (int k = 0; k < n; ++k) {
        AtomSum at0 = at_zero(d, Var::T);
        inits.push_back(at0.is_zero() ? Coeff() : at0.atoms().front().coeff);
        d = differentiate(d, Var::T);
    }
    TransformImage rule = derivative_image(n, transform(v), inits);
    TransformImage direct = transform(d);
    EXPECT_EQ(rule.rational, direct.rational) << "n = " << n << ", v = " << format(v);
}

}  // namespace

TEST(Transform, Constant) {
    TransformImage V = image_of("1");
    EXPECT_EQ(V.rational, RationalFunction::pole(Coeff()));
    ASSERT_TRUE(V.roc.has_value());
    EXPECT_EQ(*V.roc, Coeff());
    EXPECT_EQ(format_image(V), "u/s");
}

TEST(Transform, Exponential) {
    TransformImage V = image_of("exp(3*t)");
    EXPECT_EQ(V.rational, RationalFunction::pole(Coeff(3)));
    EXPECT_EQ(*V.roc, Coeff(3));
    EXPECT_EQ(format_image(V), "u/(s - 3*u)");
    EXPECT_EQ(format_roc(V.roc), "s/u > 3");
}

TEST(Transform, Sine) {
    TransformImage V = image_of("sin(2*t)");
    EXPECT_EQ(V.rational, rf({2}, {4, 0, 1}));
    EXPECT_EQ(*V.roc, Coeff());
    const Complex s(3), u(2);
    EXPECT_NEAR(re(V.eval(s, u)), 2.0L * 4 / (9 + 16), 1e-18L);
}

TEST(Transform, PowerTimesExponential) {
    EXPECT_EQ(image_of("t*exp(t)").rational, RationalFunction::pole(Coeff(1), 2));
}

TEST(Transform, TimesCosine) {
    // u^2 (s^2 - u^2) / (s^2 + u^2)^2
    EXPECT_EQ(image_of("t*cos(t)").rational, rf({-1, 0, 1}, {1, 0, 2, 0, 1}));
}

TEST(Transform, BesselJ0) {
    TransformImage V = image_of("J0(t)");
    ASSERT_FALSE(V.is_rational());
    const Complex s(3), u(2);
    EXPECT_NEAR(re(V.eval(s, u)), 2.0L / std::sqrt(13.0L), 1e-15L);
}

TEST(Transform, Delta) {
    TransformImage V = image_of("delta(t)");
    EXPECT_EQ(V.rational, RationalFunction(Coeff(1)));
    TransformImage shifted = image_of("delta(t - 2)");
    EXPECT_NEAR(re(shifted.eval(Complex(1), Complex(1))), std::exp(-2.0L), 1e-15L);
}

TEST(Transform, MatchesQuadrature) {
    for (const char* v : {"t^2*exp(-t)", "exp(t)*sin(3*t)", "cosh(2*t) - t", "5*t^3*cos(t/2)"}) {
        SCOPED_TRACE(v);
        TransformImage V = image_of(v);
        for (GridPoint p : default_grid()) {
            if (V.roc && p.s / p.u <= V.roc->value()) continue;
            const long double q = numeric_forward(parse(v), p.s, p.u);
            EXPECT_LE(relative_error(q, re(V.eval(p.s, p.u))), 1e-9L);
        }
    }
}

TEST(Transform, OutsideTheAtomClass) {
    EXPECT_EQ(kind_of([] { transform(parse("sin(pi*x)")); }), ErrorKind::NonTransformable);
}

TEST(DerivativeImage, FirstAndSecondOrder) {
    TransformImage V = image_of("exp(t)");
    EXPECT_EQ(derivative_image(1, V, {Coeff(1)}).rational, V.rational);
    EXPECT_EQ(derivative_image(2, V, {Coeff(1), Coeff(1)}).rational, V.rational);
    // v = sin t: v' image r/(r^2+1)
    EXPECT_EQ(derivative_image(1, image_of("sin(t)"), {Coeff()}).rational, image_of("cos(t)").rational);
}

TEST(DerivativeImage, ArityMismatch) {
    EXPECT_EQ(kind_of([] { derivative_image(2, image_of("t"), {Coeff()}); }), ErrorKind::ArityMismatch);
}

TEST(ChangeOfScale, Examples) {
    EXPECT_EQ(change_of_scale(image_of("sin(t)"), Coeff(2)).rational, image_of("sin(2*t)").rational);
    TransformImage e = change_of_scale(image_of("exp(t)"), gen::frac(1, 2));
    EXPECT_EQ(e.rational, image_of("exp(t/2)").rational);
    EXPECT_EQ(*e.roc, gen::frac(1, 2));
}

TEST(ExponentialOrder, Examples) {
    EXPECT_EQ(*exponential_order(canonicalize(parse("exp(3*t) + t^5"))).order, Coeff(3));
    EXPECT_EQ(exponential_order(canonicalize(parse("exp(3*t) + t^5"))).witness, "exp(3*t)");
    EXPECT_EQ(*exponential_order(canonicalize(parse("exp(-t)*sin(t)"))).order, Coeff(-1));
    EXPECT_EQ(*exponential_order(canonicalize(parse("t^2"))).order, Coeff());
    EXPECT_FALSE(exponential_order(AtomSum()).order.has_value());
}

TEST(Convert, Views) {
    TransformImage V = image_of("exp(3*t)");
    const Complex s(5), u(2);
    const Complex shehu = V.eval(s, u);
    EXPECT_NEAR(re(evaluate(convert(V, View::Shehu), s, u)), re(shehu), 1e-18L);
    EXPECT_NEAR(re(evaluate(convert(V, View::Natural), s, u)), re(shehu / u), 1e-18L);
    EXPECT_NEAR(re(evaluate(convert(V, View::Laplace), s, u)), re(V.eval(s, Complex(1))), 1e-18L);
    EXPECT_NEAR(re(evaluate(convert(V, View::Sumudu), s, u)), re(V.eval(Complex(1), u) / u), 1e-18L);
    EXPECT_EQ(format(convert(image_of("1"), View::Yang)), "w");
    EXPECT_EQ(format(convert(image_of("1"), View::Sumudu)), "1");
}

TEST(Convert, LaplaceOfScaledSine) {
    TransformImage V = transform(parse("sin(a*t)/a", {{"a", Coeff(3)}}));
    const Complex s(2);
    EXPECT_NEAR(re(evaluate(convert(V, View::Laplace), s, Complex(7))), 1.0L / (4 + 9), 1e-18L);
    EXPECT_EQ(parse_view("yang"), View::Yang);
    EXPECT_EQ(kind_of([] { parse_view("mellin"); }), ErrorKind::InvalidArgument);
}

// ---------------------------------------------------------------- properties

TEST(TransformProperty, Linearity) {
    gen::Engine g(201);
    for (int i = 0; i < 100; ++i) {
        AtomSum a = gen::atom_sum(g), b = gen::atom_sum(g);
        Coeff ka = gen::rational(g, 4), kb = gen::rational(g, 4);
        AtomSum combo = canonicalize(Expr::sum({Expr::product({Expr::constant(ka), embed(a)}),
                                                Expr::product({Expr::constant(kb), embed(b)})}));
        TransformImage lhs = transform(combo);
        TransformImage rhs = ka * transform(a) + kb * transform(b);
        EXPECT_EQ(lhs.rational, rhs.rational) << format(a) << " | " << format(b);
    }
}

TEST(TransformProperty, DerivativeTheorem) {
    gen::Engine g(202);
    for (int i = 0; i < 100; ++i) {
        AtomSum v = gen::atom_sum(g);
        for (int n = 1; n <= 3; ++n) expect_derivative_rule(v, n);
    }
}

TEST(TransformProperty, MultiplicationByT) {
    // image of t v(t) is -d/dr of the image of v
    gen::Engine g(203);
    for (int i = 0; i < 50; ++i) {
        AtomSum v = gen::atom_sum(g);
        AtomSum tv = canonicalize(Expr::product({Expr::variable(Var::T), embed(v)}));
        EXPECT_EQ(transform(tv).rational, -transform(v).rational.derivative()) << format(v);
    }
}

TEST(TransformProperty, AbscissaIsExponentialOrder) {
    gen::Engine g(204);
    for (int i = 0; i < 100; ++i) {
        AtomSum v = gen::atom_sum(g);
        TransformImage V = transform(v);
        GrowthBound b = exponential_order(v);
        if (V.rational.is_zero()) continue;
        ASSERT_TRUE(V.roc && b.order);
        EXPECT_EQ(*V.roc, *b.order) << format(v);
        // the closed form already holds just right of the abscissa
        const long double r = V.roc->value() + 1;
        EXPECT_LE(relative_error(numeric_forward(v, r, 1), re(V.eval_r(Complex(r)))), 1e-8L) << format(v);
    }
}

TEST(TransformProperty, DependsOnlyOnRatio) {
    gen::Engine g(205);
    for (int i = 0; i < 50; ++i) {
        TransformImage V = transform(gen::atom_sum(g));
        const long double r = (V.roc ? V.roc->value() : 0) + 1.5L;
        const Complex base = V.eval(Complex(r), Complex(1));
        for (long double u : {0.5L, 2.0L, 7.0L}) {
            const Complex z = V.eval(Complex(r * u), Complex(u));
            EXPECT_LE(std::abs(z - base), 1e-12L * std::max(1.0L, std::abs(base)));
        }
    }
}
