#include <cmath>

#include <gtest/gtest.h>

#include "shehu/inverse.hpp"
#include "shehu/oracle.hpp"
#include "shehu/transform.hpp"
#include "support/checks.hpp"
#include "support/generators.hpp"

using namespace shehu;
using test::kind_of;

namespace {

AtomSum canon(const std::string& s) { return canonicalize(parse(s)); }

AtomSum inverse_of(const std::string& image) { return invert_with_trace(normalize_image(image)).atoms; }

CPoly poly(std::vector<Coeff> c) { return CPoly(std::move(c)); }

RationalFunction sum_of(const std::vector<PartialFractionTerm>& terms) {
    RationalFunction acc;
    for (const auto& t : terms) acc += t.image();
    return acc;
}

}  // namespace

TEST(Normalize, Examples) {
    RationalR a = normalize_image("u/(s - 3*u)");
    EXPECT_EQ(a.u_power, 0);
    EXPECT_EQ(a.f, RationalFunction::pole(Coeff(3)));
    RationalR b = normalize_image("1/s");
    EXPECT_EQ(b.u_power, -1);
    EXPECT_EQ(b.f, RationalFunction::pole(Coeff()));
    RationalR c = normalize_image("u^2/((s + u)*(s + 2*u))");
    EXPECT_EQ(c.f, RationalFunction(CPoly::constant(Coeff(1)), poly({2, 3, 1})));
}

TEST(Normalize, Errors) {
    EXPECT_EQ(kind_of([] { normalize_image("1/(s + 1)"); }), ErrorKind::NotHomogeneous);
    EXPECT_EQ(kind_of([] { normalize_image("exp(-s/u)"); }), ErrorKind::NonRationalImage);
    EXPECT_EQ(kind_of([] { normalize_image("s/(s - u)"); }), ErrorKind::ImproperImage);
    EXPECT_EQ(kind_of([] { normalize_image("u/(s - "); }), ErrorKind::Syntax);
}

TEST(Factor, DistinctLinear) {
    Factorization f = factor_denominator(poly({2, 3, 1}));
    EXPECT_EQ(f.leading, Coeff(1));
    ASSERT_EQ(f.factors.size(), 2u);
    EXPECT_EQ(f.factors[0].factor * f.factors[1].factor, poly({2, 3, 1}));
}

TEST(Factor, IrreducibleQuadratic) {
    Factorization f = factor_denominator(poly({5, 2, 1}));
    ASSERT_EQ(f.factors.size(), 1u);
    EXPECT_EQ(f.factors[0].factor, poly({5, 2, 1}));
    EXPECT_EQ(f.factors[0].multiplicity, 1u);
}

TEST(Factor, RepeatedRoot) {
    Factorization f = factor_denominator(CPoly::linear_root(Coeff(1)).pow(3));
    ASSERT_EQ(f.factors.size(), 1u);
    EXPECT_EQ(f.factors[0].factor, CPoly::linear_root(Coeff(1)));
    EXPECT_EQ(f.factors[0].multiplicity, 3u);
}

TEST(Factor, PiRoots) {
    // (r^2 + pi^2)(r - 2 pi)
    CPoly p = (CPoly::monomial(Coeff(1), 2) + CPoly::constant(Coeff::pi_power(2))) *
              CPoly::linear_root(Coeff(2) * Coeff::pi_power(1));
    Factorization f = factor_denominator(p);
    ASSERT_EQ(f.factors.size(), 2u);
}

TEST(Factor, Errors) {
    EXPECT_EQ(kind_of([] { factor_denominator(poly({-2, 0, 1})); }), ErrorKind::IrrationalRoot);
    EXPECT_EQ(kind_of([] { factor_denominator(poly({-1, -1, 0, 1})); }), ErrorKind::IrreducibleHighDegree);
}

TEST(PartialFractions, TwoLinearPoles) {
    // 1/((r+1)(r+2)) = 1/(r+1) - 1/(r+2)
    auto terms = partial_fractions(normalize_image("u^2/((s + u)*(s + 2*u))"));
    ASSERT_EQ(terms.size(), 2u);
    EXPECT_EQ(terms[0].c + terms[1].c, Coeff());
    EXPECT_EQ(sum_of(terms), RationalFunction(CPoly::constant(Coeff(1)), poly({2, 3, 1})));
}

TEST(PartialFractions, ShiftedQuadratics) {
    auto terms = partial_fractions(normalize_image("u^4/(((s + u)^2 + u^2)*((s + u)^2 + 4*u^2))"));
    ASSERT_EQ(terms.size(), 2u);
    EXPECT_EQ(terms[0].str(), "(1/3)/((r + 1)^2 + 1)");
    EXPECT_EQ(terms[1].str(), "-(1/3)/((r + 1)^2 + 4)");
}

TEST(PartialFractions, ImproperRejected) {
    RationalR f{RationalFunction(poly({0, 0, 1}), poly({1, 1})), 0};
    EXPECT_EQ(kind_of([&] { partial_fractions(f); }), ErrorKind::ImproperImage);
}

TEST(Invert, Examples) {
    EXPECT_EQ(inverse_of("u/(s - 3*u)"), canon("exp(3*t)"));
    EXPECT_EQ(inverse_of("u^2/((s + u)*(s + 2*u))"), canon("exp(-t) - exp(-2*t)"));
    EXPECT_EQ(inverse_of("u^4/(((s + u)^2 + u^2)*((s + u)^2 + 4*u^2))"),
              canon("(1/3)*exp(-t)*sin(t) - (1/6)*exp(-t)*sin(2*t)"));
    EXPECT_EQ(inverse_of("u^3/s^3"), canon("t^2/2"));
    EXPECT_EQ(inverse_of("u*s/(s^2 + pi^2*u^2)"), canon("cos(pi*t)"));
}

TEST(Invert, UPowerMismatch) {
    EXPECT_EQ(kind_of([] { invert(normalize_image("u/s^2")); }), ErrorKind::UPowerMismatch);
    EXPECT_EQ(kind_of([] { invert(normalize_image("u^2/s")); }), ErrorKind::UPowerMismatch);
}

TEST(Invert, PropagatesFactorErrors) {
    EXPECT_EQ(kind_of([] { invert(normalize_image("u^2/(s^2 - 2*u^2)")); }), ErrorKind::IrrationalRoot);
}

// ---------------------------------------------------------------- properties

TEST(InverseProperty, TransformOfInverseIsIdentity) {
    gen::Engine g(301);
    for (int i = 0; i < 200; ++i) {
        RationalFunction f = gen::proper_image(g);
        InverseResult inv = invert_with_trace({f, 0});
        EXPECT_EQ(transform(inv.atoms).rational, f) << f.str();
    }
}

TEST(InverseProperty, InverseOfTransformIsIdentity) {
    gen::Engine g(302);
    for (int i = 0; i < 200; ++i) {
        AtomSum v = gen::atom_sum(g);
        EXPECT_EQ(invert_with_trace({transform(v).rational, 0}).atoms, v) << format(v);
    }
}

TEST(InverseProperty, TermsReconstructTheImage) {
    gen::Engine g(303);
    for (int i = 0; i < 100; ++i) {
        RationalFunction f = gen::proper_image(g);
        auto terms = partial_fractions({f, 0});
        EXPECT_EQ(sum_of(terms), f) << f.str();
        AtomSum acc;
        for (const auto& t : terms) acc = canonicalize(Expr::sum({embed(acc), embed(invert_term(t))}));
        EXPECT_EQ(acc, invert_with_trace({f, 0}).atoms);
    }
}

TEST(InverseProperty, Linearity) {
    gen::Engine g(304);
    for (int i = 0; i < 50; ++i) {
        RationalFunction f = gen::proper_image(g, 4), h = gen::proper_image(g, 4);
        Coeff k = gen::rational(g, 3, true);
        AtomSum lhs = invert_with_trace({f + RationalFunction(k) * h, 0}).atoms;
        AtomSum rhs = canonicalize(Expr::sum({invert(RationalR{f, 0}),
                                              Expr::product({Expr::constant(k), invert(RationalR{h, 0})})}));
        EXPECT_EQ(lhs, rhs) << f.str() << " | " << h.str();
    }
}

TEST(InverseProperty, AgreesWithTalbot) {
    // independent numerical inversion of the same image
    gen::Engine g(305);
    for (int i = 0; i < 50; ++i) {
        RationalFunction f = gen::proper_image(g, 4);
        AtomEvaluator ev(invert_with_trace({f, 0}).atoms);
        long double shift = 0;
        for (const Complex& z : numeric_roots(f.den())) shift = std::max(shift, z.real() + 1);
        for (long double t : {0.5L, 1.0L, 2.0L}) {
            const long double num = numeric_invert([&](Complex r) { return f.eval(r); }, t, shift);
            EXPECT_LE(talbot_error(num, ev(t)), 1e-6L) << f.str() << " at t = " << (double)t;
        }
    }
}
