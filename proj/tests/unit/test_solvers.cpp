#include <gtest/gtest.h>

#include "shehu/solvers.hpp"
#include "support/checks.hpp"
#include "support/generators.hpp"

using namespace shehu;
using test::kind_of;

namespace {

AtomSum canon(const std::string& s) { return canonicalize(parse(s)); }

Solution ode(const std::string& eq, const std::string& inits) { return solve_ivp(parse_ivp(eq, inits)); }

ModalPDEProblem heat(const std::string& initial, const Coeff& kappa = 1) {
    ModalPDEProblem p;
    p.kind = PDEKind::Heat;
    p.speed = kappa;
    p.initial = canon(initial);
    return p;
}

ModalPDEProblem wave(const std::string& initial, const std::string& velocity, const std::string& forcing) {
    ModalPDEProblem p;
    p.kind = PDEKind::Wave;
    p.initial = canon(initial);
    p.velocity = canon(velocity);
    p.forcing = canon(forcing);
    return p;
}

/// Time amplitude of a single-mode solution w(t) sin(k pi x / L).
AtomSum amplitude(const AtomSum& v) {
    std::vector<Atom> out;
    for (Atom a : v.atoms()) {
        a.x = Factor{};
        out.push_back(a);
    }
    return AtomSum(out);
}

const char* kExample4Eq = "v'' + 2*v' + 5*v = exp(-t)*sin(t)";
const char* kExample4Init = "v(0)=0, v'(0)=1";

}  // namespace

TEST(SolveIVP, FirstOrder) { EXPECT_EQ(ode("v' + v = 0", "v(0)=1").atoms, canon("exp(-t)")); }

TEST(SolveIVP, ConstantForcing) {
    EXPECT_EQ(ode("v'' + v' = 1", "v(0)=0, v'(0)=0").atoms, canon("-1 + t + exp(-t)"));
}

TEST(SolveIVP, ExponentialForcing) {
    EXPECT_EQ(ode("v'' - 3*v' + 2*v = exp(3*t)", "v(0)=1, v'(0)=0").atoms,
              canon("(5/2)*exp(t) - 2*exp(2*t) + (1/2)*exp(3*t)"));
}

TEST(SolveIVP, DampedOscillatorCorrectedAnswer) {
    Solution s = ode(kExample4Eq, kExample4Init);
    EXPECT_EQ(s.atoms, canon("(1/3)*exp(-t)*sin(t) + (1/3)*exp(-t)*sin(2*t)"));
    EXPECT_FALSE(s.derivation.empty());
}

TEST(SolveIVP, ResonantForcing) {
    // v'' + v = sin t: the pole collision produces t cos t
    EXPECT_EQ(ode("v'' + v = sin(t)", "v(0)=0, v'(0)=0").atoms, canon("(1/2)*sin(t) - (1/2)*t*cos(t)"));
}

TEST(SolveIVP, Errors) {
    EXPECT_EQ(kind_of([] { ode("v' + v = 0", "v(0)=1, v'(0)=0"); }), ErrorKind::ArityMismatch);
    EXPECT_EQ(kind_of([] { ode("v''' - v' - v = 0", "v(0)=1, v'(0)=0, v''(0)=0"); }),
              ErrorKind::IrreducibleHighDegree);
    EXPECT_EQ(kind_of([] { ode("v' + v = J0(t)", "v(0)=1"); }), ErrorKind::NonTransformable);
}

TEST(ParseIVP, Examples) {
    IVProblem p = parse_ivp("v'' - 3*v' + 2*v = exp(3*t)", "v(0)=1, v'(0)=0");
    ASSERT_EQ(p.coeffs.size(), 3u);
    EXPECT_EQ(p.coeffs[0], Coeff(2));
    EXPECT_EQ(p.coeffs[1], Coeff(-3));
    EXPECT_EQ(p.coeffs[2], Coeff(1));
    EXPECT_EQ(p.forcing, canon("exp(3*t)"));
    EXPECT_EQ(p.inits, (std::vector<Coeff>{Coeff(1), Coeff()}));
    EXPECT_EQ(parse_constant("pi^2/4"), Coeff::pi_power(2) * gen::frac(1, 4));
}

TEST(ParseIVP, Errors) {
    EXPECT_EQ(kind_of([] { parse_ivp("v*v' = 0", "v(0)=1"); }), ErrorKind::InvalidArgument);
    EXPECT_EQ(kind_of([] { parse_ivp("t = 1", ""); }), ErrorKind::InvalidArgument);
    EXPECT_EQ(kind_of([] { parse_ivp("v' + = 0", "v(0)=1"); }), ErrorKind::Syntax);
}

TEST(SolvePDE, HeatSingleMode) {
    Solution s = solve_pde(heat("3*sin(2*pi*x)"));
    EXPECT_EQ(s.atoms, canon("3*exp(-4*pi^2*t)*sin(2*pi*x)"));
    // image of the mode amplitude: 3u/(s + 4 pi^2 u)
    EXPECT_EQ(transform(amplitude(s.atoms)).rational, normalize_image("3*u/(s + 4*pi^2*u)").f);
}

TEST(SolvePDE, ForcedWave) {
    Solution s = solve_pde(wave("0", "0", "sin(pi*x)"));
    EXPECT_EQ(s.atoms, canon("(1/pi^2)*(1 - cos(pi*t))*sin(pi*x)"));
    EXPECT_EQ(transform(amplitude(s.atoms)).rational,
              normalize_image("(1/pi^2)*(u/s - u*s/(s^2 + u^2*pi^2))").f);
}

TEST(SolvePDE, ZeroData) {
    EXPECT_TRUE(solve_pde(heat("0", gen::frac(7, 2))).atoms.is_zero());
}

TEST(SolvePDE, Errors) {
    EXPECT_EQ(kind_of([] { solve_pde(heat("x")); }), ErrorKind::NonSineData);
    EXPECT_EQ(kind_of([] { solve_pde(heat("sin(x)")); }), ErrorKind::NonSineData);
    EXPECT_EQ(kind_of([] { solve_pde(heat("sin(pi*x)", Coeff(-1))); }), ErrorKind::InvalidArgument);
    ModalPDEProblem p = heat("sin(pi*x)");
    p.length = Coeff();
    EXPECT_EQ(kind_of([&] { solve_pde(p); }), ErrorKind::InvalidArgument);
}

TEST(Residual, Examples) {
    IVProblem first = parse_ivp("v' + v = 0", "v(0)=1");
    EXPECT_EQ(residual(first, parse("exp(-t)")).max(), 0.0L);

    IVProblem p = parse_ivp(kExample4Eq, kExample4Init);
    EXPECT_LE(residual(p, parse("(1/3)*exp(-t)*sin(t) + (1/3)*exp(-t)*sin(2*t)")).max(), 1e-12L);
    ResidualReport printed = residual(p, parse("(1/3)*exp(-t)*sin(t) + (2/3)*exp(-t)*sin(2*t)"));
    EXPECT_GE(printed.max(), 0.1L);
    EXPECT_NEAR(printed.initial, 2.0L / 3, 1e-15L);  // v'(0) = 5/3 against 1
}

TEST(Residual, PDE) {
    ModalPDEProblem w = wave("0", "0", "sin(pi*x)");
    EXPECT_LE(residual(w, parse("(1/pi^2)*(1 - cos(pi*t))*sin(pi*x)")).max(), 1e-9L);
    ResidualReport wrong = residual(w, parse("(1/pi^2)*(1 - cos(pi*t))*sin(2*pi*x)"));
    EXPECT_GT(wrong.equation, 1e-3L);
}

// ---------------------------------------------------------------- properties

namespace {

/// Random order 1..3 equation whose characteristic roots are rational or
/// rational-centered pairs, with atom forcing and small integer data.
IVProblem random_ivp(gen::Engine& g) {
    CPoly charpoly = CPoly::constant(Coeff(1));
    const int order = gen::uniform_int(g, 1, 3);
    while (charpoly.degree() < order) {
        if (order - charpoly.degree() >= 2 && gen::coin(g)) {
            charpoly *= CPoly::linear_root(gen::frac(gen::uniform_int(g, -4, 2), 2)).pow(2) +
                        CPoly::constant(gen::positive(g, 3).pow(2));
        } else {
            charpoly *= CPoly::linear_root(gen::frac(gen::uniform_int(g, -4, 2), 2));
        }
    }
    IVProblem p;
    for (int k = 0; k <= charpoly.degree(); ++k) p.coeffs.push_back(charpoly.coeff(k));
    p.forcing = gen::coin(g, 0.8) ? gen::atom_sum(g, 2) : AtomSum();
    for (int k = 0; k < charpoly.degree(); ++k) p.inits.push_back(gen::rational(g, 3));
    return p;
}

}  // namespace

TEST(SolverProperty, ODESolutionsAreExact) {
    gen::Engine g(401);
    for (int i = 0; i < 60; ++i) {
        IVProblem p = random_ivp(g);
        Solution s = solve_ivp(p);
        SCOPED_TRACE(format(s.atoms));
        // symbolic residual
        AtomSum d = s.atoms;
        std::vector<Expr> lhs;
        for (std::size_t k = 0; k < p.coeffs.size(); ++k) {
            lhs.push_back(Expr::product({Expr::constant(p.coeffs[k]), embed(d)}));
            if (k < p.inits.size()) {
                AtomSum at0 = at_zero(d, Var::T);
                EXPECT_EQ(at0, AtomSum::constant(p.inits[k]));
            }
            d = differentiate(d, Var::T);
        }
        lhs.push_back(Expr::product({Expr::constant(Coeff(-1)), embed(p.forcing)}));
        EXPECT_TRUE(canonicalize(Expr::sum(lhs)).is_zero());
        EXPECT_LE(residual(p, s.expr).max(), 1e-9L);
    }
}

TEST(SolverProperty, AgreesWithTransformPipeline) {
    // V = (G + sum of init terms) / charpoly(r), solved by hand
    gen::Engine g(402);
    for (int i = 0; i < 60; ++i) {
        IVProblem p = random_ivp(g);
        RationalFunction lhs_image;
        RationalFunction charpoly(CPoly(p.coeffs), CPoly::constant(Coeff(1)));
        RationalFunction inits;
        const RationalFunction r = RationalFunction::variable();
        for (int k = 1; k <= p.order(); ++k)
            for (int j = 0; j < k; ++j) inits += RationalFunction(p.coeffs[k] * p.inits[j]) * r.pow(k - 1 - j);
        RationalFunction V = (transform(p.forcing).rational + inits) / charpoly;
        EXPECT_EQ(transform(solve_ivp(p).atoms).rational, V);
    }
}

TEST(SolverProperty, PDEBoundaryInitialAndSuperposition) {
    gen::Engine g(403);
    for (int i = 0; i < 30; ++i) {
        const bool is_wave = gen::coin(g);
        const Coeff L = gen::positive(g, 3);
        auto series = [&](int terms) {
            std::vector<Atom> atoms;
            for (int k = 0; k < terms; ++k) {
                Atom a;
                a.coeff = gen::rational(g, 4, true);
                a.x.trig = Trig::Sin;
                a.x.freq = Coeff(gen::uniform_int(g, 1, 4)) * Coeff::pi_power(1) / L;
                atoms.push_back(a);
            }
            return AtomSum(atoms);
        };
        ModalPDEProblem a, b;
        for (ModalPDEProblem* p : {&a, &b}) {
            p->kind = is_wave ? PDEKind::Wave : PDEKind::Heat;
            p->speed = gen::positive(g, 2);
            p->length = L;
            p->initial = series(gen::uniform_int(g, 0, 2));
            if (is_wave) p->velocity = series(gen::uniform_int(g, 0, 1));
            p->forcing = series(gen::uniform_int(g, 0, 1));
        }
        b.speed = a.speed;
        Solution sa = solve_pde(a);
        SCOPED_TRACE(format(sa.atoms));
        EXPECT_TRUE(at_zero(sa.atoms, Var::X).is_zero());
        EXPECT_TRUE(at_point(sa.atoms, Var::X, L).is_zero());
        EXPECT_EQ(at_zero(sa.atoms, Var::T), a.initial);
        if (is_wave) EXPECT_EQ(at_zero(differentiate(sa.atoms, Var::T), Var::T), a.velocity);
        EXPECT_LE(residual(a, sa.expr).max(), 1e-9L);

        ModalPDEProblem both = a;
        auto add = [](const AtomSum& x, const AtomSum& y) { return canonicalize(Expr::sum({embed(x), embed(y)})); };
        both.initial = add(a.initial, b.initial);
        both.velocity = add(a.velocity, b.velocity);
        both.forcing = add(a.forcing, b.forcing);
        EXPECT_EQ(solve_pde(both).atoms, add(sa.atoms, solve_pde(b).atoms));
    }
}
