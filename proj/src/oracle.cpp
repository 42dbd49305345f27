#include "shehu/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace shehu {

namespace {

constexpr std::array<long double, 8> kXgk = {
    0.991455371120812639206854697526329L, 0.949107912342758524526189684047851L,
    0.864864423359769072789712788640926L, 0.741531185599394439863864773280788L,
    0.586087235467691130294144845693013L, 0.405845151377397166906606412076961L,
    0.207784955007898467600689403773245L, 0.0L};
constexpr std::array<long double, 8> kWgk = {
    0.022935322010529224963732008058970L, 0.063092092629978553290700663189204L,
    0.104790010322250183839876322541518L, 0.140653259715525918745189590510238L,
    0.169004726639267902826583426598550L, 0.190350578064785409913256402421014L,
    0.204432940075298892414161999234649L, 0.209482141084727828012999174891714L};
constexpr std::array<long double, 4> kWg = {0.129484966168869693270611432679082L, 0.279705391489276667901467771423780L,
                                            0.381830050505118944950369775488975L, 0.417959183673469387755102040816327L};

struct Gk {
    long double kronrod = 0;
    long double gauss = 0;
    long double abs = 0;  // Kronrod estimate of the integral of |f|
};

template <class Fn>
Gk gk15(const Fn& f, long double a, long double b) {
    const long double c = (a + b) / 2, h = (b - a) / 2;
    Gk out;
    long double fc = f(c);
    out.kronrod = kWgk[7] * fc;
    out.gauss = kWg[3] * fc;
    out.abs = kWgk[7] * std::fabs(fc);
    for (std::size_t j = 0; j < 7; ++j) {
        long double f1 = f(c - h * kXgk[j]), f2 = f(c + h * kXgk[j]);
        out.kronrod += kWgk[j] * (f1 + f2);
        out.abs += kWgk[j] * (std::fabs(f1) + std::fabs(f2));
        if (j % 2 == 1) out.gauss += kWg[j / 2] * (f1 + f2);
    }
    out.kronrod *= h;
    out.gauss *= h;
    out.abs *= h;
    return out;
}

struct Integral {
    long double value = 0;
    long double abs = 0;
};

template <class Fn>
Integral adapt(const Fn& f, long double a, long double b, const QuadratureSpec& spec, int depth = 0) {
    Gk g = gk15(f, a, b);
    if (!std::isfinite(g.kronrod))
        throw Error(ErrorKind::ConvergenceFailure, "integrand is not finite on [" + std::to_string(static_cast<double>(a)) +
                                                       ", " + std::to_string(static_cast<double>(b)) + "]");
    long double err = std::fabs(g.kronrod - g.gauss);
    if (err <= spec.rel_tol * g.abs || err <= std::numeric_limits<long double>::min()) return {g.kronrod, g.abs};
    if (depth >= spec.max_depth)
        throw Error(ErrorKind::ConvergenceFailure, "adaptive quadrature exceeded its subdivision limit");
    long double m = (a + b) / 2;
    Integral l = adapt(f, a, m, spec, depth + 1), r = adapt(f, m, b, spec, depth + 1);
    return {l.value + r.value, l.abs + r.abs};
}

long double mollified_delta(long double r, long double a, long double w, const QuadratureSpec& spec) {
    const long double norm = 1 / (w * std::sqrt(2 * kPi));
    auto f = [&](long double t) {
        long double z = (t - a) / w;
        return norm * std::exp(-z * z / 2 - r * t);
    };
    return adapt(f, a - 10 * w, a + 10 * w, spec).value;
}

}  // namespace

long double numeric_forward(const AtomSum& v, long double s, long double u, const QuadratureSpec& spec) {
    if (!(u > 0) || !std::isfinite(s) || !std::isfinite(u))
        throw Error(ErrorKind::InvalidArgument, "quadrature needs finite s and u > 0");
    const long double r = s / u;
    GrowthBound g = exponential_order(v);
    if (g.order && !(r > g.order->value()))
        throw Error(ErrorKind::ROCViolation, "s/u = " + std::to_string(static_cast<double>(r)) +
                                                 " does not exceed the exponential order " + g.order->str() + " of " +
                                                 g.witness);

    std::vector<SpecialTerm> regular_specials;
    long double delta_part = 0;
    for (const auto& st : v.specials()) {
        if (st.special.kind != SpecialKind::Delta) {
            regular_specials.push_back(st);
            continue;
        }
        const long double a = st.special.param.value();
        const long double coarse = mollified_delta(r, a, 1e-2L, spec);
        const long double fine = mollified_delta(r, a, 1e-3L, spec);
        delta_part += st.coeff.value() * (100 * fine - coarse) / 99;
    }
    AtomSum regular(v.atoms(), regular_specials);
    if (regular.is_zero()) return delta_part;

    AtomEvaluator ev(regular);
    auto f = [&](long double t) { return std::exp(-r * t) * ev(t); };
    const long double decay = (r - (g.order ? g.order->value() : 0.0L)) / 2;
    long double a = 0, b = 1 / std::max(1.0L, r);
    Integral total;
    for (;;) {
        Integral p = adapt(f, a, b, spec);
        total.value += p.value;
        total.abs += p.abs;
        long double peak = 0;
        for (int i = 8; i <= 16; ++i) peak = std::max(peak, std::fabs(f(a + (b - a) * i / 16)));
        if (peak / decay <= spec.rel_tol * total.abs * 1e-2L || (peak == 0 && total.abs == 0 && b > 64)) break;
        a = b;
        b *= 2;
        if (a > spec.max_horizon)
            throw Error(ErrorKind::ConvergenceFailure, "tail of the transform integral does not settle");
    }
    return total.value + delta_part;
}

long double numeric_forward(const Expr& v, long double s, long double u, const QuadratureSpec& spec) {
    return numeric_forward(canonicalize(v), s, u, spec);
}

// ---------------------------------------------------------------- Talbot

namespace {

long double talbot(const ImageOfR& F, long double t, long double shift, int M) {
    const long double r = 2.0L * M / (5.0L * t);
    long double sum = 0.5L * (F(Complex(r + shift, 0)) * std::exp(r * t)).real();
    for (int k = 1; k < M; ++k) {
        const long double theta = k * kPi / M;
        const long double cot = std::cos(theta) / std::sin(theta);
        const Complex z(r * theta * cot, r * theta);
        const long double sigma = theta + (theta * cot - 1) * cot;
        sum += (std::exp(t * z) * F(z + shift) * Complex(1, sigma)).real();
    }
    return std::exp(shift * t) * r / M * sum;
}

}  // namespace

long double numeric_invert(const ImageOfR& F, long double t, long double shift, const TalbotSpec& spec) {
    if (!(t > 0)) throw Error(ErrorKind::InvalidArgument, "inversion needs t > 0");
    if (spec.nodes < 16 || spec.nodes % 2 != 0) throw Error(ErrorKind::InvalidArgument, "Talbot node count must be even and at least 16");
    const long double a = talbot(F, t, shift, spec.nodes);
    const long double b = talbot(F, t, shift, 2 * spec.nodes);
    if (!std::isfinite(a) || std::fabs(a - b) > spec.agreement * std::max(1.0L, std::fabs(a)))
        throw Error(ErrorKind::OscillationFailure, "Talbot sums with " + std::to_string(spec.nodes) + " and " +
                                                       std::to_string(2 * spec.nodes) + " nodes disagree at t = " +
                                                       std::to_string(static_cast<double>(t)));
    return a;
}

namespace {

long double abscissa(const TransformImage& V) {
    long double out = V.roc ? V.roc->value() : 0.0L;
    if (V.rational.den().degree() > 0) {
        CPoly den = V.rational.den();
        CPoly sf = den.divmod(gcd(den, den.derivative())).first;
        for (const auto& z : numeric_roots(sf)) out = std::max(out, z.real());
    }
    for (const auto& s : V.specials) {
        long double a = s.param.value();
        if (s.kind == PhiKind::InvSqrtDiff || s.kind == PhiKind::LogDiff) out = std::max(out, a);
    }
    return std::max(0.0L, out);
}

}  // namespace

long double numeric_invert(const TransformImage& V, long double t, const TalbotSpec& spec) {
    return numeric_invert([&](Complex r) { return V.eval_r(r); }, t, abscissa(V), spec);
}

long double numeric_invert(const ImageExpr& V, long double t, long double u, long double shift, const TalbotSpec& spec) {
    return numeric_invert([&](Complex r) { return evaluate(V, r * u, Complex(u, 0)); }, t, shift, spec);
}

// ---------------------------------------------------------------- pair verification

std::vector<GridPoint> default_grid() { return {{2, 1}, {3, 2}, {5, 1}, {4, 3}}; }

std::vector<GridPoint> extended_grid() { return {{2, 1}, {3, 2}, {5, 1}, {4, 3}, {7, 1}, {9, 2}}; }

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Skipped: return "skipped";
    }
    return "?";
}

int VerificationReport::failures() const {
    int n = 0;
    for (const auto& p : points) n += p.verdict == Verdict::Fail;
    for (const auto& p : talbot) n += p.verdict == Verdict::Fail;
    return n;
}

int VerificationReport::checked() const {
    int n = 0;
    for (const auto& p : points) n += p.verdict != Verdict::Skipped;
    for (const auto& p : talbot) n += p.verdict != Verdict::Skipped;
    return n;
}

bool VerificationReport::passed() const { return failures() == 0 && checked() > 0; }

long double relative_error(long double a, long double b) {
    long double scale = std::max({std::fabs(a), std::fabs(b), 1e-12L});
    return std::fabs(a - b) / scale;
}

long double talbot_error(long double numeric, long double exact) {
    long double scale = std::max({std::fabs(numeric), std::fabs(exact), 1e-6L});
    return std::fabs(numeric - exact) / scale;
}

ImageUnderTest image_under_test(const TransformImage& V) {
    return {[V](Complex s, Complex u) { return V.eval(s, u); }, V.is_rational()};
}

ImageUnderTest image_under_test(const ImageExpr& V) {
    return {[V](Complex s, Complex u) { return evaluate(V, s, u); }, !V.has_functions()};
}

VerificationReport verify_pair(const Expr& v, const ImageUnderTest& V, const std::vector<GridPoint>& grid,
                               long double tol) {
    VerificationReport rep;
    AtomSum a = canonicalize(v);
    GrowthBound g = exponential_order(a);
    long double margin = 0;
    for (const auto& st : a.specials())
        if (st.special.kind == SpecialKind::I0) margin = 1;  // keep the slowly decaying I0 tails tractable

    for (const auto& p : grid) {
        PointCheck c;
        c.at = p;
        const long double r = p.s / p.u;
        const long double gap = g.order ? r - g.order->value() : 1.0L;
        if (gap <= 0 || gap < margin) {
            c.note = gap <= 0 ? "outside the region of convergence" : "too close to the abscissa for I0";
            rep.points.push_back(c);
            continue;
        }
        try {
            c.numeric = numeric_forward(a, p.s, p.u);
        } catch (const Error& e) {
            c.note = e.what();
            rep.points.push_back(c);
            continue;
        }
        Complex sym;
        try {
            sym = V.eval(Complex(p.s, 0), Complex(p.u, 0));
        } catch (const Error& e) {
            c.verdict = Verdict::Fail;
            c.note = std::string("image cannot be evaluated: ") + e.what();
            rep.points.push_back(c);
            continue;
        }
        c.symbolic = sym.real();
        c.rel_err = relative_error(c.numeric, c.symbolic);
        if (!std::isfinite(sym.real()) || !std::isfinite(sym.imag())) {
            c.verdict = Verdict::Fail;
            c.note = "image is not finite here";
        } else if (std::fabs(sym.imag()) > tol * std::max(1.0L, std::fabs(sym.real()))) {
            c.verdict = Verdict::Fail;
            c.note = "image is not real here";
        } else {
            c.verdict = c.rel_err <= tol ? Verdict::Pass : Verdict::Fail;
        }
        rep.points.push_back(c);
    }

    if (V.invertible && !a.has_specials() && !a.contains(Var::X)) {
        AtomEvaluator ev(a);
        const long double shift = std::max(0.0L, g.order ? g.order->value() : 0.0L);
        for (long double t : {0.5L, 1.0L, 2.0L}) {
            TalbotCheck c;
            c.t = t;
            c.exact = ev(t);
            try {
                c.numeric = numeric_invert([&](Complex r) { return V.eval(r, Complex(1, 0)); }, t, shift);
                c.rel_err = talbot_error(c.numeric, c.exact);
                c.verdict = c.rel_err <= tol ? Verdict::Pass : Verdict::Fail;
            } catch (const Error& e) {
                c.verdict = Verdict::Fail;
                c.note = e.what();
            }
            rep.talbot.push_back(c);
        }
    }
    return rep;
}

}  // namespace shehu
