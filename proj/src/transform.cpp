#include "shehu/transform.hpp"

#include <algorithm>

namespace shehu {

namespace {

const Complex kI(0.0L, 1.0L);

Complex phi(PhiKind kind, const Coeff& param, Complex r) {
    long double a = param.value();
    switch (kind) {
        case PhiKind::ExpShift: return std::exp(-a * r);
        // split square roots keep the branch cuts on vertical segments left of the abscissa
        case PhiKind::InvSqrtSum: return 1.0L / (std::sqrt(r - kI * a) * std::sqrt(r + kI * a));
        case PhiKind::InvSqrtDiff: return 1.0L / (std::sqrt(r - a) * std::sqrt(r + a));
        case PhiKind::ArcTan: return std::atan(a / r);
        case PhiKind::LogSum: return std::log(r - kI * a) + std::log(r + kI * a) - 2.0L * std::log(a);
        case PhiKind::LogDiff: return std::log(r - a) - std::log(a);
    }
    return 0;
}

std::optional<Coeff> roc_max(const std::optional<Coeff>& a, const std::optional<Coeff>& b) {
    if (!a) return b;
    if (!b) return a;
    return a->value() >= b->value() ? a : b;
}

std::vector<SpecialImageTerm> merge_specials(std::vector<SpecialImageTerm> in) {
    std::vector<SpecialImageTerm> out;
    for (auto& t : in) {
        auto it = std::find_if(out.begin(), out.end(), [&](const SpecialImageTerm& o) {
            return o.kind == t.kind && o.param == t.param;
        });
        if (it == out.end()) {
            out.push_back(std::move(t));
        } else {
            it->multiplier += t.multiplier;
        }
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const SpecialImageTerm& t) { return t.multiplier.is_zero(); }),
              out.end());
    return out;
}

RationalFunction shifted_pole_base(const Factor& f) {
    CPoly shift = CPoly::linear_root(f.rate);  // r - a
    switch (f.trig) {
        case Trig::None: return RationalFunction(CPoly::constant(Coeff(1)), shift);
        case Trig::Sin:
            return RationalFunction(CPoly::constant(f.freq), shift * shift + CPoly::constant(f.freq * f.freq));
        case Trig::Cos: return RationalFunction(shift, shift * shift + CPoly::constant(f.freq * f.freq));
    }
    return RationalFunction();
}

RationalFunction atom_image(const Atom& a) {
    const Factor& f = a.t;
    if (f.trig == Trig::None) {
        // t^p e^{at} -> p!/(r-a)^{p+1}
        return RationalFunction(CPoly::constant(a.coeff * Coeff(factorial(f.power))),
                                CPoly::linear_root(f.rate).pow(f.power + 1));
    }
    RationalFunction g = shifted_pole_base(f);
    for (unsigned k = 0; k < f.power; ++k) g = -g.derivative();
    return RationalFunction(a.coeff) * g;
}

}  // namespace

Complex TransformImage::eval_r(Complex r) const {
    Complex acc = rational.is_zero() ? Complex(0.0L, 0.0L) : rational.eval(r);
    for (const auto& s : specials) acc += s.multiplier.eval(r) * phi(s.kind, s.param, r);
    return acc;
}

TransformImage operator+(const TransformImage& a, const TransformImage& b) {
    TransformImage out;
    out.rational = a.rational + b.rational;
    std::vector<SpecialImageTerm> sp = a.specials;
    sp.insert(sp.end(), b.specials.begin(), b.specials.end());
    out.specials = merge_specials(std::move(sp));
    out.roc = roc_max(a.roc, b.roc);
    return out;
}

TransformImage operator*(const Coeff& k, const TransformImage& a) {
    TransformImage out = a;
    out.rational = RationalFunction(k) * a.rational;
    for (auto& s : out.specials) s.multiplier = RationalFunction(k) * s.multiplier;
    out.specials = merge_specials(std::move(out.specials));
    return out;
}

TransformImage transform_special(const Special& s) {
    TransformImage out;
    const Coeff& a = s.param;
    RationalFunction inv_r(CPoly::constant(Coeff(1)), CPoly::monomial(Coeff(1), 1));
    switch (s.kind) {
        case SpecialKind::Delta:
            if (a.is_zero()) {
                out.rational = RationalFunction(Coeff(1));
            } else {
                out.specials.push_back({RationalFunction(Coeff(1)), PhiKind::ExpShift, a});
            }
            break;
        case SpecialKind::J0:
            out.specials.push_back({RationalFunction(Coeff(1)), PhiKind::InvSqrtSum, a});
            out.roc = Coeff();
            break;
        case SpecialKind::I0:
            out.specials.push_back({RationalFunction(Coeff(1)), PhiKind::InvSqrtDiff, a});
            out.roc = a;
            break;
        case SpecialKind::Si:
            out.specials.push_back({inv_r, PhiKind::ArcTan, a});
            out.roc = Coeff();
            break;
        case SpecialKind::Ci:
            out.specials.push_back({RationalFunction(Coeff(Rational(-1, 2))) * inv_r, PhiKind::LogSum, a});
            out.roc = Coeff();
            break;
        case SpecialKind::Ei:
            out.specials.push_back({-inv_r, PhiKind::LogDiff, a});
            out.roc = a;
            break;
    }
    return out;
}

TransformImage transform(const AtomSum& v) {
    if (v.contains(Var::X)) throw Error(ErrorKind::NonTransformable, "expression depends on x");
    TransformImage out;
    for (const auto& a : v.atoms()) {
        out.rational += atom_image(a);
        out.roc = roc_max(out.roc, a.t.rate);
    }
    for (const auto& s : v.specials()) out = out + s.coeff * transform_special(s.special);
    return out;
}

TransformImage transform(const Expr& v) { return transform(canonicalize(v)); }

TransformImage derivative_image(int n, const TransformImage& V, const std::vector<Coeff>& inits) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "derivative order must be at least 1");
    if (static_cast<int>(inits.size()) != n)
        throw Error(ErrorKind::ArityMismatch, "derivative of order " + std::to_string(n) + " needs " +
                                                  std::to_string(n) + " initial values, got " +
                                                  std::to_string(inits.size()));
    RationalFunction rn(CPoly::monomial(Coeff(1), n), CPoly::constant(Coeff(1)));
    TransformImage out = V;
    out.rational = rn * V.rational;
    std::vector<Coeff> poly(static_cast<std::size_t>(n), Coeff());
    for (int k = 0; k < n; ++k) poly[static_cast<std::size_t>(n - 1 - k)] = inits[static_cast<std::size_t>(k)];
    out.rational = out.rational - RationalFunction(CPoly(poly), CPoly::constant(Coeff(1)));
    for (auto& s : out.specials) s.multiplier = rn * s.multiplier;
    return out;
}

TransformImage change_of_scale(const TransformImage& V, const Coeff& beta) {
    if (beta.sign() <= 0) throw Error(ErrorKind::InvalidArgument, "scale factor must be positive");
    Coeff inv = Coeff(1) / beta;
    TransformImage out;
    out.rational = RationalFunction(inv) * V.rational.scaled(inv);
    for (const auto& s : V.specials) {
        SpecialImageTerm t = s;
        t.multiplier = RationalFunction(inv) * s.multiplier.scaled(inv);
        switch (s.kind) {
            case PhiKind::ExpShift: t.param = s.param * inv; break;
            case PhiKind::InvSqrtSum:
            case PhiKind::InvSqrtDiff:
                t.multiplier = RationalFunction(beta) * t.multiplier;
                t.param = s.param * beta;
                break;
            default: t.param = s.param * beta; break;
        }
        out.specials.push_back(t);
    }
    if (V.roc) out.roc = *V.roc * beta;
    return out;
}

GrowthBound exponential_order(const AtomSum& v) {
    GrowthBound g;
    for (const auto& a : v.atoms()) {
        if (!g.order || a.t.rate.value() > g.order->value()) {
            g.order = a.t.rate;
            g.witness = format(AtomSum::single(a));
        }
    }
    for (const auto& s : v.specials()) {
        auto roc = transform_special(s.special).roc;
        if (roc && (!g.order || roc->value() > g.order->value())) {
            g.order = roc;
            g.witness = format(Expr::special(s.special.kind, s.special.param));
        }
    }
    if (!g.order) g.witness = v.is_zero() ? "zero function" : "delta atoms only";
    return g;
}

// ---------------------------------------------------------------- views

std::string_view to_string(View v) {
    switch (v) {
        case View::Shehu: return "shehu";
        case View::Natural: return "natural";
        case View::Sumudu: return "sumudu";
        case View::Laplace: return "laplace";
        case View::Yang: return "yang";
    }
    return "?";
}

View parse_view(std::string_view name) {
    for (View v : {View::Shehu, View::Natural, View::Sumudu, View::Laplace, View::Yang})
        if (to_string(v) == name) return v;
    throw Error(ErrorKind::InvalidArgument, "unknown view '" + std::string(name) + "'");
}

namespace {

struct ViewSymbols {
    ImageExpr s;      // what s becomes
    ImageExpr u;      // what u becomes
    int extra_u = 0;  // additional power of u (natural and sumudu divide by u)
};

ViewSymbols symbols_for(View view) {
    ImageExpr one = ImageExpr::num(Coeff(1));
    ImageExpr s = ImageExpr::sym(ImageSym::S);
    ImageExpr u = ImageExpr::sym(ImageSym::U);
    switch (view) {
        case View::Shehu: return {s, u, 0};
        case View::Natural: return {s, u, -1};
        case View::Sumudu: return {one, u, -1};
        case View::Laplace: return {s, one, 0};
        case View::Yang: return {one, ImageExpr::sym(ImageSym::W), 0};
    }
    return {s, u, 0};
}

ImageExpr homogeneous_poly(const CPoly& p, int degree, const ViewSymbols& vs) {
    std::vector<ImageExpr> terms;
    for (int i = p.degree(); i >= 0; --i) {
        const Coeff c = p.coeff(i);
        if (c.is_zero()) continue;
        terms.push_back(ImageExpr::mul({ImageExpr::num(c), ImageExpr::pow(vs.s, i), ImageExpr::pow(vs.u, degree - i)}));
    }
    return ImageExpr::add(std::move(terms));
}

ImageExpr rational_view(const RationalFunction& f, const ViewSymbols& vs) {
    if (f.is_zero()) return ImageExpr::num(Coeff());
    CPoly num = f.num();
    CPoly den = f.den();
    bool rational_den = std::all_of(den.coeffs().begin(), den.coeffs().end(),
                                    [](const Coeff& c) { return c.is_rational(); });
    if (rational_den) {
        Integer l = 1;
        for (const auto& c : den.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.rational().get_den_mpz_t());
        Integer g = 0;
        for (const auto& c : den.coeffs()) {
            Integer v = c.rational().get_num() * (l / c.rational().get_den());
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        }
        Coeff scale(Rational(l, g));
        num = scale * num;
        den = scale * den;
    }
    int n = num.degree(), d = den.degree();
    int k = d - n + vs.extra_u;
    ImageExpr top = homogeneous_poly(num, n, vs);
    ImageExpr bottom = homogeneous_poly(den, d, vs);
    if (k >= 0) {
        top = ImageExpr::mul({ImageExpr::pow(vs.u, k), top});
    } else {
        bottom = ImageExpr::mul({ImageExpr::pow(vs.u, -k), bottom});
    }
    return ImageExpr::div(top, bottom);
}

ImageExpr phi_view(PhiKind kind, const Coeff& a, const ViewSymbols& vs) {
    using IE = ImageExpr;
    auto sq = [](const IE& e) { return IE::pow(e, 2); };
    IE au = IE::mul({IE::num(a), vs.u});
    IE a2u2 = IE::mul({IE::num(a * a), sq(vs.u)});
    switch (kind) {
        case PhiKind::ExpShift: return IE::fn(ImageFn::Exp, IE::div(IE::mul({IE::num(-a), vs.s}), vs.u));
        case PhiKind::InvSqrtSum: return IE::fn(ImageFn::Sqrt, IE::add({sq(vs.s), a2u2}));
        case PhiKind::InvSqrtDiff: return IE::fn(ImageFn::Sqrt, IE::add({sq(vs.s), IE::neg(a2u2)}));
        case PhiKind::ArcTan: return IE::fn(ImageFn::Atan, IE::div(au, vs.s));
        case PhiKind::LogSum: return IE::fn(ImageFn::Log, IE::div(IE::add({sq(vs.s), a2u2}), a2u2));
        case PhiKind::LogDiff: return IE::fn(ImageFn::Log, IE::div(IE::add({vs.s, IE::neg(au)}), au));
    }
    return IE();
}

std::string phi_r(PhiKind kind, const Coeff& a) {
    std::string as = a.str();
    std::string a2 = (a * a).str();
    if (a.needs_parens_in_product()) as = "(" + as + ")";
    if ((a * a).needs_parens_in_product()) a2 = "(" + a2 + ")";
    switch (kind) {
        case PhiKind::ExpShift: return "exp(-" + as + "*r)";
        case PhiKind::InvSqrtSum: return "1/sqrt(r^2 + " + a2 + ")";
        case PhiKind::InvSqrtDiff: return "1/sqrt(r^2 - " + a2 + ")";
        case PhiKind::ArcTan: return "atan(" + as + "/r)";
        case PhiKind::LogSum: return "log((r^2 + " + a2 + ")/" + a2 + ")";
        case PhiKind::LogDiff: return "log((r - " + as + ")/" + as + ")";
    }
    return "?";
}

}  // namespace

ImageExpr convert(const TransformImage& V, View view) {
    ViewSymbols vs = symbols_for(view);
    std::vector<ImageExpr> terms{rational_view(V.rational, vs)};
    ViewSymbols phi_syms = vs;
    phi_syms.extra_u = 0;
    for (const auto& s : V.specials) {
        if (s.kind == PhiKind::InvSqrtSum || s.kind == PhiKind::InvSqrtDiff) {
            // (r^2 +- a^2)^(-1/2) = u / sqrt(s^2 +- a^2 u^2)
            ViewSymbols lifted = vs;
            lifted.extra_u += 1;
            terms.push_back(ImageExpr::div(rational_view(s.multiplier, lifted), phi_view(s.kind, s.param, phi_syms)));
        } else {
            terms.push_back(ImageExpr::mul({rational_view(s.multiplier, vs), phi_view(s.kind, s.param, phi_syms)}));
        }
    }
    return ImageExpr::add(std::move(terms));
}

std::string format_image(const TransformImage& V, View view) { return format(convert(V, view)); }

std::string format_homogenized(const TransformImage& V) {
    std::vector<std::pair<bool, std::string>> terms;
    if (!V.rational.is_zero() || V.specials.empty()) terms.emplace_back(false, V.rational.str("r"));
    for (const auto& s : V.specials) {
        std::string m = s.multiplier.str("r");
        std::string p = phi_r(s.kind, s.param);
        if (m == "1") {
            terms.emplace_back(false, p);
        } else if (m == "-1") {
            terms.emplace_back(true, p);
        } else {
            terms.emplace_back(false, "(" + m + ")*" + p);
        }
    }
    return join_terms(terms) + ", r = s/u";
}

std::string format_roc(const std::optional<Coeff>& roc) {
    if (!roc) return "all s/u";
    return "s/u > " + roc->str();
}

}  // namespace shehu
