#include "shehu/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <regex>

namespace shehu {

namespace {

AtomSum nth_derivative(AtomSum a, int n, Var v = Var::T) {
    for (int i = 0; i < n; ++i) a = differentiate(a, v);
    return a;
}

AtomSum apply_operator(const std::vector<Coeff>& coeffs, const AtomSum& v) {
    AtomSum out;
    AtomSum d = v;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (k > 0) d = differentiate(d, Var::T);
        if (!coeffs[k].is_zero()) out = out + coeffs[k] * d;
    }
    return out;
}

std::string operator_text(const std::vector<Coeff>& coeffs, const std::string& fn) {
    std::vector<std::pair<bool, std::string>> terms;
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        if (coeffs[k].is_zero()) continue;
        terms.push_back(signed_term(coeffs[k], fn + std::string(k, '\'')));
    }
    return join_terms(terms);
}

Coeff constant_of(const AtomSum& a, const std::string& what) {
    if (a.is_zero()) return Coeff();
    if (a.has_specials() || a.atoms().size() != 1 || !a.atoms()[0].t.is_one() || !a.atoms()[0].x.is_one())
        throw Error(ErrorKind::InvalidArgument, what + " is not a constant: " + format(a));
    return a.atoms()[0].coeff;
}

void check_ivp(const IVProblem& p) {
    if (p.coeffs.size() < 2) throw Error(ErrorKind::InvalidArgument, "the equation must involve a derivative of v");
    if (p.coeffs.back().is_zero()) throw Error(ErrorKind::InvalidArgument, "leading coefficient is zero");
    if (static_cast<int>(p.inits.size()) != p.order())
        throw Error(ErrorKind::ArityMismatch, "an order " + std::to_string(p.order()) + " equation needs " +
                                                  std::to_string(p.order()) + " initial values, got " +
                                                  std::to_string(p.inits.size()));
    if (p.forcing.contains(Var::X)) throw Error(ErrorKind::NonTransformable, "forcing depends on x");
}

}  // namespace

Solution solve_ivp(const IVProblem& p) {
    check_ivp(p);
    const int n = p.order();
    TransformImage G = transform(p.forcing);
    if (!G.is_rational()) throw Error(ErrorKind::NonTransformable, "forcing has no rational image: " + format(p.forcing));

    CPoly charpoly(p.coeffs);
    // sum_k a_k sum_{j<k} r^(k-1-j) v^(j)(0)
    CPoly init_terms;
    for (int k = 1; k <= n; ++k)
        for (int j = 0; j < k; ++j)
            init_terms += CPoly::monomial(p.coeffs[static_cast<std::size_t>(k)] * p.inits[static_cast<std::size_t>(j)], k - 1 - j);

    RationalFunction V = (G.rational + RationalFunction(init_terms, CPoly::constant(Coeff(1)))) /
                         RationalFunction(charpoly, CPoly::constant(Coeff(1)));
    InverseResult inv = invert_with_trace(RationalR{V, 0});

    Solution out;
    out.atoms = inv.atoms;
    out.expr = inv.expr;
    auto& d = out.derivation;
    d.push_back({"equation", operator_text(p.coeffs, "v") + " = " + format(p.forcing)});
    d.push_back({"forcing image", format_image(G)});
    d.push_back({"characteristic polynomial", format_poly(charpoly, "r")});
    d.push_back({"initial terms", format_poly(init_terms, "r")});
    TransformImage VI{V, {}, std::nullopt};
    d.push_back({"image", format_image(VI)});
    d.push_back({"image in r", format_homogenized(VI)});
    for (const auto& t : inv.terms) d.push_back({"partial fraction", t.str() + "  ->  " + format(invert_term(t))});
    d.push_back({"solution", format(out.expr)});

    if (!(apply_operator(p.coeffs, out.atoms) - p.forcing).is_zero())
        throw Error(ErrorKind::InvalidArgument, "solution fails the equation: " + format(out.atoms));
    for (int k = 0; k < n; ++k) {
        if (at_zero(nth_derivative(out.atoms, k), Var::T) != AtomSum::constant(p.inits[static_cast<std::size_t>(k)]))
            throw Error(ErrorKind::InvalidArgument, "solution fails initial condition " + std::to_string(k));
    }
    return out;
}

// ---------------------------------------------------------------- PDE

namespace {

/// Coefficients of sin(k pi x / L), keyed by k.
std::map<long, Coeff> sine_modes(const AtomSum& data, const Coeff& length, const std::string& what) {
    std::map<long, Coeff> out;
    if (data.has_specials()) throw Error(ErrorKind::NonSineData, what + " contains special functions");
    for (const auto& a : data.atoms()) {
        const Factor& fx = a.x;
        if (!a.t.is_one() || fx.power != 0 || !fx.rate.is_zero() || fx.trig != Trig::Sin)
            throw Error(ErrorKind::NonSineData, what + " is not a finite sine series in x: " + format(data));
        Coeff k = fx.freq * length / Coeff::pi_power(1);
        if (!k.is_integer() || k.sign() <= 0)
            throw Error(ErrorKind::NonSineData, what + " has a mode that does not vanish at x = L: " + format(data));
        out[k.rational().get_num().get_si()] = a.coeff;
    }
    return out;
}

AtomSum sine_atom(const Coeff& freq) {
    Atom a;
    a.coeff = Coeff(1);
    a.x = Factor{0, Coeff(), Trig::Sin, freq};
    return AtomSum::single(a);
}

AtomSum pde_operator(const ModalPDEProblem& p, const AtomSum& v) {
    if (p.kind == PDEKind::Heat) return differentiate(v, Var::T) - p.speed * nth_derivative(v, 2, Var::X);
    return nth_derivative(v, 2) - (p.speed * p.speed) * nth_derivative(v, 2, Var::X);
}

void check_pde(const ModalPDEProblem& p) {
    if (p.length.sign() <= 0) throw Error(ErrorKind::InvalidArgument, "domain length must be positive");
    if (p.speed.sign() <= 0)
        throw Error(ErrorKind::InvalidArgument, p.kind == PDEKind::Heat ? "diffusivity must be positive"
                                                                         : "wave speed must be positive");
    if (p.kind == PDEKind::Heat && !p.velocity.is_zero())
        throw Error(ErrorKind::InvalidArgument, "the heat equation takes no initial velocity");
    if (p.forcing.contains(Var::T)) throw Error(ErrorKind::NonSineData, "forcing must not depend on t");
}

}  // namespace

Solution solve_pde(const ModalPDEProblem& p) {
    check_pde(p);
    auto A = sine_modes(p.initial, p.length, "initial data");
    auto B = sine_modes(p.velocity, p.length, "initial velocity");
    auto F = sine_modes(p.forcing, p.length, "forcing");
    std::vector<long> ks;
    for (const auto* m : {&A, &B, &F})
        for (const auto& [k, c] : *m) ks.push_back(k);
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());

    Solution out;
    std::string rhs = join_terms({signed_term(p.kind == PDEKind::Heat ? p.speed : p.speed * p.speed, "v_xx")});
    if (!p.forcing.is_zero()) {
        std::string f = format(p.forcing);
        rhs += f.front() == '-' ? " - " + f.substr(1) : " + " + f;
    }
    out.derivation.push_back({"equation", (p.kind == PDEKind::Heat ? "v_t = " : "v_tt = ") + rhs});
    out.derivation.push_back({"boundary", "v(0,t) = v(" + p.length.str() + ",t) = 0"});
    auto get = [](const std::map<long, Coeff>& m, long k) {
        auto it = m.find(k);
        return it == m.end() ? Coeff() : it->second;
    };
    for (long k : ks) {
        Coeff freq = Coeff(k) * Coeff::pi_power(1) / p.length;
        Coeff lambda = freq * freq;
        IVProblem mode;
        if (p.kind == PDEKind::Heat) {
            mode.coeffs = {p.speed * lambda, Coeff(1)};
            mode.inits = {get(A, k)};
        } else {
            mode.coeffs = {p.speed * p.speed * lambda, Coeff(), Coeff(1)};
            mode.inits = {get(A, k), get(B, k)};
        }
        mode.forcing = AtomSum::constant(get(F, k));
        Solution w = solve_ivp(mode);
        std::string prefix = "mode " + std::to_string(k) + " ";
        for (const auto& step : w.derivation) {
            if (step.label == "equation" || step.label == "image" || step.label == "solution")
                out.derivation.push_back({prefix + step.label, step.value});
        }
        out.atoms = out.atoms + w.atoms * sine_atom(freq);
    }
    out.expr = embed(out.atoms);
    out.derivation.push_back({"solution", format(out.expr)});

    if (!(pde_operator(p, out.atoms) - p.forcing).is_zero())
        throw Error(ErrorKind::InvalidArgument, "solution fails the equation: " + format(out.atoms));
    if (at_zero(out.atoms, Var::T) != p.initial)
        throw Error(ErrorKind::InvalidArgument, "solution fails the initial data");
    if (p.kind == PDEKind::Wave && at_zero(differentiate(out.atoms, Var::T), Var::T) != p.velocity)
        throw Error(ErrorKind::InvalidArgument, "solution fails the initial velocity");
    if (!at_zero(out.atoms, Var::X).is_zero() || !at_point(out.atoms, Var::X, p.length).is_zero())
        throw Error(ErrorKind::InvalidArgument, "solution fails the boundary conditions");
    return out;
}

// ---------------------------------------------------------------- parsing

Coeff parse_constant(std::string_view text) {
    return constant_of(canonicalize(parse(text)), "'" + std::string(text) + "'");
}

IVProblem parse_ivp(std::string_view equation, std::string_view inits) {
    static const std::regex vref(R"((^|[^A-Za-z0-9_])v('*)(\(t\))?(?![A-Za-z0-9_(]))");
    std::string eq(equation);
    std::string sub;
    int order = -1;
    auto last = eq.cbegin();
    for (std::sregex_iterator it(eq.begin(), eq.end(), vref), end; it != end; ++it) {
        const auto& m = *it;
        sub.append(last, m[0].first);
        int k = static_cast<int>(m[2].length());
        order = std::max(order, k);
        sub += m[1].str() + "__v" + std::to_string(k);
        last = m[0].second;
    }
    sub.append(last, eq.cend());
    if (order < 0) throw Error(ErrorKind::InvalidArgument, "the equation does not mention v");
    auto eq_pos = sub.find('=');
    if (eq_pos == std::string::npos || sub.find('=', eq_pos + 1) != std::string::npos)
        throw Error(ErrorKind::Syntax, "the equation needs exactly one '='");
    std::string lhs = sub.substr(0, eq_pos), rhs = sub.substr(eq_pos + 1);

    auto eval = [&](const std::vector<Coeff>& vals) {
        ConstantBindings c;
        for (int k = 0; k <= order; ++k) c["__v" + std::to_string(k)] = vals[static_cast<std::size_t>(k)];
        return canonicalize(parse(lhs, c) - parse(rhs, c));
    };
    const std::size_t n1 = static_cast<std::size_t>(order) + 1;
    AtomSum base = eval(std::vector<Coeff>(n1));
    IVProblem p;
    p.forcing = -base;
    AtomSum all_ones;
    for (std::size_t k = 0; k < n1; ++k) {
        std::vector<Coeff> vals(n1);
        vals[k] = Coeff(1);
        Coeff a = constant_of(eval(vals) - base, "coefficient of v" + std::string(k, '\''));
        vals[k] = Coeff(2);
        if (constant_of(eval(vals) - base, "coefficient") != Coeff(2) * a)
            throw Error(ErrorKind::InvalidArgument, "the equation is not linear in v" + std::string(k, '\''));
        p.coeffs.push_back(a);
    }
    Coeff sum;
    for (const auto& a : p.coeffs) sum += a;
    if (constant_of(eval(std::vector<Coeff>(n1, Coeff(1))) - base, "coefficient") != sum)
        throw Error(ErrorKind::InvalidArgument, "the equation is not linear in v");
    while (p.coeffs.size() > 1 && p.coeffs.back().is_zero()) p.coeffs.pop_back();

    static const std::regex init_re(R"(^\s*v('*)\s*\(\s*0\s*\)\s*=\s*(.+?)\s*$)");
    std::map<int, Coeff> given;
    std::string text(inits);
    std::size_t start = 0;
    while (start <= text.size() && !text.empty()) {
        std::size_t comma = text.find(',', start);
        std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        std::smatch m;
        if (!std::regex_match(item, m, init_re))
            throw Error(ErrorKind::Syntax, "expected an initial value like v'(0)=1, got '" + item + "'");
        int k = static_cast<int>(m[1].length());
        if (given.count(k)) throw Error(ErrorKind::InvalidArgument, "initial value given twice: " + item);
        given[k] = constant_of(canonicalize(parse(m[2].str())), "initial value");
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    const int n = static_cast<int>(p.coeffs.size()) - 1;
    for (const auto& [k, v] : given) {
        if (k >= n)
            throw Error(ErrorKind::ArityMismatch, "initial value for derivative " + std::to_string(k) +
                                                      " but the equation has order " + std::to_string(n));
    }
    for (int k = 0; k < n; ++k) {
        auto it = given.find(k);
        if (it == given.end())
            throw Error(ErrorKind::ArityMismatch, "missing initial value v" + std::string(static_cast<std::size_t>(k), '\'') + "(0)");
        p.inits.push_back(it->second);
    }
    return p;
}

// ---------------------------------------------------------------- residuals

long double ResidualReport::max() const { return std::max({equation, initial, boundary}); }

ResidualReport residual(const IVProblem& p, const Expr& candidate) {
    check_ivp(p);
    AtomSum c = canonicalize(candidate);
    ResidualReport r;
    AtomEvaluator diff(apply_operator(p.coeffs, c) - p.forcing);
    for (int i = 1; i <= 32; ++i) r.equation = std::max(r.equation, std::fabs(diff(i / 32.0L)));
    for (int k = 0; k < p.order(); ++k) {
        AtomEvaluator dk(nth_derivative(c, k));
        r.initial = std::max(r.initial, std::fabs(dk(0) - p.inits[static_cast<std::size_t>(k)].value()));
    }
    return r;
}

ResidualReport residual(const ModalPDEProblem& p, const Expr& candidate) {
    check_pde(p);
    AtomSum c = canonicalize(candidate);
    ResidualReport r;
    const long double L = p.length.value();
    AtomEvaluator diff(pde_operator(p, c) - p.forcing);
    AtomEvaluator v(c), vt(differentiate(c, Var::T)), v0(p.initial), v1(p.velocity);
    for (int i = 1; i <= 16; ++i) {
        long double x = L * i / 16;
        long double t = i / 16.0L;
        for (int j = 1; j <= 16; ++j) r.equation = std::max(r.equation, std::fabs(diff(j / 16.0L, x)));
        r.initial = std::max(r.initial, std::fabs(v(0, x) - v0(0, x)));
        if (p.kind == PDEKind::Wave) r.initial = std::max(r.initial, std::fabs(vt(0, x) - v1(0, x)));
        r.boundary = std::max({r.boundary, std::fabs(v(t, 0)), std::fabs(v(t, L))});
    }
    return r;
}

}  // namespace shehu
