#include "shehu/inverse.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

#include "shehu/transform.hpp"

namespace shehu {

RationalR normalize_image(const ImageExpr& e) {
    HomogeneousForm h = homogeneous_form(e);
    if (!h.f.is_proper())
        throw Error(ErrorKind::ImproperImage,
                    "numerator degree in s/u is not below the denominator degree: " + h.f.str("r"));
    return RationalR{h.f, h.u_power};
}

RationalR normalize_image(std::string_view text, const ConstantBindings& constants) {
    return normalize_image(parse_image(text, constants));
}

// ---------------------------------------------------------------- factoring

namespace {

/// Best rational approximation with denominator <= max_den, by continued fractions.
std::optional<Rational> rational_approx(long double y, long max_den) {
    if (!std::isfinite(y) || std::fabs(y) > 1e12L) return std::nullopt;
    long double x = y;
    Integer h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    for (int i = 0; i < 40; ++i) {
        long double fl = std::floor(x);
        Integer ai(static_cast<long>(fl));
        Integer h2 = ai * h1 + h0, k2 = ai * k1 + k0;
        if (k2 > max_den) break;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        long double frac = x - fl;
        Rational q(h1, k1);
        q.canonicalize();
        if (std::fabs(to_long_double(q) - y) <= 1e-13L * std::max(1.0L, std::fabs(y))) return q;
        if (frac < 1e-18L) break;
        x = 1 / frac;
    }
    if (k1 == 0) return std::nullopt;
    Rational q(h1, k1);
    q.canonicalize();
    if (std::fabs(to_long_double(q) - y) <= 1e-10L * std::max(1.0L, std::fabs(y))) return q;
    return std::nullopt;
}

/// Exact candidates c*pi^k whose value matches x.
std::vector<Coeff> recognize(long double x) {
    std::vector<Coeff> out;
    if (std::fabs(x) < 1e-14L) out.emplace_back(0);
    for (int k : {0, 1, -1, 2, -2, 3, -3, 4, -4, 5, 6, 8}) {
        long double y = x / std::pow(kPi, static_cast<long double>(k));
        if (auto q = rational_approx(y, 1000000)) {
            if (*q != 0) out.push_back(Coeff(*q) * Coeff::pi_power(k));
        }
    }
    return out;
}

bool all_rational(const CPoly& p) {
    return std::all_of(p.coeffs().begin(), p.coeffs().end(), [](const Coeff& c) { return c.is_rational(); });
}

std::vector<Integer> divisors(Integer n) {
    n = abs(n);
    std::vector<Integer> out;
    if (n == 0 || n > Integer("1000000000000")) return out;
    for (Integer d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            if (d * d != n) out.push_back(n / d);
        }
    }
    return out;
}

/// Rational roots by the rational-root theorem (skipped for very large coefficients).
std::vector<Rational> rational_roots(const CPoly& p) {
    std::vector<Rational> out;
    if (!all_rational(p) || p.degree() < 1) return out;
    Integer l = 1;
    for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.rational().get_den_mpz_t());
    std::vector<Integer> z;
    for (const auto& c : p.coeffs()) z.push_back(c.rational().get_num() * (l / c.rational().get_den()));
    std::size_t lo = 0;
    while (lo < z.size() && z[lo] == 0) ++lo;
    if (lo > 0) out.emplace_back(0);
    auto ps = divisors(z[lo]);
    auto qs = divisors(z.back());
    if (ps.empty() || qs.empty() || ps.size() * qs.size() > 200000) return out;
    QPoly qp;
    {
        std::vector<Rational> v;
        for (const auto& c : p.coeffs()) v.push_back(c.rational());
        qp = QPoly(std::move(v));
    }
    for (const auto& a : ps) {
        for (const auto& b : qs) {
            for (int sgn : {1, -1}) {
                Rational cand(sgn * a, b);
                cand.canonicalize();
                if (qp.eval(cand) == 0 && std::find(out.begin(), out.end(), cand) == out.end()) out.push_back(cand);
            }
        }
    }
    return out;
}

/// Square-free decomposition: p = prod a_i^i with each a_i monic and square-free.
std::vector<std::pair<CPoly, unsigned>> square_free(const CPoly& p) {
    std::vector<std::pair<CPoly, unsigned>> out;
    CPoly f = p.monic();
    CPoly df = f.derivative();
    CPoly b = gcd(f, df);
    CPoly c = f.divmod(b).first;
    CPoly d = df.divmod(b).first - c.derivative();
    unsigned i = 1;
    while (c.degree() > 0) {
        CPoly a = gcd(c, d);
        if (a.is_zero()) a = c;
        c = c.divmod(a).first;
        d = d.divmod(a).first - c.derivative();
        if (a.degree() > 0) out.emplace_back(a, i);
        ++i;
    }
    return out;
}

CPoly quadratic(const Coeff& beta, const Coeff& alpha) {
    return CPoly(std::vector<Coeff>{beta * beta + alpha * alpha, Coeff(-2) * beta, Coeff(1)});
}

bool divides(const CPoly& d, const CPoly& p) { return p.divmod(d).second.is_zero(); }

/// Splits a monic quadratic into linear factors or returns it when irreducible.
void split_quadratic(const CPoly& h, std::vector<CPoly>& out) {
    Coeff beta = -h.coeff(1) / Coeff(2);
    Coeff disc = beta * beta - h.coeff(0);
    if (disc.sign() < 0) {
        auto alpha = (-disc).exact_sqrt();
        if (!alpha)
            throw Error(ErrorKind::IrrationalRoot,
                        "complex roots with irrational imaginary part: " + format_poly(h, "r"));
        if (alpha->sign() < 0) alpha = -*alpha;
        out.push_back(quadratic(beta, *alpha));
        return;
    }
    auto root = disc.exact_sqrt();
    if (!root) throw Error(ErrorKind::IrrationalRoot, "irrational real roots: " + format_poly(h, "r"));
    out.push_back(CPoly::linear_root(beta + *root));
    out.push_back(CPoly::linear_root(beta - *root));
}

std::vector<CPoly> split_square_free(CPoly rem) {
    std::vector<CPoly> out;
    auto take = [&](const CPoly& f) {
        out.push_back(f);
        rem = rem.divmod(f).first;
    };
    for (const auto& q : rational_roots(rem)) take(CPoly::linear_root(Coeff(q)));
    if (rem.degree() >= 2) {
        for (const auto& z : numeric_roots(rem)) {
            if (rem.degree() < 2) break;
            if (std::fabs(z.imag()) > 1e-9L * (1 + std::abs(z))) continue;
            for (const auto& cand : recognize(z.real())) {
                if (rem.eval(cand).is_zero()) {
                    take(CPoly::linear_root(cand));
                    break;
                }
            }
        }
    }
    if (rem.degree() > 2) {
        for (const auto& z : numeric_roots(rem)) {
            if (rem.degree() <= 2) break;
            if (z.imag() <= 1e-9L * (1 + std::abs(z))) continue;
            bool found = false;
            for (const auto& beta : recognize(z.real())) {
                for (const auto& alpha : recognize(z.imag())) {
                    if (alpha.sign() <= 0) continue;
                    CPoly q = quadratic(beta, alpha);
                    if (divides(q, rem)) {
                        take(q);
                        found = true;
                        break;
                    }
                }
                if (found) break;
            }
        }
    }
    if (rem.degree() > 2)
        throw Error(ErrorKind::IrreducibleHighDegree,
                    "cannot split a degree " + std::to_string(rem.degree()) + " factor: " + format_poly(rem, "r"));
    if (rem.degree() == 1) out.push_back(rem.monic());
    if (rem.degree() == 2) split_quadratic(rem.monic(), out);
    return out;
}

long double factor_key(const CPoly& f) { return f.degree() == 1 ? -f.coeff(0).value() : -f.coeff(1).value() / 2; }

}  // namespace

Factorization factor_denominator(const CPoly& p) {
    if (p.is_zero()) throw Error(ErrorKind::InvalidArgument, "cannot factor the zero polynomial");
    Factorization out{p.leading(), {}};
    if (p.degree() < 1) return out;
    for (const auto& [part, mult] : square_free(p)) {
        for (auto& f : split_square_free(part)) out.factors.push_back({std::move(f), mult});
    }
    std::stable_sort(out.factors.begin(), out.factors.end(), [](const DenominatorFactor& a, const DenominatorFactor& b) {
        if (a.factor.degree() != b.factor.degree()) return a.factor.degree() < b.factor.degree();
        return factor_key(a.factor) < factor_key(b.factor);
    });
    CPoly check = CPoly::constant(out.leading);
    for (const auto& f : out.factors) check *= f.factor.pow(f.multiplicity);
    if (check != p) throw Error(ErrorKind::IrreducibleHighDegree, "factorization did not reproduce " + format_poly(p, "r"));
    return out;
}

// ---------------------------------------------------------------- partial fractions

RationalFunction PartialFractionTerm::image() const {
    if (kind == Kind::LinearPole) return Coeff(c) * RationalFunction::pole(root, multiplicity);
    CPoly q = quadratic(root, freq).pow(multiplicity);
    CPoly top = CPoly(std::vector<Coeff>{d - c * root, c});
    return RationalFunction(top, q);
}

namespace {

std::string shift_text(const Coeff& a) {
    if (a.is_zero()) return "r";
    auto [neg, text] = signed_term(a, "");
    return std::string("r ") + (neg ? "+ " : "- ") + text;
}

std::string factor_text(const Coeff& c) {
    auto [neg, s] = signed_term(c, "");
    if (s.find_first_of(" /") != std::string::npos) s = "(" + s + ")";
    return neg ? "-" + s : s;
}

}  // namespace

std::string PartialFractionTerm::str() const {
    std::string pow = multiplicity > 1 ? "^" + std::to_string(multiplicity) : "";
    if (kind == Kind::LinearPole) {
        std::string den = root.is_zero() ? "r" + pow : "(" + shift_text(root) + ")" + pow;
        return factor_text(c) + "/" + den;
    }
    std::string sq = root.is_zero() ? "r^2" : "(" + shift_text(root) + ")^2";
    std::string den = sq + " + " + factor_text(freq * freq);
    den = multiplicity > 1 ? "(" + den + ")" + pow : "(" + den + ")";
    std::vector<std::pair<bool, std::string>> top;
    std::string lin = root.is_zero() ? "r" : "(" + shift_text(root) + ")";
    if (!c.is_zero()) top.push_back(signed_term(c, lin));
    if (!d.is_zero()) top.push_back(signed_term(d, ""));
    std::string num = c.is_zero() ? factor_text(d) : join_terms(top);
    if (!c.is_zero() && num.find_first_of(" /") != std::string::npos) num = "(" + num + ")";
    return num + "/" + den;
}

std::vector<PartialFractionTerm> partial_fractions(const RationalR& f) {
    if (!f.f.is_proper())
        throw Error(ErrorKind::ImproperImage, "partial fractions need a proper image: " + f.f.str("r"));
    if (f.f.is_zero()) return {};
    const CPoly& den = f.f.den();
    Factorization fac = factor_denominator(den);

    struct Slot {
        std::size_t factor;
        unsigned power;
        bool linear_part;  // the (r - beta) numerator of a quadratic
    };
    std::vector<Slot> slots;
    std::vector<CPoly> columns;
    for (std::size_t i = 0; i < fac.factors.size(); ++i) {
        const auto& df = fac.factors[i];
        for (unsigned j = 1; j <= df.multiplicity; ++j) {
            CPoly rest = den.divmod(df.factor.pow(j)).first;
            if (df.factor.degree() == 1) {
                slots.push_back({i, j, false});
                columns.push_back(rest);
            } else {
                Coeff beta = -df.factor.coeff(1) / Coeff(2);
                slots.push_back({i, j, true});
                columns.push_back(rest * CPoly::linear_root(beta));
                slots.push_back({i, j, false});
                columns.push_back(rest);
            }
        }
    }
    const std::size_t n = columns.size();
    // Solve sum_k x_k * columns[k] = num by Gaussian elimination over Q(pi).
    std::vector<std::vector<Coeff>> m(n, std::vector<Coeff>(n + 1));
    for (std::size_t row = 0; row < n; ++row) {
        for (std::size_t k = 0; k < n; ++k) m[row][k] = columns[k].coeff(static_cast<int>(row));
        m[row][n] = f.f.num().coeff(static_cast<int>(row));
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col].is_zero()) ++piv;
        if (piv == n) throw Error(ErrorKind::InvalidArgument, "singular partial-fraction system");
        std::swap(m[piv], m[col]);
        Coeff inv = Coeff(1) / m[col][col];
        for (std::size_t k = col; k <= n; ++k) m[col][k] *= inv;
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || m[row][col].is_zero()) continue;
            Coeff factor = m[row][col];
            for (std::size_t k = col; k <= n; ++k) m[row][k] -= factor * m[col][k];
        }
    }

    std::vector<PartialFractionTerm> terms;
    for (std::size_t k = 0; k < n; ++k) {
        const Slot& s = slots[k];
        const auto& df = fac.factors[s.factor];
        const Coeff& x = m[k][n];
        if (df.factor.degree() == 1) {
            if (x.is_zero()) continue;
            PartialFractionTerm t;
            t.kind = PartialFractionTerm::Kind::LinearPole;
            t.root = -df.factor.coeff(0);
            t.multiplicity = s.power;
            t.c = x;
            terms.push_back(t);
        } else if (s.linear_part) {
            const Coeff& y = m[k + 1][n];
            if (x.is_zero() && y.is_zero()) continue;
            PartialFractionTerm t;
            t.kind = PartialFractionTerm::Kind::QuadraticPole;
            t.root = -df.factor.coeff(1) / Coeff(2);
            Coeff alpha2 = df.factor.coeff(0) - t.root * t.root;
            t.freq = *alpha2.exact_sqrt();
            if (t.freq.sign() < 0) t.freq = -t.freq;
            t.multiplicity = s.power;
            t.c = x;
            t.d = y;
            terms.push_back(t);
        }
    }
    RationalFunction sum;
    for (const auto& t : terms) sum += t.image();
    if (sum != f.f) throw Error(ErrorKind::InvalidArgument, "partial fractions do not reconstruct " + f.f.str("r"));
    return terms;
}

// ---------------------------------------------------------------- inversion

namespace {

AtomSum atom(const Coeff& c, unsigned power, const Coeff& rate, Trig trig = Trig::None, const Coeff& freq = Coeff()) {
    Atom a;
    a.coeff = c;
    a.t = Factor{power, rate, trig, trig == Trig::None ? Coeff() : freq};
    return AtomSum::single(a);
}

}  // namespace

AtomSum invert_term(const PartialFractionTerm& term) {
    const unsigned m = term.multiplicity;
    if (term.kind == PartialFractionTerm::Kind::LinearPole)
        return atom(term.c / Coeff(factorial(m - 1)), m - 1, term.root);

    // I_k, J_k: inverses of 1/(r^2 + a^2)^k and r/(r^2 + a^2)^k
    const Coeff& alpha = term.freq;
    const Coeff a2 = alpha * alpha;
    AtomSum I = atom(Coeff(1) / alpha, 0, Coeff(), Trig::Sin, alpha);
    AtomSum J = atom(Coeff(1), 0, Coeff(), Trig::Cos, alpha);
    const AtomSum t = atom(Coeff(1), 1, Coeff());
    for (unsigned k = 1; k < m; ++k) {
        J = Coeff(Rational(1, 2 * k)) * (t * I);
        I = (Coeff(1) / a2) * (I - differentiate(J, Var::T));
    }
    AtomSum body = term.c * J + term.d * I;
    if (term.root.is_zero()) return body;
    return atom(Coeff(1), 0, term.root) * body;
}

InverseResult invert_with_trace(const RationalR& f) {
    if (f.u_power != 0)
        throw Error(ErrorKind::UPowerMismatch, "image carries an extra factor u^" + std::to_string(f.u_power) +
                                                   "; an image of a function of t is a function of s/u alone");
    InverseResult out;
    out.terms = partial_fractions(f);
    for (const auto& t : out.terms) out.atoms = out.atoms + invert_term(t);
    if (transform(out.atoms).rational != f.f)
        throw Error(ErrorKind::InvalidArgument, "inverse does not transform back to " + f.f.str("r"));
    out.expr = embed(out.atoms);
    return out;
}

Expr invert(const RationalR& f) { return invert_with_trace(f).expr; }

}  // namespace shehu
