#include "shehu/atoms.hpp"

#include <algorithm>
#include <cmath>

#include "shehu/special_functions.hpp"

namespace shehu {

namespace {

using Weighted = std::vector<std::pair<Coeff, Factor>>;

int compare_factor(const Factor& a, const Factor& b) {
    if (a.power != b.power) return a.power < b.power ? -1 : 1;
    if (int c = compare(a.rate, b.rate)) return c;
    if (a.trig != b.trig) return a.trig < b.trig ? -1 : 1;
    return compare(a.freq, b.freq);
}

int compare_key(const Atom& a, const Atom& b) {
    if (int c = compare_factor(a.t, b.t)) return c;
    return compare_factor(a.x, b.x);
}

int compare_special(const Special& a, const Special& b) {
    if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
    return compare(a.param, b.param);
}

/// trig(freq) with freq folded to a positive value; may vanish.
Weighted with_trig(Factor base, Trig trig, const Coeff& freq) {
    if (trig == Trig::None) {
        base.trig = Trig::None;
        base.freq = Coeff();
        return {{Coeff(1), base}};
    }
    int sign = freq.sign();
    if (sign == 0) {
        if (trig == Trig::Sin) return {};
        base.trig = Trig::None;
        base.freq = Coeff();
        return {{Coeff(1), base}};
    }
    base.trig = trig;
    base.freq = sign < 0 ? -freq : freq;
    Coeff k(trig == Trig::Sin && sign < 0 ? -1 : 1);
    return {{k, base}};
}

Weighted multiply(const Factor& a, const Factor& b) {
    Factor base;
    base.power = a.power + b.power;
    base.rate = a.rate + b.rate;
    if (a.trig == Trig::None) return with_trig(base, b.trig, b.freq);
    if (b.trig == Trig::None) return with_trig(base, a.trig, a.freq);
    Coeff half = Coeff(Rational(1, 2));
    Coeff diff = a.freq - b.freq;
    Coeff sum = a.freq + b.freq;
    struct Piece {
        Coeff k;
        Trig trig;
        Coeff freq;
    };
    std::vector<Piece> pieces;
    if (a.trig == Trig::Sin && b.trig == Trig::Sin) {
        pieces = {{half, Trig::Cos, diff}, {-half, Trig::Cos, sum}};
    } else if (a.trig == Trig::Cos && b.trig == Trig::Cos) {
        pieces = {{half, Trig::Cos, diff}, {half, Trig::Cos, sum}};
    } else if (a.trig == Trig::Sin) {
        pieces = {{half, Trig::Sin, sum}, {half, Trig::Sin, diff}};
    } else {
        pieces = {{half, Trig::Sin, sum}, {-half, Trig::Sin, diff}};
    }
    Weighted out;
    for (const auto& p : pieces)
        for (auto& [k, f] : with_trig(base, p.trig, p.freq)) out.emplace_back(p.k * k, f);
    return out;
}

Atom unit_atom(const Coeff& c) {
    Atom a;
    a.coeff = c;
    return a;
}

bool is_constant_atom(const Atom& a) { return a.t.is_one() && a.x.is_one(); }

}  // namespace

AtomSum::AtomSum(std::vector<Atom> atoms, std::vector<SpecialTerm> specials) {
    std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return compare_key(a, b) < 0; });
    for (auto& a : atoms) {
        if (!atoms_.empty() && compare_key(atoms_.back(), a) == 0) {
            atoms_.back().coeff += a.coeff;
        } else {
            atoms_.push_back(std::move(a));
        }
    }
    atoms_.erase(std::remove_if(atoms_.begin(), atoms_.end(), [](const Atom& a) { return a.coeff.is_zero(); }),
                 atoms_.end());
    std::sort(specials.begin(), specials.end(), [](const SpecialTerm& a, const SpecialTerm& b) {
        return compare_special(a.special, b.special) < 0;
    });
    for (auto& s : specials) {
        if (!specials_.empty() && compare_special(specials_.back().special, s.special) == 0) {
            specials_.back().coeff += s.coeff;
        } else {
            specials_.push_back(std::move(s));
        }
    }
    specials_.erase(std::remove_if(specials_.begin(), specials_.end(),
                                   [](const SpecialTerm& s) { return s.coeff.is_zero(); }),
                    specials_.end());
}

AtomSum AtomSum::constant(const Coeff& c) { return AtomSum({unit_atom(c)}); }

bool AtomSum::contains(Var v) const {
    for (const auto& a : atoms_)
        if (!a.factor(v).is_one()) return true;
    return v == Var::T && !specials_.empty();
}

AtomSum operator+(const AtomSum& a, const AtomSum& b) {
    std::vector<Atom> atoms = a.atoms_;
    atoms.insert(atoms.end(), b.atoms_.begin(), b.atoms_.end());
    std::vector<SpecialTerm> specials = a.specials_;
    specials.insert(specials.end(), b.specials_.begin(), b.specials_.end());
    return AtomSum(std::move(atoms), std::move(specials));
}

AtomSum operator*(const Coeff& k, const AtomSum& a) {
    if (k.is_zero()) return AtomSum();
    AtomSum out = a;
    for (auto& x : out.atoms_) x.coeff *= k;
    for (auto& s : out.specials_) s.coeff *= k;
    return out;
}

AtomSum operator-(const AtomSum& a) { return Coeff(-1) * a; }
AtomSum operator-(const AtomSum& a, const AtomSum& b) { return a + (-b); }

AtomSum operator*(const AtomSum& a, const AtomSum& b) {
    if (!a.specials_.empty() && !b.specials_.empty())
        throw Error(ErrorKind::NonTransformable, "product of two special atoms");
    std::vector<Atom> atoms;
    for (const auto& x : a.atoms_) {
        for (const auto& y : b.atoms_) {
            Weighted ts = multiply(x.t, y.t);
            Weighted xs = multiply(x.x, y.x);
            Coeff c = x.coeff * y.coeff;
            for (const auto& [kt, ft] : ts)
                for (const auto& [kx, fx] : xs) atoms.push_back(Atom{c * kt * kx, ft, fx});
        }
    }
    std::vector<SpecialTerm> specials;
    auto scale_specials = [&](const std::vector<SpecialTerm>& sp, const std::vector<Atom>& other) {
        for (const auto& s : sp) {
            for (const auto& o : other) {
                if (!is_constant_atom(o))
                    throw Error(ErrorKind::NonTransformable, "special atom multiplied by a non-constant");
                specials.push_back(SpecialTerm{s.coeff * o.coeff, s.special});
            }
        }
    };
    scale_specials(a.specials_, b.atoms_);
    scale_specials(b.specials_, a.atoms_);
    return AtomSum(std::move(atoms), std::move(specials));
}

AtomSum canonicalize(const Expr& e) {
    const Node& n = e.node();
    switch (n.kind) {
        case Node::Kind::Const: return AtomSum::constant(n.value);
        case Node::Kind::Var: {
            Atom a = unit_atom(Coeff(1));
            a.factor(n.var).power = 1;
            return AtomSum::single(a);
        }
        case Node::Kind::Sum: {
            AtomSum acc;
            for (const auto& c : n.children) acc = acc + canonicalize(c);
            return acc;
        }
        case Node::Kind::Product: {
            AtomSum acc = AtomSum::constant(Coeff(1));
            for (const auto& c : n.children) acc = acc * canonicalize(c);
            return acc;
        }
        case Node::Kind::Pow: {
            AtomSum b = canonicalize(n.children.front());
            AtomSum acc = AtomSum::constant(Coeff(1));
            for (unsigned k = 0; k < n.exponent; ++k) acc = acc * b;
            return acc;
        }
        case Node::Kind::Func: {
            auto exp_atom = [&](const Coeff& k, const Coeff& rate) {
                Atom a = unit_atom(k);
                a.factor(n.var).rate = rate;
                return AtomSum::single(a);
            };
            Coeff half(Rational(1, 2));
            switch (n.func) {
                case Func::Exp: return exp_atom(Coeff(1), n.value);
                case Func::Sinh: return exp_atom(half, n.value) + exp_atom(-half, -n.value);
                case Func::Cosh: return exp_atom(half, n.value) + exp_atom(half, -n.value);
                case Func::Sin:
                case Func::Cos: {
                    std::vector<Atom> atoms;
                    Trig tr = n.func == Func::Sin ? Trig::Sin : Trig::Cos;
                    for (const auto& [k, f] : with_trig(Factor{}, tr, n.value)) {
                        Atom a = unit_atom(k);
                        a.factor(n.var) = f;
                        atoms.push_back(a);
                    }
                    return AtomSum(std::move(atoms));
                }
            }
            break;
        }
        case Node::Kind::Special: return AtomSum({}, {SpecialTerm{Coeff(1), n.special}});
    }
    throw Error(ErrorKind::NonTransformable, "expression outside the atom algebra");
}

namespace {

void factor_expr(const Factor& f, Var v, std::vector<Expr>& out) {
    if (f.power > 0) out.push_back(Expr::power(Expr::variable(v), f.power));
    if (!f.rate.is_zero()) out.push_back(Expr::function(Func::Exp, f.rate, v));
    if (f.trig != Trig::None) out.push_back(Expr::function(f.trig == Trig::Sin ? Func::Sin : Func::Cos, f.freq, v));
}

int display_compare_factor(const Factor& a, const Factor& b) {
    int za = a.rate.is_zero() ? 0 : 1;
    int zb = b.rate.is_zero() ? 0 : 1;
    if (za != zb) return za < zb ? -1 : 1;
    long double ra = a.rate.value(), rb = b.rate.value();
    if (ra != rb) return ra < rb ? -1 : 1;
    if (a.power != b.power) return a.power < b.power ? -1 : 1;
    auto rank = [](Trig t) { return t == Trig::None ? 0 : (t == Trig::Cos ? 1 : 2); };
    if (rank(a.trig) != rank(b.trig)) return rank(a.trig) < rank(b.trig) ? -1 : 1;
    long double fa = a.freq.value(), fb = b.freq.value();
    if (fa != fb) return fa < fb ? -1 : 1;
    return 0;
}

}  // namespace

Expr embed(const AtomSum& a) {
    std::vector<Atom> atoms = a.atoms();
    std::stable_sort(atoms.begin(), atoms.end(), [](const Atom& x, const Atom& y) {
        if (int c = display_compare_factor(x.t, y.t)) return c < 0;
        return display_compare_factor(x.x, y.x) < 0;
    });
    std::vector<Expr> terms;
    for (const auto& at : atoms) {
        std::vector<Expr> factors{Expr::constant(at.coeff)};
        factor_expr(at.t, Var::T, factors);
        factor_expr(at.x, Var::X, factors);
        terms.push_back(Expr::product(std::move(factors)));
    }
    for (const auto& s : a.specials())
        terms.push_back(Expr::product({Expr::constant(s.coeff), Expr::special(s.special.kind, s.special.param)}));
    if (terms.empty()) return Expr::constant(Coeff());
    return Expr::sum(std::move(terms));
}

std::string format(const AtomSum& a) { return format(embed(a)); }

AtomSum differentiate(const AtomSum& a, Var v) {
    if (v == Var::T && a.has_specials())
        throw Error(ErrorKind::UnsupportedAtom, "differentiation of special atoms is not supported");
    std::vector<Atom> out;
    for (const auto& at : a.atoms()) {
        const Factor& f = at.factor(v);
        if (f.power > 0) {
            Atom d = at;
            d.coeff *= Coeff(static_cast<long>(f.power));
            d.factor(v).power -= 1;
            out.push_back(d);
        }
        if (!f.rate.is_zero()) {
            Atom d = at;
            d.coeff *= f.rate;
            out.push_back(d);
        }
        if (f.trig != Trig::None) {
            Atom d = at;
            bool was_sin = f.trig == Trig::Sin;
            d.coeff *= was_sin ? f.freq : -f.freq;
            d.factor(v).trig = was_sin ? Trig::Cos : Trig::Sin;
            out.push_back(d);
        }
    }
    return AtomSum(std::move(out));
}

AtomSum at_zero(const AtomSum& a, Var v) { return at_point(a, v, Coeff()); }

AtomSum at_point(const AtomSum& a, Var v, const Coeff& point) {
    if (v == Var::T && a.has_specials())
        throw Error(ErrorKind::UnsupportedAtom, "special atoms have no exact point value here");
    std::vector<Atom> out;
    for (const auto& at : a.atoms()) {
        const Factor& f = at.factor(v);
        Coeff value = point.pow(static_cast<int>(f.power));
        if (f.power == 0) value = Coeff(1);
        if (!f.rate.is_zero() && !point.is_zero())
            throw Error(ErrorKind::InvalidArgument, "exponential value is not exact at this point");
        if (f.trig != Trig::None) {
            Coeff quarter_turns = (f.freq * point * Coeff(2)) / Coeff::pi_power(1);
            if (!quarter_turns.is_integer())
                throw Error(ErrorKind::InvalidArgument, "trigonometric value is not exact at this point");
            long k = quarter_turns.rational().get_num().get_si();
            long m = ((k % 4) + 4) % 4;
            static const int kSin[4] = {0, 1, 0, -1};
            static const int kCos[4] = {1, 0, -1, 0};
            value *= Coeff(f.trig == Trig::Sin ? kSin[m] : kCos[m]);
        }
        Atom r = at;
        r.coeff *= value;
        r.factor(v) = Factor{};
        out.push_back(r);
    }
    std::vector<SpecialTerm> specials = v == Var::X ? a.specials() : std::vector<SpecialTerm>{};
    return AtomSum(std::move(out), std::move(specials));
}

AtomEvaluator::AtomEvaluator(const AtomSum& a) : specials_(a.specials()) {
    for (const auto& at : a.atoms()) {
        terms_.push_back(Term{at.coeff.value(), at.t.power, at.x.power, at.t.rate.value(), at.x.rate.value(),
                              at.t.freq.value(), at.x.freq.value(), at.t.trig, at.x.trig});
    }
    for (const auto& s : specials_) {
        if (s.special.kind == SpecialKind::Delta)
            throw Error(ErrorKind::DeltaNotPointwise, "delta has no pointwise value");
        if (s.special.kind != SpecialKind::J0 && s.special.kind != SpecialKind::I0)
            throw Error(ErrorKind::SymbolicOnly,
                        std::string(to_string(s.special.kind)) + " is not evaluated pointwise");
    }
}

namespace {

long double factor_value(long double v, unsigned p, long double rate, Trig trig, long double freq) {
    long double out = 1.0L;
    for (unsigned k = 0; k < p; ++k) out *= v;
    if (rate != 0.0L) out *= std::exp(rate * v);
    if (trig == Trig::Sin) out *= std::sin(freq * v);
    if (trig == Trig::Cos) out *= std::cos(freq * v);
    return out;
}

}  // namespace

long double AtomEvaluator::operator()(long double t, long double x) const {
    long double acc = 0.0L;
    for (const auto& term : terms_) {
        acc += term.coeff * factor_value(t, term.pt, term.rt, term.tt, term.ft) *
               factor_value(x, term.px, term.rx, term.tx, term.fx);
    }
    for (const auto& s : specials_) {
        long double arg = s.special.param.value() * t;
        long double v = s.special.kind == SpecialKind::J0 ? bessel_j0(arg) : bessel_i0(arg);
        acc += s.coeff.value() * v;
    }
    return acc;
}

}  // namespace shehu
