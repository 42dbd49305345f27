#include "shehu/expr.hpp"

#include <cmath>

#include "lexer.hpp"
#include "shehu/atoms.hpp"
#include "shehu/special_functions.hpp"

namespace shehu {

std::string_view to_string(Var v) { return v == Var::T ? "t" : "x"; }

std::string_view to_string(Func f) {
    switch (f) {
        case Func::Exp: return "exp";
        case Func::Sin: return "sin";
        case Func::Cos: return "cos";
        case Func::Sinh: return "sinh";
        case Func::Cosh: return "cosh";
    }
    return "?";
}

std::string_view to_string(SpecialKind k) {
    switch (k) {
        case SpecialKind::Delta: return "delta";
        case SpecialKind::J0: return "J0";
        case SpecialKind::I0: return "I0";
        case SpecialKind::Si: return "Si";
        case SpecialKind::Ci: return "Ci";
        case SpecialKind::Ei: return "Ei";
    }
    return "?";
}

// ---------------------------------------------------------------- construction

Expr::Expr() : node_(std::make_shared<const Node>()) {}

Expr Expr::constant(const Coeff& c) {
    Node n;
    n.kind = Node::Kind::Const;
    n.value = c;
    return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::variable(Var v) {
    Node n;
    n.kind = Node::Kind::Var;
    n.var = v;
    return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::function(Func f, const Coeff& rate, Var v) {
    if (rate.is_zero()) {
        bool one = f == Func::Exp || f == Func::Cos || f == Func::Cosh;
        return constant(Coeff(one ? 1 : 0));
    }
    Node n;
    n.kind = Node::Kind::Func;
    n.func = f;
    n.value = rate;
    n.var = v;
    return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::special(SpecialKind kind, const Coeff& param) {
    if (kind == SpecialKind::Delta ? param.sign() < 0 : param.sign() <= 0) {
        throw Error(ErrorKind::NonAffineArgument,
                    std::string(to_string(kind)) + " requires a " +
                        (kind == SpecialKind::Delta ? "nonnegative shift" : "positive rate"));
    }
    Node n;
    n.kind = Node::Kind::Special;
    n.special = Special{kind, param};
    return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::sum(std::vector<Expr> terms) {
    std::vector<Expr> flat;
    bool all_const = true;
    for (auto& t : terms) {
        if (t.kind() == Node::Kind::Sum) {
            for (const auto& c : t.node().children) flat.push_back(c);
        } else {
            flat.push_back(t);
        }
    }
    for (const auto& t : flat)
        if (!t.is_const()) all_const = false;
    if (all_const) {
        Coeff total;
        for (const auto& t : flat) total += t.const_value();
        return constant(total);
    }
    if (flat.size() == 1) return flat.front();
    Node n;
    n.kind = Node::Kind::Sum;
    n.children = std::move(flat);
    return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::product(std::vector<Expr> factors) {
    Coeff c(1);
    std::vector<Expr> rest;
    auto take = [&](const Expr& f) {
        if (f.is_const()) {
            c *= f.const_value();
        } else {
            rest.push_back(f);
        }
    };
    for (const auto& f : factors) {
        if (f.kind() == Node::Kind::Product) {
            for (const auto& g : f.node().children) take(g);
        } else {
            take(f);
        }
    }
    if (c.is_zero() || rest.empty()) return constant(c);
    if (c != Coeff(1)) rest.insert(rest.begin(), constant(c));
    if (rest.size() == 1) return rest.front();
    Node n;
    n.kind = Node::Kind::Product;
    n.children = std::move(rest);
    return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::power(const Expr& base, unsigned n) {
    if (n == 0) return constant(Coeff(1));
    if (n == 1) return base;
    if (base.is_const()) return constant(base.const_value().pow(static_cast<int>(n)));
    Node node;
    node.kind = Node::Kind::Pow;
    node.children = {base};
    node.exponent = n;
    return Expr(std::make_shared<const Node>(std::move(node)));
}

Expr operator-(const Expr& a) {
    if (a.is_const()) return Expr::constant(-a.const_value());
    if (a.kind() == Node::Kind::Product && a.node().children.front().is_const()) {
        std::vector<Expr> f = a.node().children;
        f.front() = Expr::constant(-f.front().const_value());
        return Expr::product(std::move(f));
    }
    return Expr::product({Expr::constant(Coeff(-1)), a});
}

bool operator==(const Expr& a, const Expr& b) {
    if (a.node_ == b.node_) return true;
    const Node& x = a.node();
    const Node& y = b.node();
    if (x.kind != y.kind) return false;
    switch (x.kind) {
        case Node::Kind::Const: return x.value == y.value;
        case Node::Kind::Var: return x.var == y.var;
        case Node::Kind::Func: return x.func == y.func && x.var == y.var && x.value == y.value;
        case Node::Kind::Special: return x.special == y.special;
        case Node::Kind::Pow:
            return x.exponent == y.exponent && x.children == y.children;
        case Node::Kind::Sum:
        case Node::Kind::Product: return x.children == y.children;
    }
    return false;
}

bool Expr::contains(Var v) const {
    const Node& n = node();
    switch (n.kind) {
        case Node::Kind::Const: return false;
        case Node::Kind::Var:
        case Node::Kind::Func: return n.var == v;
        case Node::Kind::Special: return v == Var::T;
        default:
            for (const auto& c : n.children)
                if (c.contains(v)) return true;
            return false;
    }
}

bool Expr::contains_special() const {
    const Node& n = node();
    if (n.kind == Node::Kind::Special) return true;
    for (const auto& c : n.children)
        if (c.contains_special()) return true;
    return false;
}

// ---------------------------------------------------------------- parsing

namespace {

using detail::Tok;
using detail::TokenStream;

/// c0 + ct*t + cx*x
struct Linear {
    Coeff c0, ct, cx;
    bool has_var() const { return !ct.is_zero() || !cx.is_zero(); }
};

std::optional<Linear> linear_form(const Expr& e) {
    const Node& n = e.node();
    switch (n.kind) {
        case Node::Kind::Const: return Linear{n.value, Coeff(), Coeff()};
        case Node::Kind::Var:
            return n.var == Var::T ? Linear{Coeff(), Coeff(1), Coeff()} : Linear{Coeff(), Coeff(), Coeff(1)};
        case Node::Kind::Sum: {
            Linear acc;
            for (const auto& c : n.children) {
                auto l = linear_form(c);
                if (!l) return std::nullopt;
                acc.c0 += l->c0;
                acc.ct += l->ct;
                acc.cx += l->cx;
            }
            return acc;
        }
        case Node::Kind::Product: {
            Linear acc{Coeff(1), Coeff(), Coeff()};
            for (const auto& c : n.children) {
                auto l = linear_form(c);
                if (!l) return std::nullopt;
                if (acc.has_var() && l->has_var()) return std::nullopt;
                if (l->has_var()) {
                    acc = Linear{acc.c0 * l->c0, acc.c0 * l->ct, acc.c0 * l->cx};
                } else {
                    acc = Linear{acc.c0 * l->c0, acc.ct * l->c0, acc.cx * l->c0};
                }
            }
            return acc;
        }
        default: return std::nullopt;
    }
}

const std::map<std::string, Func, std::less<>> kFuncs = {
    {"exp", Func::Exp}, {"sin", Func::Sin}, {"cos", Func::Cos}, {"sinh", Func::Sinh}, {"cosh", Func::Cosh}};
const std::map<std::string, SpecialKind, std::less<>> kSpecials = {
    {"delta", SpecialKind::Delta}, {"J0", SpecialKind::J0}, {"I0", SpecialKind::I0},
    {"Si", SpecialKind::Si},       {"Ci", SpecialKind::Ci}, {"Ei", SpecialKind::Ei}};

class Parser {
public:
    Parser(std::string_view text, const ConstantBindings& constants) : ts_(text), constants_(constants) {}

    Expr run() {
        Expr e = expr();
        if (ts_.peek().kind != Tok::End)
            throw Error(ErrorKind::Syntax, "unexpected '" + ts_.peek().text + "'", ts_.peek().offset);
        return e;
    }

private:
    Expr expr() {
        std::vector<Expr> terms{term()};
        for (;;) {
            if (ts_.accept(Tok::Plus)) {
                terms.push_back(term());
            } else if (ts_.accept(Tok::Minus)) {
                terms.push_back(-term());
            } else {
                break;
            }
        }
        return Expr::sum(std::move(terms));
    }

    Expr term() {
        Expr acc = unary();
        for (;;) {
            if (ts_.accept(Tok::Star)) {
                acc = acc * unary();
            } else if (ts_.peek().kind == Tok::Slash) {
                std::size_t at = ts_.next().offset;
                Expr d = unary();
                if (!d.is_const())
                    throw Error(ErrorKind::NonTransformable, "division by a non-constant expression", at);
                if (d.const_value().is_zero()) throw Error(ErrorKind::InvalidArgument, "division by zero", at);
                acc = acc * Expr::constant(Coeff(1) / d.const_value());
            } else {
                break;
            }
        }
        return acc;
    }

    Expr unary() {
        if (ts_.accept(Tok::Minus)) return -unary();
        if (ts_.accept(Tok::Plus)) return unary();
        return power();
    }

    Expr power() {
        Expr b = postfix();
        if (ts_.peek().kind != Tok::Caret) return b;
        std::size_t at = ts_.next().offset;
        Expr ex = exponent();
        if (!ex.is_const() || !ex.const_value().is_integer())
            throw Error(ErrorKind::Syntax, "exponent must be an integer constant", at);
        Integer k = ex.const_value().rational().get_num();
        if (b.is_const()) {
            if (b.const_value().is_zero() && sgn(k) < 0)
                throw Error(ErrorKind::InvalidArgument, "zero to a negative power", at);
            return Expr::constant(b.const_value().pow(static_cast<int>(k.get_si())));
        }
        if (sgn(k) < 0) throw Error(ErrorKind::NonTransformable, "negative power of a non-constant", at);
        if (k > 64) throw Error(ErrorKind::InvalidArgument, "exponent too large", at);
        return Expr::power(b, static_cast<unsigned>(k.get_ui()));
    }

    Expr exponent() {
        if (ts_.accept(Tok::Minus)) return -exponent();
        return power();
    }

    Expr postfix() {
        Expr b = base();
        while (ts_.peek().kind == Tok::Bang) {
            std::size_t at = ts_.next().offset;
            b = Expr::constant(Coeff(factorial_of(b, at)));
        }
        return b;
    }

    static Rational factorial_of(const Expr& e, std::size_t at) {
        if (!e.is_const() || !e.const_value().is_integer() || e.const_value().sign() < 0 ||
            e.const_value().rational() > 170)
            throw Error(ErrorKind::InvalidArgument, "factorial needs a small nonnegative integer", at);
        return factorial(static_cast<unsigned>(e.const_value().rational().get_num().get_ui()));
    }

    Expr base() {
        const auto& tok = ts_.peek();
        switch (tok.kind) {
            case Tok::Number: {
                Rational v = ts_.next().number;
                return Expr::constant(Coeff(v));
            }
            case Tok::LParen: {
                ts_.next();
                Expr e = expr();
                ts_.expect(Tok::RParen, "')'");
                return e;
            }
            case Tok::Ident: return identifier();
            default:
                throw Error(ErrorKind::Syntax, "expected an operand" + TokenStream::describe(tok), tok.offset);
        }
    }

    Expr identifier() {
        detail::Token tok = ts_.next();
        const std::string& name = tok.text;
        if (ts_.peek().kind == Tok::LParen) {
            if (auto f = kFuncs.find(name); f != kFuncs.end()) return function(f->second);
            if (auto s = kSpecials.find(name); s != kSpecials.end()) return special(s->second);
            if (name == "gamma") {
                Expr arg = parenthesized();
                if (!arg.is_const() || !arg.const_value().is_integer() || arg.const_value().sign() <= 0)
                    throw Error(ErrorKind::InvalidArgument, "gamma needs a positive integer", tok.offset);
                return Expr::constant(Coeff(factorial_of(Expr::constant(arg.const_value() - Coeff(1)), tok.offset)));
            }
            throw Error(ErrorKind::UnknownIdentifier, "unknown function '" + name + "'", tok.offset);
        }
        if (name == "pi") return Expr::constant(Coeff::pi_power(1));
        if (name == "t") return Expr::variable(Var::T);
        if (name == "x") return Expr::variable(Var::X);
        if (auto c = constants_.find(name); c != constants_.end()) return Expr::constant(c->second);
        throw Error(ErrorKind::UnknownIdentifier, "unknown identifier '" + name + "'", tok.offset);
    }

    Expr parenthesized() {
        ts_.expect(Tok::LParen, "'('");
        Expr e = expr();
        ts_.expect(Tok::RParen, "')'");
        return e;
    }

    Expr function(Func f) {
        std::size_t arg_at = ts_.peek().offset + 1;
        Expr arg = parenthesized();
        auto lin = linear_form(arg);
        if (!lin) throw Error(ErrorKind::NonAffineArgument, "argument of " + std::string(to_string(f)) + " must be linear", arg_at);
        if (!lin->has_var()) {
            if (lin->c0.is_zero()) return Expr::function(f, Coeff(), Var::T);
            throw Error(ErrorKind::NonAffineArgument,
                        std::string(to_string(f)) + " of a nonzero constant has no exact value", arg_at);
        }
        if (!lin->c0.is_zero())
            throw Error(ErrorKind::NonAffineArgument, "argument must be a multiple of t or x", arg_at);
        if (!lin->ct.is_zero() && !lin->cx.is_zero())
            throw Error(ErrorKind::NonAffineArgument, "argument mixes t and x", arg_at);
        return lin->ct.is_zero() ? Expr::function(f, lin->cx, Var::X) : Expr::function(f, lin->ct, Var::T);
    }

    Expr special(SpecialKind k) {
        std::size_t arg_at = ts_.peek().offset + 1;
        Expr arg = parenthesized();
        auto lin = linear_form(arg);
        if (!lin || !lin->cx.is_zero())
            throw Error(ErrorKind::NonAffineArgument, std::string(to_string(k)) + " takes an argument in t", arg_at);
        if (k == SpecialKind::Delta) {
            if (lin->ct != Coeff(1) || lin->c0.sign() > 0)
                throw Error(ErrorKind::NonAffineArgument, "only delta(t - a) with a >= 0 is accepted", arg_at);
            return Expr::special(k, -lin->c0);
        }
        if (!lin->c0.is_zero() || lin->ct.sign() <= 0)
            throw Error(ErrorKind::NonAffineArgument,
                        std::string(to_string(k)) + " needs an argument a*t with a > 0", arg_at);
        return Expr::special(k, lin->ct);
    }

    TokenStream ts_;
    const ConstantBindings& constants_;
};

}  // namespace

Expr parse(std::string_view text, const ConstantBindings& constants) {
    return Parser(text, constants).run();
}

// ---------------------------------------------------------------- printing

namespace {

bool fully_parenthesized(const std::string& s) {
    if (s.size() < 2 || s.front() != '(' || s.back() != ')') return false;
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        if (s[i] == ')') --depth;
        if (depth == 0 && i + 1 < s.size()) return false;
    }
    return true;
}

std::string coeff_factor(const Coeff& c) {
    std::string s = c.str();
    if (c.needs_parens_in_product() && !fully_parenthesized(s)) return "(" + s + ")";
    return s;
}

bool is_negative(const Expr& e) {
    if (e.is_const()) return e.const_value().sign() < 0;
    if (e.kind() == Node::Kind::Product) {
        const Expr& f = e.node().children.front();
        return f.is_const() && f.const_value().sign() < 0;
    }
    return false;
}

std::string scaled_var(const Coeff& rate, Var v) {
    return format(Expr::product({Expr::constant(rate), Expr::variable(v)}));
}

std::string format_factor(const Expr& e) {
    auto k = e.kind();
    std::string s = format(e);
    if (k == Node::Kind::Sum || k == Node::Kind::Product) return "(" + s + ")";
    return s;
}

}  // namespace

std::string format(const Expr& e) {
    const Node& n = e.node();
    switch (n.kind) {
        case Node::Kind::Const: return n.value.str();
        case Node::Kind::Var: return std::string(to_string(n.var));
        case Node::Kind::Func:
            return std::string(to_string(n.func)) + "(" + scaled_var(n.value, n.var) + ")";
        case Node::Kind::Special: {
            const Special& s = n.special;
            if (s.kind == SpecialKind::Delta) {
                if (s.param.is_zero()) return "delta(t)";
                return "delta(t - " + s.param.str() + ")";
            }
            return std::string(to_string(s.kind)) + "(" + scaled_var(s.param, Var::T) + ")";
        }
        case Node::Kind::Pow: {
            const Expr& b = n.children.front();
            std::string bs = format(b);
            if (b.kind() == Node::Kind::Sum || b.kind() == Node::Kind::Product || b.kind() == Node::Kind::Pow)
                bs = "(" + bs + ")";
            return bs + "^" + std::to_string(n.exponent);
        }
        case Node::Kind::Product: {
            std::string out;
            std::size_t i = 0;
            if (n.children.front().is_const()) {
                const Coeff& c = n.children.front().const_value();
                if (c == Coeff(-1)) {
                    out = "-";
                } else if (c.sign() < 0) {
                    out = "-" + coeff_factor(-c) + "*";
                } else {
                    out = coeff_factor(c) + "*";
                }
                i = 1;
            }
            for (std::size_t k = i; k < n.children.size(); ++k) {
                if (k > i) out += "*";
                out += format_factor(n.children[k]);
            }
            return out;
        }
        case Node::Kind::Sum: {
            std::string out = format(n.children.front());
            for (std::size_t k = 1; k < n.children.size(); ++k) {
                const Expr& c = n.children[k];
                if (is_negative(c)) {
                    Expr neg = -c;
                    std::string s = format(neg);
                    if (neg.kind() == Node::Kind::Sum) s = "(" + s + ")";
                    out += " - " + s;
                } else {
                    out += " + " + format(c);
                }
            }
            return out;
        }
    }
    return "?";
}

// ---------------------------------------------------------------- calculus and numerics

Expr differentiate(const Expr& e, Var v) {
    if (e.contains_special())
        throw Error(ErrorKind::UnsupportedAtom, "differentiation of special atoms is not supported");
    return embed(differentiate(canonicalize(e), v));
}

long double evaluate_ld(const Expr& e, const Bindings& at) {
    const Node& n = e.node();
    auto var_value = [&](Var v) {
        const auto& b = v == Var::T ? at.t : at.x;
        if (!b) throw Error(ErrorKind::UnboundVariable, "variable " + std::string(to_string(v)) + " is not bound");
        return *b;
    };
    switch (n.kind) {
        case Node::Kind::Const: return n.value.value();
        case Node::Kind::Var: return var_value(n.var);
        case Node::Kind::Sum: {
            long double acc = 0;
            for (const auto& c : n.children) acc += evaluate_ld(c, at);
            return acc;
        }
        case Node::Kind::Product: {
            long double acc = 1;
            for (const auto& c : n.children) acc *= evaluate_ld(c, at);
            return acc;
        }
        case Node::Kind::Pow: {
            long double b = evaluate_ld(n.children.front(), at);
            long double acc = 1;
            for (unsigned k = 0; k < n.exponent; ++k) acc *= b;
            return acc;
        }
        case Node::Kind::Func: {
            long double a = n.value.value() * var_value(n.var);
            switch (n.func) {
                case Func::Exp: return std::exp(a);
                case Func::Sin: return std::sin(a);
                case Func::Cos: return std::cos(a);
                case Func::Sinh: return std::sinh(a);
                case Func::Cosh: return std::cosh(a);
            }
            return 0;
        }
        case Node::Kind::Special: {
            const Special& s = n.special;
            long double t = var_value(Var::T);
            switch (s.kind) {
                case SpecialKind::Delta:
                    throw Error(ErrorKind::DeltaNotPointwise, "delta has no pointwise value");
                case SpecialKind::J0: return bessel_j0(s.param.value() * t);
                case SpecialKind::I0: return bessel_i0(s.param.value() * t);
                default:
                    throw Error(ErrorKind::SymbolicOnly,
                                std::string(to_string(s.kind)) + " is not evaluated pointwise");
            }
        }
    }
    return 0;
}

double evaluate(const Expr& e, const Bindings& at) { return static_cast<double>(evaluate_ld(e, at)); }

bool equivalent(const Expr& a, const Expr& b) {
    bool uses_x = a.contains(Var::X) || b.contains(Var::X);
    for (int i = 0; i < 32; ++i) {
        Bindings at;
        at.t = 4.0L * (static_cast<long double>(i) + 0.6180339887L) / 32.0L;
        if (uses_x) {
            long double f = std::fmod(0.7548776662L * static_cast<long double>(i) + 0.31L, 1.0L);
            at.x = f > 0 ? f : 0.5L;
        }
        long double va = evaluate_ld(a, at);
        long double vb = evaluate_ld(b, at);
        if (!(std::fabs(va - vb) <= 1e-9L * (1.0L + std::fabs(va)))) return false;
    }
    return true;
}

}  // namespace shehu
