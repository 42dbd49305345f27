#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shehu/scalar.hpp"

namespace shehu {

enum class Var { T, X };
enum class Func { Exp, Sin, Cos, Sinh, Cosh };
enum class SpecialKind { Delta, J0, I0, Si, Ci, Ei };

std::string_view to_string(Var v);
std::string_view to_string(Func f);
std::string_view to_string(SpecialKind k);

/// Special atoms of the time variable. For Delta the parameter is the shift
/// a >= 0 of delta(t - a); for the rest it is the positive rate of f(rate*t).
struct Special {
    SpecialKind kind;
    Coeff param;
    friend bool operator==(const Special& a, const Special& b) {
        return a.kind == b.kind && a.param == b.param;
    }
};

class Expr;

struct Node {
    enum class Kind { Const, Var, Sum, Product, Pow, Func, Special };
    Kind kind = Kind::Const;
    Coeff value;                // Const; rate for Func
    Var var = Var::T;           // Var; argument variable for Func
    std::vector<Expr> children; // Sum, Product; Pow base at [0]
    unsigned exponent = 0;      // Pow
    Func func = Func::Exp;
    Special special{SpecialKind::Delta, Coeff()};
};

/// Immutable expression tree over t and x with exact coefficients.
/// Function arguments are stored in canonical linear form rate*var.
class Expr {
public:
    Expr();  // zero

    static Expr constant(const Coeff& c);
    static Expr variable(Var v);
    static Expr function(Func f, const Coeff& rate, Var v);
    static Expr special(SpecialKind kind, const Coeff& param);
    /// Smart constructors: flatten, fold constant subtrees, drop units.
    static Expr sum(std::vector<Expr> terms);
    static Expr product(std::vector<Expr> factors);
    static Expr power(const Expr& base, unsigned n);

    const Node& node() const { return *node_; }
    Node::Kind kind() const { return node_->kind; }
    bool is_const() const { return kind() == Node::Kind::Const; }
    const Coeff& const_value() const { return node_->value; }
    bool contains(Var v) const;
    bool contains_special() const;

    friend bool operator==(const Expr& a, const Expr& b);
    friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

    friend Expr operator+(const Expr& a, const Expr& b) { return sum({a, b}); }
    friend Expr operator*(const Expr& a, const Expr& b) { return product({a, b}); }
    friend Expr operator-(const Expr& a);
    friend Expr operator-(const Expr& a, const Expr& b) { return sum({a, -b}); }

private:
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

/// Named constants available to the parser (table placeholders such as a, b, n).
using ConstantBindings = std::map<std::string, Coeff, std::less<>>;

Expr parse(std::string_view text, const ConstantBindings& constants = {});
std::string format(const Expr& e);

/// Exact derivative. Special atoms raise UnsupportedAtom.
Expr differentiate(const Expr& e, Var v);

struct Bindings {
    std::optional<long double> t;
    std::optional<long double> x;
};

long double evaluate_ld(const Expr& e, const Bindings& at);
double evaluate(const Expr& e, const Bindings& at);

/// Pointwise comparison at 32 fixed points in t in (0,4] (and x in (0,1]).
bool equivalent(const Expr& a, const Expr& b);

}  // namespace shehu
