#pragma once

#include <string>
#include <vector>

#include "shehu/expr.hpp"

namespace shehu {

enum class Trig { None, Sin, Cos };

/// var^power * exp(rate*var) * trig(freq*var); freq > 0 unless trig is None.
struct Factor {
    unsigned power = 0;
    Coeff rate;
    Trig trig = Trig::None;
    Coeff freq;

    bool is_one() const { return power == 0 && rate.is_zero() && trig == Trig::None; }
    friend bool operator==(const Factor& a, const Factor& b) {
        return a.power == b.power && a.rate == b.rate && a.trig == b.trig && a.freq == b.freq;
    }
};

/// coeff * [t-factor] * [x-factor]
struct Atom {
    Coeff coeff;
    Factor t;
    Factor x;

    const Factor& factor(Var v) const { return v == Var::T ? t : x; }
    Factor& factor(Var v) { return v == Var::T ? t : x; }
    friend bool operator==(const Atom& a, const Atom& b) {
        return a.coeff == b.coeff && a.t == b.t && a.x == b.x;
    }
};

struct SpecialTerm {
    Coeff coeff;
    Special special;
    friend bool operator==(const SpecialTerm& a, const SpecialTerm& b) {
        return a.coeff == b.coeff && a.special == b.special;
    }
};

/// Canonical sum of atoms: like terms merged, no zero coefficients, sorted.
/// The empty sum is the zero function.
class AtomSum {
public:
    AtomSum() = default;
    AtomSum(std::vector<Atom> atoms, std::vector<SpecialTerm> specials = {});

    static AtomSum constant(const Coeff& c);
    static AtomSum single(const Atom& a) { return AtomSum({a}); }

    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::vector<SpecialTerm>& specials() const { return specials_; }
    bool is_zero() const { return atoms_.empty() && specials_.empty(); }
    bool has_specials() const { return !specials_.empty(); }
    bool contains(Var v) const;

    friend bool operator==(const AtomSum& a, const AtomSum& b) {
        return a.atoms_ == b.atoms_ && a.specials_ == b.specials_;
    }
    friend bool operator!=(const AtomSum& a, const AtomSum& b) { return !(a == b); }

    friend AtomSum operator+(const AtomSum& a, const AtomSum& b);
    friend AtomSum operator-(const AtomSum& a, const AtomSum& b);
    friend AtomSum operator-(const AtomSum& a);
    /// Raises NonTransformable for a special atom times anything non-constant.
    friend AtomSum operator*(const AtomSum& a, const AtomSum& b);
    friend AtomSum operator*(const Coeff& k, const AtomSum& a);

private:
    std::vector<Atom> atoms_;
    std::vector<SpecialTerm> specials_;
};

AtomSum canonicalize(const Expr& e);
/// Expression in display order (zero-rate atoms first, then by rate, power, trig).
Expr embed(const AtomSum& a);
std::string format(const AtomSum& a);

AtomSum differentiate(const AtomSum& a, Var v);
/// Exact restriction to v = 0. Special atoms raise UnsupportedAtom.
AtomSum at_zero(const AtomSum& a, Var v);
/// Exact restriction to v = point. Trig arguments must land on multiples of
/// pi/2 and exponentials must have zero argument; otherwise InvalidArgument.
AtomSum at_point(const AtomSum& a, Var v, const Coeff& point);

/// Compiled long double evaluator (specials per evaluate()).
class AtomEvaluator {
public:
    explicit AtomEvaluator(const AtomSum& a);
    long double operator()(long double t, long double x = 0.0L) const;

private:
    struct Term {
        long double coeff;
        unsigned pt, px;
        long double rt, rx, ft, fx;
        Trig tt, tx;
    };
    std::vector<Term> terms_;
    std::vector<SpecialTerm> specials_;
};

}  // namespace shehu
