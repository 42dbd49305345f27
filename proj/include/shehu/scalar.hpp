#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shehu/errors.hpp"

namespace shehu {

using Integer = mpz_class;
using Rational = mpq_class;

inline constexpr long double kPi = 3.141592653589793238462643383279502884L;

/// Nearest long double to an exact rational, keeping the top 64 bits of
/// numerator and denominator (mpq_get_d would stop at 53).
long double to_long_double(const Rational& q);
long double to_long_double(const Integer& z);

/// Parses "p" or "p/q" (optionally signed); throws Syntax on anything else.
Rational parse_rational(const std::string& text);

/// Dense univariate polynomial, ascending powers, over an exact field F.
/// The zero polynomial has no coefficients and degree -1.
template <class F>
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<F> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly constant(const F& c) { return Poly(std::vector<F>{c}); }
    static Poly monomial(const F& c, int degree) {
        std::vector<F> v(static_cast<std::size_t>(degree) + 1, F(0));
        v.back() = c;
        return Poly(std::move(v));
    }
    /// x - a
    static Poly linear_root(const F& a) { return Poly(std::vector<F>{F(0) - a, F(1)}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    F coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return F(0);
        return c_[static_cast<std::size_t>(i)];
    }
    const F& leading() const { return c_.back(); }
    const std::vector<F>& coeffs() const { return c_; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<F> out(std::max(a.c_.size(), b.c_.size()), F(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] = out[i] + a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] = out[i] + b.c_[i];
        return Poly(std::move(out));
    }
    friend Poly operator-(const Poly& a) {
        std::vector<F> out(a.c_);
        for (auto& c : out) c = F(0) - c;
        return Poly(std::move(out));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<F> out(a.c_.size() + b.c_.size() - 1, F(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == F(0)) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] = out[i + j] + a.c_[i] * b.c_[j];
        }
        return Poly(std::move(out));
    }
    friend Poly operator*(const F& k, const Poly& p) {
        if (k == F(0)) return Poly();
        std::vector<F> out(p.c_);
        for (auto& c : out) c = k * c;
        return Poly(std::move(out));
    }
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    /// Euclidean division; divisor must be nonzero.
    std::pair<Poly, Poly> divmod(const Poly& d) const {
        if (d.is_zero()) throw Error(ErrorKind::InvalidArgument, "polynomial division by zero");
        std::vector<F> rem(c_);
        int dd = d.degree();
        int nd = degree();
        if (nd < dd) return {Poly(), *this};
        std::vector<F> quo(static_cast<std::size_t>(nd - dd + 1), F(0));
        F inv_lead = F(1) / d.leading();
        for (int k = nd - dd; k >= 0; --k) {
            F q = rem[static_cast<std::size_t>(k + dd)] * inv_lead;
            quo[static_cast<std::size_t>(k)] = q;
            if (q == F(0)) continue;
            for (int j = 0; j <= dd; ++j)
                rem[static_cast<std::size_t>(k + j)] =
                    rem[static_cast<std::size_t>(k + j)] - q * d.c_[static_cast<std::size_t>(j)];
        }
        rem.resize(static_cast<std::size_t>(dd));
        return {Poly(std::move(quo)), Poly(std::move(rem))};
    }

    Poly monic() const {
        if (is_zero()) return *this;
        return (F(1) / leading()) * *this;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<F> out(c_.size() - 1, F(0));
        for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = F(static_cast<long>(i)) * c_[i];
        return Poly(std::move(out));
    }

    Poly pow(unsigned n) const {
        Poly out = constant(F(1));
        Poly base = *this;
        while (n) {
            if (n & 1u) out *= base;
            n >>= 1u;
            if (n) base *= base;
        }
        return out;
    }

    /// p(x + a)
    Poly shifted(const F& a) const {
        Poly out;
        Poly step(std::vector<F>{a, F(1)});
        for (int i = degree(); i >= 0; --i) out = out * step + constant(c_[static_cast<std::size_t>(i)]);
        return out;
    }

    /// p(k x)
    Poly scaled(const F& k) const {
        std::vector<F> out(c_);
        F f(1);
        for (auto& c : out) {
            c = c * f;
            f = f * k;
        }
        return Poly(std::move(out));
    }

    /// p(q(x))
    Poly compose(const Poly& q) const {
        Poly out;
        for (int i = degree(); i >= 0; --i) out = out * q + constant(c_[static_cast<std::size_t>(i)]);
        return out;
    }

    F eval(const F& x) const {
        F acc(0);
        for (int i = degree(); i >= 0; --i) acc = acc * x + c_[static_cast<std::size_t>(i)];
        return acc;
    }

    /// Horner evaluation in another ring T, converting coefficients with conv.
    template <class T, class Conv>
    T eval_as(const T& x, Conv conv) const {
        T acc = T(0);
        for (int i = degree(); i >= 0; --i) acc = acc * x + conv(c_[static_cast<std::size_t>(i)]);
        return acc;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == F(0)) c_.pop_back();
    }
    std::vector<F> c_;
};

/// Monic gcd; gcd(0, 0) = 0.
template <class F>
Poly<F> gcd(Poly<F> a, Poly<F> b) {
    while (!b.is_zero()) {
        auto r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

using QPoly = Poly<Rational>;

/// Element of Q(pi): a ratio of rational polynomials in pi with monic
/// denominator and coprime parts. Pure rationals take a short path.
class Coeff {
public:
    Coeff() : den_(QPoly::constant(Rational(1))) {}
    Coeff(int v) : Coeff(Rational(v)) {}
    Coeff(long v) : Coeff(Rational(v)) {}
    Coeff(const Rational& q);

    static Coeff pi_power(int k);
    static Coeff from_fraction(QPoly num, QPoly den);

    bool is_zero() const { return num_.is_zero(); }
    bool is_rational() const { return num_.is_constant() && den_.degree() == 0; }
    /// Value as a rational; caller must check is_rational().
    Rational rational() const;
    bool is_integer() const;
    /// c * pi^k with c rational (k may be negative).
    bool is_monomial() const;
    /// (c, k) for a monomial; throws otherwise.
    std::pair<Rational, int> as_monomial() const;
    /// Exact square root when the value is c*pi^(2j) with c a rational square.
    std::optional<Coeff> exact_sqrt() const;

    long double value() const;
    /// Sign of the real value (pi is transcendental, so nonzero means a definite sign).
    int sign() const;

    const QPoly& num() const { return num_; }
    const QPoly& den() const { return den_; }

    /// Text that the expression parser reads back to the same value.
    std::string str() const;
    /// True when str() needs parentheses as a factor in a product.
    bool needs_parens_in_product() const;

    friend bool operator==(const Coeff& a, const Coeff& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const Coeff& a, const Coeff& b) { return !(a == b); }

    friend Coeff operator+(const Coeff& a, const Coeff& b);
    friend Coeff operator-(const Coeff& a, const Coeff& b);
    friend Coeff operator*(const Coeff& a, const Coeff& b);
    friend Coeff operator/(const Coeff& a, const Coeff& b);
    friend Coeff operator-(const Coeff& a);
    Coeff& operator+=(const Coeff& o) { return *this = *this + o; }
    Coeff& operator-=(const Coeff& o) { return *this = *this - o; }
    Coeff& operator*=(const Coeff& o) { return *this = *this * o; }
    Coeff& operator/=(const Coeff& o) { return *this = *this / o; }

    Coeff pow(int n) const;

private:
    void normalize();
    QPoly num_;
    QPoly den_;
};

/// Total structural order (not numeric); used to sort canonical forms.
int compare(const Coeff& a, const Coeff& b);
struct CoeffLess {
    bool operator()(const Coeff& a, const Coeff& b) const { return compare(a, b) < 0; }
};

Rational factorial(unsigned n);

}  // namespace shehu
