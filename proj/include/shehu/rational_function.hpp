#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "shehu/scalar.hpp"

namespace shehu {

using CPoly = Poly<Coeff>;
using Complex = std::complex<long double>;

CPoly to_cpoly(const QPoly& p);
Complex eval_complex(const CPoly& p, Complex z);
/// Splits c*monomial into (is_negative, text of |c|*monomial); an empty
/// monomial means the bare constant.
std::pair<bool, std::string> signed_term(const Coeff& c, const std::string& monomial);
/// Joins signed terms as "a + b - c"; empty input gives "0".
std::string join_terms(const std::vector<std::pair<bool, std::string>>& terms);
/// All complex roots of a square-free polynomial (Durand-Kerner, then Newton polish).
std::vector<Complex> numeric_roots(const CPoly& p);
/// "r^2 + 2*r + 5" style text in the given variable name.
std::string format_poly(const CPoly& p, const std::string& var);

/// N(r)/D(r) over Q(pi) with D monic and gcd(N, D) = 1.
class RationalFunction {
public:
    RationalFunction() : den_(CPoly::constant(Coeff(1))) {}
    RationalFunction(const Coeff& c) : RationalFunction(CPoly::constant(c), CPoly::constant(Coeff(1))) {}
    RationalFunction(CPoly num, CPoly den);

    /// 1/(r - a)^m
    static RationalFunction pole(const Coeff& a, unsigned m = 1);
    static RationalFunction variable();  // r

    const CPoly& num() const { return num_; }
    const CPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_proper() const { return num_.degree() < den_.degree(); }
    bool is_polynomial() const { return den_.degree() == 0; }

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }

    RationalFunction pow(int n) const;
    RationalFunction derivative() const;
    /// f(k r)
    RationalFunction scaled(const Coeff& k) const;
    /// f(r + a)
    RationalFunction shifted(const Coeff& a) const;
    /// f(1/r)
    RationalFunction reciprocal_argument() const;

    Complex eval(Complex r) const { return eval_complex(num_, r) / eval_complex(den_, r); }
    std::string str(const std::string& var = "r") const;

private:
    CPoly num_;
    CPoly den_;
};

}  // namespace shehu
