#include "shehu/rational_function.hpp"

#include <algorithm>
#include <cmath>

namespace shehu {

CPoly to_cpoly(const QPoly& p) {
    std::vector<Coeff> c;
    for (const auto& q : p.coeffs()) c.emplace_back(q);
    return CPoly(std::move(c));
}

Complex eval_complex(const CPoly& p, Complex z) {
    Complex acc(0.0L, 0.0L);
    for (int i = p.degree(); i >= 0; --i) acc = acc * z + Complex(p.coeff(i).value(), 0.0L);
    return acc;
}

std::pair<bool, std::string> signed_term(const Coeff& c, const std::string& monomial) {
    bool neg = c.sign() < 0;
    Coeff a = neg ? -c : c;
    if (monomial.empty()) return {neg, a.str()};
    if (a == Coeff(1)) return {neg, monomial};
    std::string cs = a.str();
    bool wrapped = cs.front() == '(' && cs.back() == ')' && cs.find(")/(") == std::string::npos;
    if (a.needs_parens_in_product() && !wrapped) cs = "(" + cs + ")";
    return {neg, cs + "*" + monomial};
}

std::string join_terms(const std::vector<std::pair<bool, std::string>>& terms) {
    if (terms.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto& [neg, text] = terms[i];
        if (i == 0) {
            out = neg ? "-" + text : text;
        } else {
            out += (neg ? " - " : " + ") + text;
        }
    }
    return out;
}

std::string format_poly(const CPoly& p, const std::string& var) {
    std::vector<std::pair<bool, std::string>> terms;
    for (int i = p.degree(); i >= 0; --i) {
        const Coeff c = p.coeff(i);
        if (c.is_zero()) continue;
        std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
        terms.push_back(signed_term(c, mono));
    }
    return join_terms(terms);
}

RationalFunction::RationalFunction(CPoly num, CPoly den) {
    if (den.is_zero()) throw Error(ErrorKind::InvalidArgument, "rational function with zero denominator");
    if (num.is_zero()) {
        den_ = CPoly::constant(Coeff(1));
        return;
    }
    if (den.degree() > 0) {
        CPoly g = gcd(num, den);
        if (g.degree() > 0) {
            num = num.divmod(g).first;
            den = den.divmod(g).first;
        }
    }
    Coeff lead = den.leading();
    if (lead != Coeff(1)) {
        Coeff inv = Coeff(1) / lead;
        num = inv * num;
        den = inv * den;
    }
    num_ = std::move(num);
    den_ = std::move(den);
}

RationalFunction RationalFunction::pole(const Coeff& a, unsigned m) {
    return RationalFunction(CPoly::constant(Coeff(1)), CPoly::linear_root(a).pow(m));
}

RationalFunction RationalFunction::variable() {
    return RationalFunction(CPoly::monomial(Coeff(1), 1), CPoly::constant(Coeff(1)));
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a) {
    RationalFunction out = a;
    out.num_ = -out.num_;
    return out;
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero() || b.is_zero()) return RationalFunction();
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw Error(ErrorKind::InvalidArgument, "division by the zero rational function");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

RationalFunction RationalFunction::pow(int n) const {
    if (n < 0) return RationalFunction(Coeff(1)) / pow(-n);
    return RationalFunction(num_.pow(static_cast<unsigned>(n)), den_.pow(static_cast<unsigned>(n)));
}

RationalFunction RationalFunction::derivative() const {
    return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RationalFunction RationalFunction::scaled(const Coeff& k) const {
    return RationalFunction(num_.scaled(k), den_.scaled(k));
}

RationalFunction RationalFunction::shifted(const Coeff& a) const {
    return RationalFunction(num_.shifted(a), den_.shifted(a));
}

RationalFunction RationalFunction::reciprocal_argument() const {
    if (is_zero()) return *this;
    auto reversed = [](const CPoly& p) {
        std::vector<Coeff> c(p.coeffs().rbegin(), p.coeffs().rend());
        return CPoly(std::move(c));
    };
    int shift = den_.degree() - num_.degree();
    CPoly n = reversed(num_);
    CPoly d = reversed(den_);
    if (shift >= 0) {
        n = CPoly::monomial(Coeff(1), shift) * n;
    } else {
        d = CPoly::monomial(Coeff(1), -shift) * d;
    }
    return RationalFunction(std::move(n), std::move(d));
}

std::string RationalFunction::str(const std::string& var) const {
    std::string n = format_poly(num_, var);
    if (den_.degree() == 0) return n;
    if (n.find_first_of(" /") != std::string::npos) n = "(" + n + ")";
    std::string d = format_poly(den_, var);
    if (d.find_first_of(" */") != std::string::npos) d = "(" + d + ")";
    return n + "/" + d;
}

namespace {

Complex horner(const std::vector<Complex>& a, Complex z) {
    Complex acc = 0;
    for (std::size_t i = a.size(); i-- > 0;) acc = acc * z + a[i];
    return acc;
}

}  // namespace

std::vector<Complex> numeric_roots(const CPoly& p) {
    const int n = p.degree();
    if (n < 1) return {};
    std::vector<Complex> a(static_cast<std::size_t>(n) + 1);
    long double lead = p.leading().value();
    long double radius = 1;
    for (int i = 0; i <= n; ++i) {
        a[static_cast<std::size_t>(i)] = p.coeff(i).value() / lead;
        radius = std::max(radius, 1 + std::fabs(p.coeff(i).value() / lead));
    }
    std::vector<Complex> da(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) da[static_cast<std::size_t>(i - 1)] = a[static_cast<std::size_t>(i)] * static_cast<long double>(i);

    std::vector<Complex> z(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        z[static_cast<std::size_t>(k)] = std::polar(radius * 0.9L, 2 * kPi * k / n + 0.4L);
    for (int iter = 0; iter < 2000; ++iter) {
        long double worst = 0;
        for (std::size_t k = 0; k < z.size(); ++k) {
            Complex denom = 1;
            for (std::size_t j = 0; j < z.size(); ++j)
                if (j != k) denom *= z[k] - z[j];
            if (std::abs(denom) == 0) denom = 1e-30L;
            Complex w = horner(a, z[k]) / denom;
            z[k] -= w;
            worst = std::max(worst, std::abs(w) / (1 + std::abs(z[k])));
        }
        if (worst < 1e-19L) break;
    }
    for (auto& r : z) {
        for (int i = 0; i < 4; ++i) {
            Complex d = horner(da, r);
            if (std::abs(d) == 0) break;
            r -= horner(a, r) / d;
        }
    }
    return z;
}

}  // namespace shehu
