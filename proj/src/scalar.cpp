#include "shehu/scalar.hpp"

#include <cctype>
#include <cmath>

namespace shehu {

long double to_long_double(const Integer& z) {
    if (sgn(z) == 0) return 0.0L;
    Integer a = abs(z);
    std::size_t bits = mpz_sizeinbase(a.get_mpz_t(), 2);
    long double out;
    if (bits <= 64) {
        // unsigned long is 64 bits on the supported targets
        out = static_cast<long double>(mpz_get_ui(a.get_mpz_t()));
    } else {
        auto shift = static_cast<mp_bitcnt_t>(bits - 64);
        Integer top;
        mpz_tdiv_q_2exp(top.get_mpz_t(), a.get_mpz_t(), shift);
        out = std::ldexp(static_cast<long double>(mpz_get_ui(top.get_mpz_t())), static_cast<int>(shift));
    }
    return sgn(z) < 0 ? -out : out;
}

long double to_long_double(const Rational& q) {
    return to_long_double(Integer(q.get_num())) / to_long_double(Integer(q.get_den()));
}

Rational parse_rational(const std::string& text) {
    std::size_t i = 0;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
    bool digits = false;
    bool slash = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits = true;
        } else if (c == '/' && !slash && digits) {
            slash = true;
            digits = false;
        } else {
            throw Error(ErrorKind::Syntax, "not a rational number: '" + text + "'", i);
        }
    }
    if (!digits) throw Error(ErrorKind::Syntax, "not a rational number: '" + text + "'");
    std::string body = text[0] == '+' ? text.substr(1) : text;
    Rational q(body, 10);
    if (sgn(q.get_den()) == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator in '" + text + "'");
    q.canonicalize();
    return q;
}

Rational factorial(unsigned n) {
    Integer f = 1;
    for (unsigned k = 2; k <= n; ++k) f *= k;
    return Rational(f);
}

Coeff::Coeff(const Rational& q) : den_(QPoly::constant(Rational(1))) {
    if (sgn(q) != 0) num_ = QPoly::constant(q);
}

Coeff Coeff::pi_power(int k) {
    Coeff c;
    if (k >= 0) {
        c.num_ = QPoly::monomial(Rational(1), k);
    } else {
        c.num_ = QPoly::constant(Rational(1));
        c.den_ = QPoly::monomial(Rational(1), -k);
    }
    return c;
}

Coeff Coeff::from_fraction(QPoly num, QPoly den) {
    if (den.is_zero()) throw Error(ErrorKind::InvalidArgument, "division by zero");
    Coeff c;
    c.num_ = std::move(num);
    c.den_ = std::move(den);
    c.normalize();
    return c;
}

void Coeff::normalize() {
    if (num_.is_zero()) {
        den_ = QPoly::constant(Rational(1));
        return;
    }
    if (den_.degree() > 0) {
        QPoly g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = num_.divmod(g).first;
            den_ = den_.divmod(g).first;
        }
    }
    if (den_.leading() != 1) {
        Rational inv = 1 / den_.leading();
        num_ = inv * num_;
        den_ = inv * den_;
    }
}

Rational Coeff::rational() const {
    if (num_.is_zero()) return Rational(0);
    return num_.coeff(0);
}

bool Coeff::is_integer() const { return is_rational() && rational().get_den() == 1; }

bool Coeff::is_monomial() const {
    if (num_.is_zero()) return true;
    auto single = [](const QPoly& p) {
        int nonzero = 0;
        for (const auto& c : p.coeffs())
            if (sgn(c) != 0) ++nonzero;
        return nonzero == 1;
    };
    return single(num_) && single(den_);
}

std::pair<Rational, int> Coeff::as_monomial() const {
    if (!is_monomial()) throw Error(ErrorKind::InvalidArgument, "coefficient is not a monomial in pi");
    if (num_.is_zero()) return {Rational(0), 0};
    // den_ is monic, so it is exactly pi^j
    return {num_.leading(), num_.degree() - den_.degree()};
}

std::optional<Coeff> Coeff::exact_sqrt() const {
    if (is_zero()) return Coeff();
    if (!is_monomial()) return std::nullopt;
    auto [c, k] = as_monomial();
    if (sgn(c) < 0 || k % 2 != 0) return std::nullopt;
    if (!mpz_perfect_square_p(c.get_num_mpz_t()) || !mpz_perfect_square_p(c.get_den_mpz_t()))
        return std::nullopt;
    Integer n, d;
    mpz_sqrt(n.get_mpz_t(), c.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), c.get_den_mpz_t());
    return Coeff(Rational(n, d)) * pi_power(k / 2);
}

long double Coeff::value() const {
    if (is_rational()) return to_long_double(rational());
    auto conv = [](const Rational& q) { return to_long_double(q); };
    return num_.eval_as<long double>(kPi, conv) / den_.eval_as<long double>(kPi, conv);
}

int Coeff::sign() const {
    if (is_zero()) return 0;
    if (is_rational()) return sgn(rational());
    long double v = value();
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

namespace {

std::string pi_str(int k) { return k == 1 ? "pi" : "pi^" + std::to_string(k); }

/// "c*pi^k" pieces for a polynomial in pi, descending degree.
std::string poly_in_pi(const QPoly& p) {
    std::string out;
    bool first = true;
    for (int i = p.degree(); i >= 0; --i) {
        Rational c = p.coeff(i);
        if (sgn(c) == 0) continue;
        bool neg = sgn(c) < 0;
        Rational a = abs(c);
        if (first) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        first = false;
        std::string cs = a.get_den() == 1 ? a.get_str() : "(" + a.get_str() + ")";
        if (i == 0) {
            out += a.get_str();
        } else if (a == 1) {
            out += pi_str(i);
        } else {
            out += cs + "*" + pi_str(i);
        }
    }
    return out;
}

}  // namespace

std::string Coeff::str() const {
    if (is_rational()) return rational().get_str();
    if (is_monomial()) {
        auto [c, k] = as_monomial();
        std::string sign = sgn(c) < 0 ? "-" : "";
        Rational a = abs(c);
        if (k > 0) {
            if (a == 1) return sign + pi_str(k);
            if (a.get_den() == 1) return sign + a.get_str() + "*" + pi_str(k);
            return sign + "(" + a.get_str() + ")*" + pi_str(k);
        }
        if (a.get_den() == 1) return sign + a.get_num().get_str() + "/" + pi_str(-k);
        return sign + a.get_num().get_str() + "/(" + a.get_den().get_str() + "*" + pi_str(-k) + ")";
    }
    std::string n = "(" + poly_in_pi(num_) + ")";
    if (den_.degree() == 0) return n;
    if (num_.is_constant()) {
        const Rational& c = num_.coeff(0);
        n = c.get_den() == 1 ? c.get_str() : (sgn(c) < 0 ? "-(" + Rational(-c).get_str() + ")" : "(" + c.get_str() + ")");
    }
    return n + "/(" + poly_in_pi(den_) + ")";
}

bool Coeff::needs_parens_in_product() const {
    // "(9/8)*pi^2" already reads as a product
    if (!is_rational() && is_monomial() && as_monomial().second > 0) return false;
    std::string s = str();
    if (!s.empty() && s[0] == '-') s.erase(0, 1);
    return s.find('/') != std::string::npos || s.find(' ') != std::string::npos;
}

Coeff operator+(const Coeff& a, const Coeff& b) {
    if (a.is_rational() && b.is_rational()) return Coeff(Rational(a.rational() + b.rational()));
    return Coeff::from_fraction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Coeff operator-(const Coeff& a) {
    Coeff c = a;
    c.num_ = -c.num_;
    return c;
}

Coeff operator-(const Coeff& a, const Coeff& b) { return a + (-b); }

Coeff operator*(const Coeff& a, const Coeff& b) {
    if (a.is_rational() && b.is_rational()) return Coeff(Rational(a.rational() * b.rational()));
    if (a.is_zero() || b.is_zero()) return Coeff();
    return Coeff::from_fraction(a.num_ * b.num_, a.den_ * b.den_);
}

Coeff operator/(const Coeff& a, const Coeff& b) {
    if (b.is_zero()) throw Error(ErrorKind::InvalidArgument, "division by zero");
    if (a.is_rational() && b.is_rational()) return Coeff(Rational(a.rational() / b.rational()));
    return Coeff::from_fraction(a.num_ * b.den_, a.den_ * b.num_);
}

Coeff Coeff::pow(int n) const {
    if (n < 0) return Coeff(1) / pow(-n);
    Coeff out(1);
    Coeff base = *this;
    auto e = static_cast<unsigned>(n);
    while (e) {
        if (e & 1u) out *= base;
        e >>= 1u;
        if (e) base *= base;
    }
    return out;
}

namespace {

int compare_poly(const QPoly& a, const QPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    for (int i = a.degree(); i >= 0; --i) {
        int c = cmp(a.coeff(i), b.coeff(i));
        if (c != 0) return c < 0 ? -1 : 1;
    }
    return 0;
}

}  // namespace

int compare(const Coeff& a, const Coeff& b) {
    int c = compare_poly(a.den(), b.den());
    if (c != 0) return c;
    return compare_poly(a.num(), b.num());
}

}  // namespace shehu
