#include "shehu/image_expr.hpp"

#include <map>

#include "lexer.hpp"

namespace shehu {

namespace {

std::shared_ptr<const ImageNode> make(ImageNode n) { return std::make_shared<const ImageNode>(std::move(n)); }

}  // namespace

ImageExpr::ImageExpr() : node_(make(ImageNode{})) {}

ImageExpr ImageExpr::num(const Coeff& c) {
    ImageNode n;
    n.kind = ImageNode::Kind::Num;
    n.value = c;
    return ImageExpr(make(std::move(n)));
}

ImageExpr ImageExpr::sym(ImageSym s) {
    ImageNode n;
    n.kind = ImageNode::Kind::Sym;
    n.sym = s;
    return ImageExpr(make(std::move(n)));
}

ImageExpr ImageExpr::add(std::vector<ImageExpr> terms) {
    std::vector<ImageExpr> flat;
    for (const auto& t : terms) {
        if (t.kind() == ImageNode::Kind::Add) {
            flat.insert(flat.end(), t.node().children.begin(), t.node().children.end());
        } else {
            flat.push_back(t);
        }
    }
    Coeff total;
    bool any_num = false;
    std::size_t num_at = 0;
    std::vector<ImageExpr> rest;
    for (const auto& t : flat) {
        if (t.is_num()) {
            if (!any_num) num_at = rest.size();
            any_num = true;
            total += t.node().value;
        } else {
            rest.push_back(t);
        }
    }
    if (any_num && !total.is_zero()) rest.insert(rest.begin() + static_cast<long>(num_at), num(total));
    if (rest.empty()) return num(Coeff());
    if (rest.size() == 1) return rest.front();
    ImageNode n;
    n.kind = ImageNode::Kind::Add;
    n.children = std::move(rest);
    return ImageExpr(make(std::move(n)));
}

ImageExpr ImageExpr::mul(std::vector<ImageExpr> factors) {
    Coeff c(1);
    std::vector<ImageExpr> rest;
    for (const auto& f : factors) {
        const auto& parts = f.kind() == ImageNode::Kind::Mul ? f.node().children : std::vector<ImageExpr>{f};
        for (const auto& g : parts) {
            if (g.is_num()) {
                c *= g.node().value;
            } else {
                rest.push_back(g);
            }
        }
    }
    if (c.is_zero() || rest.empty()) return num(c);
    if (c != Coeff(1)) rest.insert(rest.begin(), num(c));
    if (rest.size() == 1) return rest.front();
    ImageNode n;
    n.kind = ImageNode::Kind::Mul;
    n.children = std::move(rest);
    return ImageExpr(make(std::move(n)));
}

ImageExpr ImageExpr::div(const ImageExpr& a, const ImageExpr& b) {
    if (b.is_num()) {
        if (b.node().value.is_zero()) throw Error(ErrorKind::InvalidArgument, "division by zero");
        return mul({num(Coeff(1) / b.node().value), a});
    }
    if (a.is_num() && a.node().value.is_zero()) return a;
    ImageNode n;
    n.kind = ImageNode::Kind::Div;
    n.children = {a, b};
    return ImageExpr(make(std::move(n)));
}

ImageExpr ImageExpr::pow(const ImageExpr& base, int k) {
    if (k == 0) return num(Coeff(1));
    if (k == 1) return base;
    if (base.is_num()) {
        if (base.node().value.is_zero() && k < 0) throw Error(ErrorKind::InvalidArgument, "zero to a negative power");
        return num(base.node().value.pow(k));
    }
    ImageNode n;
    n.kind = ImageNode::Kind::Pow;
    n.exponent = k;
    n.children = {base};
    return ImageExpr(make(std::move(n)));
}

ImageExpr ImageExpr::fn(ImageFn f, const ImageExpr& arg) {
    if (arg.is_num()) {
        const Coeff& c = arg.node().value;
        if (f == ImageFn::Exp && c.is_zero()) return num(Coeff(1));
        if (f == ImageFn::Log && c == Coeff(1)) return num(Coeff());
        if (f == ImageFn::Atan && c.is_zero()) return num(Coeff());
        if (f == ImageFn::Sqrt) {
            if (auto r = c.exact_sqrt()) return num(*r);
        }
    }
    ImageNode n;
    n.kind = ImageNode::Kind::Fn;
    n.fn = f;
    n.children = {arg};
    return ImageExpr(make(std::move(n)));
}

ImageExpr ImageExpr::neg(const ImageExpr& a) {
    if (a.is_num()) return num(-a.node().value);
    if (a.kind() == ImageNode::Kind::Mul && a.node().children.front().is_num()) {
        auto f = a.node().children;
        f.front() = num(-f.front().node().value);
        return mul(std::move(f));
    }
    return mul({num(Coeff(-1)), a});
}

bool ImageExpr::uses(ImageSym s) const {
    if (kind() == ImageNode::Kind::Sym) return node().sym == s;
    for (const auto& c : node().children)
        if (c.uses(s)) return true;
    return false;
}

bool ImageExpr::has_functions() const {
    if (kind() == ImageNode::Kind::Fn) return true;
    for (const auto& c : node().children)
        if (c.has_functions()) return true;
    return false;
}

// ---------------------------------------------------------------- parsing

namespace {

using detail::Tok;
using detail::TokenStream;

const std::map<std::string, ImageFn, std::less<>> kImageFns = {
    {"exp", ImageFn::Exp}, {"sqrt", ImageFn::Sqrt}, {"log", ImageFn::Log}, {"atan", ImageFn::Atan}};

class ImageParser {
public:
    ImageParser(std::string_view text, const ConstantBindings& constants) : ts_(text), constants_(constants) {}

    ImageExpr run() {
        ImageExpr e = expr();
        if (ts_.peek().kind != Tok::End)
            throw Error(ErrorKind::Syntax, "unexpected '" + ts_.peek().text + "'", ts_.peek().offset);
        return e;
    }

private:
    ImageExpr expr() {
        std::vector<ImageExpr> terms{term()};
        for (;;) {
            if (ts_.accept(Tok::Plus)) {
                terms.push_back(term());
            } else if (ts_.accept(Tok::Minus)) {
                terms.push_back(ImageExpr::neg(term()));
            } else {
                break;
            }
        }
        return ImageExpr::add(std::move(terms));
    }

    ImageExpr term() {
        ImageExpr acc = unary();
        for (;;) {
            if (ts_.accept(Tok::Star)) {
                acc = ImageExpr::mul({acc, unary()});
            } else if (ts_.accept(Tok::Slash)) {
                acc = ImageExpr::div(acc, unary());
            } else {
                break;
            }
        }
        return acc;
    }

    ImageExpr unary() {
        if (ts_.accept(Tok::Minus)) return ImageExpr::neg(unary());
        if (ts_.accept(Tok::Plus)) return unary();
        return power();
    }

    ImageExpr power() {
        ImageExpr b = base();
        if (ts_.peek().kind != Tok::Caret) return b;
        std::size_t at = ts_.next().offset;
        ImageExpr ex = exponent();
        if (!ex.is_num() || !ex.node().value.is_integer())
            throw Error(ErrorKind::Syntax, "exponent must be an integer constant", at);
        Integer k = ex.node().value.rational().get_num();
        if (abs(k) > 64) throw Error(ErrorKind::InvalidArgument, "exponent too large", at);
        return ImageExpr::pow(b, static_cast<int>(k.get_si()));
    }

    ImageExpr exponent() {
        if (ts_.accept(Tok::Minus)) return ImageExpr::neg(exponent());
        return power();
    }

    ImageExpr base() {
        const auto& tok = ts_.peek();
        switch (tok.kind) {
            case Tok::Number: return ImageExpr::num(Coeff(ts_.next().number));
            case Tok::LParen: {
                ts_.next();
                ImageExpr e = expr();
                ts_.expect(Tok::RParen, "')'");
                return e;
            }
            case Tok::Ident: return identifier();
            default:
                throw Error(ErrorKind::Syntax, "expected an operand" + TokenStream::describe(tok), tok.offset);
        }
    }

    ImageExpr identifier() {
        detail::Token tok = ts_.next();
        const std::string& name = tok.text;
        if (ts_.peek().kind == Tok::LParen) {
            auto f = kImageFns.find(name);
            if (f == kImageFns.end())
                throw Error(ErrorKind::UnknownIdentifier, "unknown function '" + name + "'", tok.offset);
            ts_.next();
            ImageExpr arg = expr();
            ts_.expect(Tok::RParen, "')'");
            return ImageExpr::fn(f->second, arg);
        }
        if (name == "s") return ImageExpr::sym(ImageSym::S);
        if (name == "u") return ImageExpr::sym(ImageSym::U);
        if (name == "w" || name == "omega") return ImageExpr::sym(ImageSym::W);
        if (name == "pi") return ImageExpr::num(Coeff::pi_power(1));
        if (auto c = constants_.find(name); c != constants_.end()) return ImageExpr::num(c->second);
        throw Error(ErrorKind::UnknownIdentifier, "unknown identifier '" + name + "'", tok.offset);
    }

    TokenStream ts_;
    const ConstantBindings& constants_;
};

}  // namespace

ImageExpr parse_image(std::string_view text, const ConstantBindings& constants) {
    return ImageParser(text, constants).run();
}

// ---------------------------------------------------------------- printing

namespace {

std::string_view fn_name(ImageFn f) {
    switch (f) {
        case ImageFn::Exp: return "exp";
        case ImageFn::Sqrt: return "sqrt";
        case ImageFn::Log: return "log";
        case ImageFn::Atan: return "atan";
    }
    return "?";
}

std::string_view sym_name(ImageSym s) {
    switch (s) {
        case ImageSym::S: return "s";
        case ImageSym::U: return "u";
        case ImageSym::W: return "w";
    }
    return "?";
}

bool is_negative(const ImageExpr& e) {
    switch (e.kind()) {
        case ImageNode::Kind::Num: return e.node().value.sign() < 0;
        case ImageNode::Kind::Mul: return is_negative(e.node().children.front());
        case ImageNode::Kind::Div: return is_negative(e.node().children.front());
        default: return false;
    }
}

ImageExpr negated(const ImageExpr& e) {
    if (e.kind() == ImageNode::Kind::Div)
        return ImageExpr::div(negated(e.node().children[0]), e.node().children[1]);
    return ImageExpr::neg(e);
}

bool is_simple(const ImageExpr& e) {
    switch (e.kind()) {
        case ImageNode::Kind::Sym:
        case ImageNode::Kind::Fn: return true;
        case ImageNode::Kind::Num: {
            const Coeff& c = e.node().value;
            return c.is_integer() && c.sign() >= 0;
        }
        case ImageNode::Kind::Pow: return e.node().exponent > 0 && is_simple(e.node().children.front());
        default: return false;
    }
}

std::string wrap(const std::string& s) { return "(" + s + ")"; }

}  // namespace

std::string format(const ImageExpr& e) {
    const ImageNode& n = e.node();
    switch (n.kind) {
        case ImageNode::Kind::Num: return n.value.str();
        case ImageNode::Kind::Sym: return std::string(sym_name(n.sym));
        case ImageNode::Kind::Fn: return std::string(fn_name(n.fn)) + "(" + format(n.children.front()) + ")";
        case ImageNode::Kind::Pow: {
            const ImageExpr& b = n.children.front();
            std::string bs = format(b);
            if (!(b.kind() == ImageNode::Kind::Sym || b.kind() == ImageNode::Kind::Fn)) bs = wrap(bs);
            std::string ex = std::to_string(n.exponent);
            if (n.exponent < 0) ex = wrap(ex);
            return bs + "^" + ex;
        }
        case ImageNode::Kind::Div: {
            const ImageExpr& a = n.children[0];
            const ImageExpr& b = n.children[1];
            std::string as = format(a);
            if (a.kind() == ImageNode::Kind::Add || (a.is_num() && as.find('/') != std::string::npos)) as = wrap(as);
            std::string bs = format(b);
            if (!is_simple(b)) bs = wrap(bs);
            return as + "/" + bs;
        }
        case ImageNode::Kind::Mul: {
            std::string out;
            std::size_t i = 0;
            const ImageExpr& lead = n.children.front();
            if (lead.is_num()) {
                auto [neg, text] = signed_term(lead.node().value, "x");
                text.resize(text.size() - 1);  // keeps the trailing '*'
                if (lead.node().value == Coeff(-1) || lead.node().value == Coeff(1)) text.clear();
                out = (neg ? "-" : "") + text;
                i = 1;
            }
            for (std::size_t k = i; k < n.children.size(); ++k) {
                const ImageExpr& c = n.children[k];
                std::string cs = format(c);
                bool last = k + 1 == n.children.size();
                if (c.kind() == ImageNode::Kind::Add || (c.kind() == ImageNode::Kind::Div && !last) ||
                    c.kind() == ImageNode::Kind::Mul)
                    cs = wrap(cs);
                if (k > i) out += "*";
                out += cs;
            }
            return out;
        }
        case ImageNode::Kind::Add: {
            std::vector<std::pair<bool, std::string>> terms;
            for (const auto& c : n.children) {
                if (is_negative(c)) {
                    ImageExpr m = negated(c);
                    std::string s = format(m);
                    if (m.kind() == ImageNode::Kind::Add) s = wrap(s);
                    terms.emplace_back(true, s);
                } else {
                    terms.emplace_back(false, format(c));
                }
            }
            return join_terms(terms);
        }
    }
    return "?";
}

// ---------------------------------------------------------------- evaluation and exact forms

Complex evaluate(const ImageExpr& e, Complex s, Complex u) {
    const ImageNode& n = e.node();
    switch (n.kind) {
        case ImageNode::Kind::Num: return Complex(n.value.value(), 0.0L);
        case ImageNode::Kind::Sym: return n.sym == ImageSym::S ? s : u;
        case ImageNode::Kind::Add: {
            Complex acc(0.0L, 0.0L);
            for (const auto& c : n.children) acc += evaluate(c, s, u);
            return acc;
        }
        case ImageNode::Kind::Mul: {
            Complex acc(1.0L, 0.0L);
            for (const auto& c : n.children) acc *= evaluate(c, s, u);
            return acc;
        }
        case ImageNode::Kind::Div: return evaluate(n.children[0], s, u) / evaluate(n.children[1], s, u);
        case ImageNode::Kind::Pow: {
            Complex b = evaluate(n.children.front(), s, u);
            Complex acc(1.0L, 0.0L);
            for (int k = 0; k < std::abs(n.exponent); ++k) acc *= b;
            return n.exponent < 0 ? Complex(1.0L, 0.0L) / acc : acc;
        }
        case ImageNode::Kind::Fn: {
            Complex a = evaluate(n.children.front(), s, u);
            switch (n.fn) {
                case ImageFn::Exp: return std::exp(a);
                case ImageFn::Sqrt: return std::sqrt(a);
                case ImageFn::Log: return std::log(a);
                case ImageFn::Atan: return std::atan(a);
            }
        }
    }
    return Complex(0.0L, 0.0L);
}

namespace {

struct Homog {
    bool zero = false;
    int k = 0;
    RationalFunction f;
};

Homog homog(const ImageExpr& e) {
    const ImageNode& n = e.node();
    switch (n.kind) {
        case ImageNode::Kind::Num:
            if (n.value.is_zero()) return Homog{true, 0, RationalFunction()};
            return Homog{false, 0, RationalFunction(n.value)};
        case ImageNode::Kind::Sym:
            if (n.sym == ImageSym::S) return Homog{false, 1, RationalFunction::variable()};
            return Homog{false, 1, RationalFunction(Coeff(1))};
        case ImageNode::Kind::Add: {
            Homog acc{true, 0, RationalFunction()};
            for (const auto& c : n.children) {
                Homog h = homog(c);
                if (h.zero) continue;
                if (acc.zero) {
                    acc = h;
                    continue;
                }
                if (h.k != acc.k)
                    throw Error(ErrorKind::NotHomogeneous, "terms of different degree in s and u: " + format(e));
                acc.f += h.f;
                if (acc.f.is_zero()) acc = Homog{true, 0, RationalFunction()};
            }
            return acc;
        }
        case ImageNode::Kind::Mul: {
            Homog acc{false, 0, RationalFunction(Coeff(1))};
            for (const auto& c : n.children) {
                Homog h = homog(c);
                if (h.zero) return h;
                acc.k += h.k;
                acc.f *= h.f;
            }
            return acc;
        }
        case ImageNode::Kind::Div: {
            Homog a = homog(n.children[0]);
            Homog b = homog(n.children[1]);
            if (b.zero) throw Error(ErrorKind::InvalidArgument, "division by zero in image");
            if (a.zero) return a;
            return Homog{false, a.k - b.k, a.f / b.f};
        }
        case ImageNode::Kind::Pow: {
            Homog b = homog(n.children.front());
            if (b.zero) {
                if (n.exponent < 0) throw Error(ErrorKind::InvalidArgument, "zero to a negative power");
                return b;
            }
            return Homog{false, b.k * n.exponent, b.f.pow(n.exponent)};
        }
        case ImageNode::Kind::Fn:
            throw Error(ErrorKind::NonRationalImage, "image is not rational: " + format(e));
    }
    return Homog{};
}

}  // namespace

HomogeneousForm homogeneous_form(const ImageExpr& e) {
    Homog h = homog(e);
    if (h.zero) return HomogeneousForm{0, RationalFunction()};
    return HomogeneousForm{h.k, h.f};
}

RationalFunction univariate_form(const ImageExpr& e, ImageSym var) {
    const ImageNode& n = e.node();
    switch (n.kind) {
        case ImageNode::Kind::Num: return RationalFunction(n.value);
        case ImageNode::Kind::Sym:
            if (n.sym != var)
                throw Error(ErrorKind::InvalidArgument,
                            "symbol '" + std::string(sym_name(n.sym)) + "' is not allowed here");
            return RationalFunction::variable();
        case ImageNode::Kind::Add: {
            RationalFunction acc;
            for (const auto& c : n.children) acc += univariate_form(c, var);
            return acc;
        }
        case ImageNode::Kind::Mul: {
            RationalFunction acc(Coeff(1));
            for (const auto& c : n.children) acc *= univariate_form(c, var);
            return acc;
        }
        case ImageNode::Kind::Div: return univariate_form(n.children[0], var) / univariate_form(n.children[1], var);
        case ImageNode::Kind::Pow: return univariate_form(n.children.front(), var).pow(n.exponent);
        case ImageNode::Kind::Fn:
            throw Error(ErrorKind::NonRationalImage, "image is not rational: " + format(e));
    }
    return RationalFunction();
}

}  // namespace shehu
