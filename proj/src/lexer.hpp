#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "shehu/errors.hpp"
#include "shehu/scalar.hpp"

namespace shehu::detail {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Bang, Comma, Equals, Quote, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t offset;
    Rational number;  // Number only; decimals are read exactly
};

std::vector<Token> tokenize(std::string_view text);

class TokenStream {
public:
    explicit TokenStream(std::string_view text) : toks_(tokenize(text)) {}

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = pos_ + ahead;
        return i < toks_.size() ? toks_[i] : toks_.back();
    }
    const Token& next() {
        const Token& t = toks_[pos_];
        if (pos_ + 1 < toks_.size()) ++pos_;
        return t;
    }
    bool accept(Tok k) {
        if (peek().kind != k) return false;
        next();
        return true;
    }
    const Token& expect(Tok k, const char* what) {
        if (peek().kind != k) {
            throw Error(ErrorKind::Syntax, std::string("expected ") + what + describe(peek()), peek().offset);
        }
        return next();
    }
    static std::string describe(const Token& t) {
        if (t.kind == Tok::End) return " but reached end of input";
        return " but found '" + t.text + "'";
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace shehu::detail
