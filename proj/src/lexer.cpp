#include "lexer.hpp"

#include <cctype>

namespace shehu::detail {

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i + 1 < text.size() &&
                                                            std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
            std::string whole, frac;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) whole += text[i++];
            if (i < text.size() && text[i] == '.') {
                ++i;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) frac += text[i++];
            }
            if (whole.empty()) whole = "0";
            Integer scale = 1;
            for (std::size_t k = 0; k < frac.size(); ++k) scale *= 10;
            Rational value(Integer(whole + frac), scale);
            value.canonicalize();
            out.push_back({Tok::Number, std::string(text.substr(start, i - start)), start, value});
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
                ++i;
            out.push_back({Tok::Ident, std::string(text.substr(start, i - start)), start, Rational()});
            continue;
        }
        Tok k;
        switch (c) {
            case '+': k = Tok::Plus; break;
            case '-': k = Tok::Minus; break;
            case '*': k = Tok::Star; break;
            case '/': k = Tok::Slash; break;
            case '^': k = Tok::Caret; break;
            case '(': k = Tok::LParen; break;
            case ')': k = Tok::RParen; break;
            case '!': k = Tok::Bang; break;
            case ',': k = Tok::Comma; break;
            case '=': k = Tok::Equals; break;
            case '\'': k = Tok::Quote; break;
            default:
                throw Error(ErrorKind::Syntax, std::string("unexpected character '") + c + "'", i);
        }
        ++i;
        out.push_back({k, std::string(1, c), start, Rational()});
    }
    out.push_back({Tok::End, "", text.size(), Rational()});
    return out;
}

}  // namespace shehu::detail
