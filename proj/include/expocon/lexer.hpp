#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "expocon/error.hpp"

namespace expocon::detail {

enum class TokenKind { integer, identifier, plus, minus, star, slash, caret, lparen, rparen, lbracket, rbracket, comma, end };

struct Token {
    TokenKind kind;
    std::string text;
    std::size_t position;
};

inline std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            if (i < text.size() && text[i] == '.')
                throw ParseError("floating-point literals are not supported", i);
            tokens.push_back({TokenKind::integer, std::string(text.substr(start, i - start)), start});
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
                ++i;
            tokens.push_back({TokenKind::identifier, std::string(text.substr(start, i - start)), start});
            continue;
        }
        TokenKind kind;
        switch (c) {
            case '+': kind = TokenKind::plus; break;
            case '-': kind = TokenKind::minus; break;
            case '*': kind = TokenKind::star; break;
            case '/': kind = TokenKind::slash; break;
            case '^': kind = TokenKind::caret; break;
            case '(': kind = TokenKind::lparen; break;
            case ')': kind = TokenKind::rparen; break;
            case '[': kind = TokenKind::lbracket; break;
            case ']': kind = TokenKind::rbracket; break;
            case ',': kind = TokenKind::comma; break;
            default: throw ParseError(std::string("unexpected character '") + c + "'", i);
        }
        tokens.push_back({kind, std::string(1, c), start});
        ++i;
    }
    tokens.push_back({TokenKind::end, "", text.size()});
    return tokens;
}

/// Cursor over a token list shared by the polynomial and expression parsers.
class TokenStream {
public:
    explicit TokenStream(std::string_view text) : tokens_(tokenize(text)) {}

    const Token& peek() const { return tokens_[pos_]; }
    bool at(TokenKind k) const { return peek().kind == k; }
    Token next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
    bool accept(TokenKind k) {
        if (!at(k)) return false;
        ++pos_;
        return true;
    }
    Token expect(TokenKind k, const char* what) {
        if (!at(k)) {
            const Token& t = peek();
            throw ParseError(std::string("expected ") + what +
                                 (t.kind == TokenKind::end ? " but reached end of input" : " but found '" + t.text + "'"),
                             t.position);
        }
        return next();
    }

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

}  // namespace expocon::detail
