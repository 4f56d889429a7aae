#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "expocon/error.hpp"
#include "expocon/expr.hpp"
#include "expocon/lexer.hpp"
#include "expocon/mpcomplex.hpp"
#include "expocon/poly.hpp"
#include "expocon/rational.hpp"
#include "expocon/words.hpp"

namespace expocon {

/// How scalars of a ring are written inside expression text.
template <typename R>
struct ScalarFormat;

template <>
struct ScalarFormat<Rational> {
    static std::string text(const Rational& r) { return r.to_short_string(); }
    static bool atomic(const Rational&) { return true; }
    static bool negative(const Rational& r) { return r.sign() < 0; }
};

template <>
struct ScalarFormat<PolyRational> {
    static std::string text(const PolyRational& p) { return p.to_string(); }
    static bool atomic(const PolyRational& p) { return p.size() <= 1; }
    static bool negative(const PolyRational& p) { return p.size() == 1 && p.terms().begin()->second.sign() < 0; }
};

template <>
struct ScalarFormat<MPComplex> {
    static std::string text(const MPComplex& z) {
        if (z.imag().is_zero()) return z.real().to_string();
        return "(" + z.real().to_string() + " + " + z.imag().to_string() + "*I)";
    }
    static bool atomic(const MPComplex& z) { return z.imag().is_zero(); }
    static bool negative(const MPComplex& z) { return z.imag().is_zero() && z.real().sign() < 0; }
};

namespace detail {

enum class Level { sum, product, atom };

template <ScalarRing R>
std::string print_expr(const Expr<R>& e, const GradedAlphabet& alphabet, Level level);

template <ScalarRing R>
std::string scalar_prefix(const R& c) {
    return ScalarFormat<R>::atomic(c) ? ScalarFormat<R>::text(c) : "(" + ScalarFormat<R>::text(c) + ")";
}

template <ScalarRing R>
std::string print_scaled(const node::Scaled<R>& s, const GradedAlphabet& alphabet) {
    if (s.operand.is_identity()) return scalar_prefix(s.scalar);
    if (s.scalar == -ring_one<R>()) return "-" + print_expr(s.operand, alphabet, Level::atom);
    return scalar_prefix(s.scalar) + "*" + print_expr(s.operand, alphabet, Level::product);
}

template <ScalarRing R>
std::string print_expr(const Expr<R>& e, const GradedAlphabet& alphabet, Level level) {
    auto wrap = [](std::string s, bool paren) { return paren ? "(" + s + ")" : s; };
    return std::visit(
        [&](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, node::Symbol>) {
                return alphabet.name(x.index);
            } else if constexpr (std::is_same_v<T, node::Sum<R>>) {
                std::string out;
                for (std::size_t i = 0; i < x.terms.size(); ++i) {
                    const auto& t = x.terms[i];
                    const auto* s = t.template as<node::Scaled<R>>();
                    if (i > 0 && s && ScalarFormat<R>::negative(s->scalar)) {
                        out += " - " + print_expr(Expr<R>::scaled(-s->scalar, s->operand), alphabet, Level::product);
                    } else {
                        if (i > 0) out += " + ";
                        out += print_expr(t, alphabet, Level::product);
                    }
                }
                return wrap(out, level != Level::sum);
            } else if constexpr (std::is_same_v<T, node::Scaled<R>>) {
                return wrap(print_scaled(x, alphabet), level == Level::atom);
            } else if constexpr (std::is_same_v<T, node::Product<R>>) {
                if (x.factors.empty()) return "1";
                std::string out;
                for (std::size_t i = 0; i < x.factors.size(); ++i) {
                    if (i) out += "*";
                    out += print_expr(x.factors[i], alphabet, Level::atom);
                }
                return wrap(out, level == Level::atom);
            } else if constexpr (std::is_same_v<T, node::Power<R>>) {
                const std::string base = print_expr(x.base, alphabet, Level::atom);
                return wrap(base, x.base.template as<node::Power<R>>() != nullptr) + "^" + std::to_string(x.exponent);
            } else if constexpr (std::is_same_v<T, node::Commutator<R>>) {
                return "[" + print_expr(x.left, alphabet, Level::sum) + "," + print_expr(x.right, alphabet, Level::sum) +
                       "]";
            } else {
                return "exp(" + print_expr(x.operand, alphabet, Level::sum) + ")";
            }
        },
        e.node());
}

}  // namespace detail

/// Text form accepted back by parse_expression (for exact scalar rings).
template <ScalarRing R>
std::string to_string(const Expr<R>& e, const GradedAlphabet& alphabet) {
    return detail::print_expr(e, alphabet, detail::Level::sum);
}

namespace detail {

class ExprParser {
public:
    ExprParser(std::string_view text, const GradedAlphabet& alphabet, const std::vector<std::string>& parameters)
        : ts_(text), alphabet_(alphabet), parameters_(parameters.begin(), parameters.end()) {
        for (const auto& p : parameters_)
            if (alphabet_.index_of(p)) throw DomainError("parameter '" + p + "' clashes with a symbol name");
    }

    Expr<PolyRational> parse() {
        auto e = sum();
        if (!ts_.at(TokenKind::end)) throw ParseError("unexpected '" + ts_.peek().text + "'", ts_.peek().position);
        return e;
    }

private:
    using E = Expr<PolyRational>;

    E sum() {
        std::vector<E> terms{product()};
        while (true) {
            if (ts_.accept(TokenKind::plus)) {
                terms.push_back(product());
            } else if (ts_.accept(TokenKind::minus)) {
                terms.push_back(E::scaled(PolyRational(-1), product()));
            } else {
                return E::sum(std::move(terms));
            }
        }
    }
    E product() {
        std::vector<E> factors{unary()};
        while (ts_.accept(TokenKind::star)) factors.push_back(unary());
        return E::product(std::move(factors));
    }
    E unary() {
        if (ts_.accept(TokenKind::minus)) return E::scaled(PolyRational(-1), unary());
        return power();
    }
    E power() {
        E base = primary();
        if (ts_.accept(TokenKind::caret)) {
            Token t = ts_.expect(TokenKind::integer, "nonnegative integer exponent");
            base = E::power(base, static_cast<unsigned>(std::stoul(t.text)));
        }
        return base;
    }
    E primary() {
        const Token t = ts_.peek();
        switch (t.kind) {
            case TokenKind::integer: {
                ts_.next();
                Rational value = Rational::parse(t.text);
                if (ts_.at(TokenKind::slash)) {
                    ts_.next();
                    Token d = ts_.expect(TokenKind::integer, "integer denominator");
                    if (Rational::parse(d.text).is_zero()) throw ParseError("zero denominator", d.position);
                    value /= Rational::parse(d.text);
                }
                return E::constant(PolyRational(value));
            }
            case TokenKind::identifier: {
                ts_.next();
                if (t.text == "exp" && ts_.at(TokenKind::lparen)) {
                    ts_.next();
                    E inner = sum();
                    ts_.expect(TokenKind::rparen, "')'");
                    return E::exponential(inner);
                }
                if (auto idx = alphabet_.index_of(t.text)) return E::symbol(*idx);
                if (parameters_.count(t.text)) return E::constant(PolyRational::variable(t.text));
                throw UnknownIdentifierError(t.text, t.position);
            }
            case TokenKind::lparen: {
                ts_.next();
                E inner = sum();
                ts_.expect(TokenKind::rparen, "')'");
                return inner;
            }
            case TokenKind::lbracket: {
                ts_.next();
                E left = sum();
                ts_.expect(TokenKind::comma, "','");
                E right = sum();
                ts_.expect(TokenKind::rbracket, "']'");
                return E::commutator(left, right);
            }
            default:
                throw ParseError(t.kind == TokenKind::end ? "unexpected end of input" : "unexpected '" + t.text + "'",
                                 t.position);
        }
    }

    TokenStream ts_;
    const GradedAlphabet& alphabet_;
    std::set<std::string> parameters_;
};

}  // namespace detail

/// Parses expression text: rationals p/q, parameter names, + - * ^, [X,Y]
/// commutators, exp(...), parentheses. Products keep the written order.
inline Expr<PolyRational> parse_expression(std::string_view text, const GradedAlphabet& alphabet,
                                           const std::vector<std::string>& parameters = {}) {
    return detail::ExprParser(text, alphabet, parameters).parse();
}

/// Converts an expression whose scalars are all constants.
inline Expr<Rational> to_rational_expr(const Expr<PolyRational>& e) {
    return map_scalars<Rational>(e, [](const PolyRational& p) { return p.constant_value(); });
}

inline Expr<PolyRational> to_poly_expr(const Expr<Rational>& e) {
    return map_scalars<PolyRational>(e, [](const Rational& q) { return PolyRational(q); });
}

/// Rational-scalar parse; parameters are not allowed.
inline Expr<Rational> parse_rational_expression(std::string_view text, const GradedAlphabet& alphabet) {
    return to_rational_expr(parse_expression(text, alphabet));
}

/// Exact substitution of parameter values; the tree shape is unchanged.
inline Expr<PolyRational> substitute_parameters(const Expr<PolyRational>& e,
                                                const std::map<std::string, Rational>& assignment) {
    return map_scalars<PolyRational>(e, [&](const PolyRational& p) { return poly_substitute(p, assignment); });
}

/// Numeric instantiation; every parameter must be assigned.
inline Expr<MPComplex> substitute_parameters(const Expr<PolyRational>& e,
                                             const std::map<std::string, MPComplex>& assignment) {
    return map_scalars<MPComplex>(e, [&](const PolyRational& p) { return poly_evaluate(p, assignment); });
}

}  // namespace expocon
