#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "expocon/ansatz.hpp"
#include "expocon/error.hpp"
#include "expocon/expr.hpp"
#include "expocon/linalg.hpp"
#include "expocon/mpcomplex.hpp"
#include "expocon/rational.hpp"
#include "expocon/series.hpp"
#include "expocon/wcoeff.hpp"
#include "expocon/words.hpp"

namespace expocon {

/// Condition i reads lhs[i] - rhs[i] = 0.
template <ScalarRing R>
struct OrderConditionSystem {
    std::vector<Word> words;
    std::vector<R> lhs;
    std::vector<R> rhs;
    int order = 0;
    bool self_adjoint = false;
    /// Where rhs came from, e.g. "wcoeff" or "magnus closed form".
    std::string rhs_source;

    std::size_t size() const noexcept { return words.size(); }
    std::vector<R> equations() const {
        std::vector<R> out;
        out.reserve(lhs.size());
        for (std::size_t i = 0; i < lhs.size(); ++i) out.push_back(lhs[i] - rhs[i]);
        return out;
    }
};

/// The Lyndon words that must be checked for order p.
inline std::vector<Word> condition_words(const GradedAlphabet& alphabet, int p, bool self_adjoint) {
    return self_adjoint ? lyndon_words_of_odd_grade_up_to(alphabet, p) : lyndon_words_up_to_grade(alphabet, p);
}

template <ScalarRing R>
OrderConditionSystem<R> order_conditions(const Expr<R>& S, const GradedAlphabet& alphabet, int p, bool self_adjoint,
                                         const std::function<R(const Word&)>& rhs, std::string rhs_source) {
    if (self_adjoint && !is_self_adjoint(S, alphabet, p))
        throw SymmetryViolationError("scheme is not self-adjoint up to grade " + std::to_string(p));
    OrderConditionSystem<R> sys;
    sys.words = condition_words(alphabet, p, self_adjoint);
    sys.order = p;
    sys.self_adjoint = self_adjoint;
    sys.rhs_source = std::move(rhs_source);
    for (const auto& w : sys.words) {
        sys.lhs.push_back(wcoeff(w, S));
        sys.rhs.push_back(rhs(w));
    }
    return sys;
}

/// Conditions coeff(w, S) = coeff(w, E) with both sides computed by wcoeff.
template <ScalarRing R>
OrderConditionSystem<R> order_conditions(const Expr<R>& S, const Expr<R>& E, const GradedAlphabet& alphabet, int p,
                                         bool self_adjoint) {
    if (self_adjoint && !is_self_adjoint(E, alphabet, p))
        throw SymmetryViolationError("target is not self-adjoint up to grade " + std::to_string(p));
    return order_conditions<R>(
        S, alphabet, p, self_adjoint, [&](const Word& w) { return wcoeff(w, E); }, "wcoeff");
}

/// T_q with entries coeff(w, b) for Lyndon words w (rows) and their
/// bracketings b (columns), both in lexicographic order.
struct TransitionMatrix {
    std::vector<Word> words;
    std::vector<BasisElement> basis;
    Matrix<Rational> T;
};

inline TransitionMatrix transition_matrix(const GradedAlphabet& alphabet, int q) {
    TransitionMatrix tm;
    tm.words = lyndon_words_of_grade(alphabet, q);
    for (const auto& w : tm.words) tm.basis.push_back(lyndon_bracketing(w));
    tm.T.assign(tm.words.size(), std::vector<Rational>(tm.words.size()));
    for (std::size_t j = 0; j < tm.basis.size(); ++j) {
        const auto s = series_of(to_expr<Rational>(tm.basis[j]), alphabet, q);
        for (std::size_t i = 0; i < tm.words.size(); ++i) tm.T[i][j] = s.coeff(tm.words[i]);
    }
    return tm;
}

/// Theta = sum_b c_b b, the lowest-grade nonvanishing Lie part of X.
struct LeadingErrorTerm {
    int grade = 0;
    std::vector<Word> words;
    std::vector<Rational> word_coefficients;  // c_w
    std::vector<BasisElement> basis;
    std::vector<Rational> coefficients;  // c_b
    Matrix<Rational> T;
};

/// Returns nullopt when every Lyndon coefficient through q_max vanishes.
inline std::optional<LeadingErrorTerm> leading_error_term(const Expr<Rational>& X, const GradedAlphabet& alphabet,
                                                          int q_max) {
    for (int q = 1; q <= q_max; ++q) {
        const auto words = lyndon_words_of_grade(alphabet, q);
        std::vector<Rational> cw;
        bool nonzero = false;
        for (const auto& w : words) {
            cw.push_back(wcoeff(w, X));
            nonzero = nonzero || !cw.back().is_zero();
        }
        if (!nonzero) continue;
        TransitionMatrix tm = transition_matrix(alphabet, q);
        LeadingErrorTerm t;
        t.grade = q;
        t.words = tm.words;
        t.word_coefficients = cw;
        t.basis = tm.basis;
        t.coefficients = solve_exact(tm.T, cw);
        t.T = std::move(tm.T);
        return t;
    }
    return std::nullopt;
}

/// Theta as an expression: sum_b c_b b.
inline Expr<Rational> leading_error_expression(const LeadingErrorTerm& t) {
    std::vector<Expr<Rational>> terms;
    for (std::size_t i = 0; i < t.basis.size(); ++i)
        if (!t.coefficients[i].is_zero())
            terms.push_back(Expr<Rational>::scaled(t.coefficients[i], to_expr<Rational>(t.basis[i])));
    return Expr<Rational>::sum(std::move(terms));
}

/// max_i |coeff(words[i], S) - rhs[i]| evaluated at `digits` digits.
inline MpReal residual_of_scheme(const Expr<MPComplex>& S, const std::vector<Word>& words,
                                 const std::vector<MPComplex>& rhs, int digits) {
    if (words.size() != rhs.size()) throw ShapeError("residual: words and rhs differ in length");
    DigitsGuard guard(digits);
    MpReal worst(Precision{digits});
    for (std::size_t i = 0; i < words.size(); ++i) {
        MpReal r = abs(wcoeff(words[i], S) - rhs[i]);
        if (r > worst) worst = r;
    }
    return worst;
}

/// Exact variant: every condition must hold identically.
inline Rational residual_of_scheme(const Expr<Rational>& S, const std::vector<Word>& words,
                                   const std::vector<Rational>& rhs) {
    if (words.size() != rhs.size()) throw ShapeError("residual: words and rhs differ in length");
    Rational worst(0);
    for (std::size_t i = 0; i < words.size(); ++i) {
        Rational r = abs(wcoeff(words[i], S) - rhs[i]);
        if (r > worst) worst = r;
    }
    return worst;
}

}  // namespace expocon
