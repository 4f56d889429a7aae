#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "expocon/error.hpp"
#include "expocon/expr.hpp"
#include "expocon/linalg.hpp"
#include "expocon/mpcomplex.hpp"
#include "expocon/rational.hpp"
#include "expocon/words.hpp"

namespace expocon {

namespace detail {

inline Rational magnus_alpha(int d, int k) {
    Rational a = binomial(d - 1, k - 1) * binomial(d + k - 2, k - 1);
    return (d + k) % 2 == 0 ? a : -a;
}

}  // namespace detail

/// Closed-form coefficient of A_{d_1} ... A_{d_l} in e^Omega: a sum over
/// 1 <= k_j <= d_j of prod_j alpha(d_j, k_j) / (k_j + ... + k_l).
inline Rational magnus_word_coefficient(const std::vector<int>& degrees) {
    for (int d : degrees)
        if (d < 1) throw DomainError("Magnus generator degree must be positive, got " + std::to_string(d));
    const std::size_t l = degrees.size();
    if (l == 0) return Rational(1);
    std::vector<int> k(l, 1);
    Rational total(0);
    while (true) {
        Rational term(1);
        long tail = 0;
        for (std::size_t j = l; j-- > 0;) {
            tail += k[j];
            term *= detail::magnus_alpha(degrees[j], k[j]) / Rational(tail);
            if (term.is_zero()) break;
        }
        total += term;
        std::size_t pos = 0;
        while (pos < l && k[pos] == degrees[pos]) k[pos++] = 1;
        if (pos == l) break;
        ++k[pos];
    }
    return total;
}

/// Degrees are read off the letter grades (grade(A_k) = k).
inline Rational magnus_word_coefficient(const Word& w, const GradedAlphabet& alphabet) {
    std::vector<int> d;
    for (std::size_t letter : w) d.push_back(alphabet.grade(letter));
    return magnus_word_coefficient(d);
}

/// Omega through grade 5 over generators A1, A2, A3 (symbol indices 0, 1, 2).
inline Expr<Rational> magnus_series_fixture() {
    using E = Expr<Rational>;
    const E A1 = E::symbol(0), A2 = E::symbol(1), A3 = E::symbol(2);
    auto c = [](const E& x, const E& y) { return E::commutator(x, y); };
    return E::sum({
        A1,
        E::scaled(Rational(-1, 6), c(A1, A2)),
        E::scaled(Rational(1, 60), c(A1, c(A1, A3))),
        E::scaled(Rational(-1, 60), c(A2, c(A1, A2))),
        E::scaled(Rational(1, 360), c(A1, c(A1, c(A1, A2)))),
        E::scaled(Rational(-1, 30), c(A2, A3)),
    });
}

/// Integer coefficients of the shifted Legendre polynomial P_k on [0, 1]:
/// P_k(x) = (-1)^k sum_j C(k,j) C(k+j,j) (-1)^j x^j.
inline std::vector<Rational> legendre_coefficients(int k) {
    if (k < 0) throw DomainError("Legendre index must be nonnegative");
    std::vector<Rational> c;
    for (int j = 0; j <= k; ++j) {
        Rational v = binomial(k, j) * binomial(k + j, j);
        c.push_back((k + j) % 2 == 0 ? v : -v);
    }
    return c;
}

inline Rational legendre_poly_eval(int k, const Rational& x) {
    const auto c = legendre_coefficients(k);
    Rational r(0);
    for (std::size_t j = c.size(); j-- > 0;) r = r * x + c[j];
    return r;
}

inline MPComplex legendre_poly_eval(int k, const MPComplex& x) {
    const auto c = legendre_coefficients(k);
    MPComplex r(Precision{x.digits()});
    for (std::size_t j = c.size(); j-- > 0;) r = r * x + MPComplex(c[j], x.digits());
    return r;
}

/// Four-point Gauss rule on [0, 1] (exact for polynomials of degree <= 7).
struct QuadratureRule {
    std::vector<std::string> node_text;
    std::vector<std::string> weight_text;
    std::vector<MPComplex> nodes;
    std::vector<MPComplex> weights;
    int digits = 0;

    std::size_t size() const noexcept { return nodes.size(); }

    static QuadratureRule gauss4(int digits) {
        QuadratureRule q;
        q.digits = digits;
        q.node_text = {"1/2 - sqrt((15 + 2*sqrt(30))/140)", "1/2 - sqrt((15 - 2*sqrt(30))/140)",
                       "1/2 + sqrt((15 - 2*sqrt(30))/140)", "1/2 + sqrt((15 + 2*sqrt(30))/140)"};
        q.weight_text = {"1/4 - sqrt(30)/72", "1/4 + sqrt(30)/72", "1/4 + sqrt(30)/72", "1/4 - sqrt(30)/72"};
        auto R = [digits](long p, long d = 1) { return MpReal(Rational(p, d), digits); };
        const MpReal s30 = sqrt(R(30));
        const MpReal outer = sqrt((R(15) + R(2) * s30) / R(140));
        const MpReal inner = sqrt((R(15) - R(2) * s30) / R(140));
        const MpReal half = R(1, 2), quarter = R(1, 4), dw = s30 / R(72);
        for (const MpReal& x : {half - outer, half - inner, half + inner, half + outer}) q.nodes.emplace_back(x);
        for (const MpReal& w : {quarter - dw, quarter + dw, quarter + dw, quarter - dw}) q.weights.emplace_back(w);
        return q;
    }
};

/// f[j-1][k-1]: coefficient of A_k in exponent j (exponent 1 acts first).
struct SchemeParameters {
    Matrix<MPComplex> f;
    std::size_t J() const noexcept { return f.size(); }
    std::size_t K() const noexcept { return f.empty() ? 0 : f[0].size(); }
};

/// a[j-1][l-1]: weight of the sample A(t + tau x_l) in exponent j.
struct QuadratureScheme {
    Matrix<MPComplex> a;
    QuadratureRule rule;
};

/// C[k-1][l-1] = (2k-1) w_l P_{k-1}(x_l), so that a_{j,l} = sum_k f_{j,k} C[k-1][l-1].
inline Matrix<MPComplex> quadrature_matrix(const QuadratureRule& rule, std::size_t K) {
    Matrix<MPComplex> C(K);
    for (std::size_t k = 1; k <= K; ++k)
        for (std::size_t l = 0; l < rule.size(); ++l)
            C[k - 1].push_back(MPComplex(Rational(static_cast<long>(2 * k - 1)), rule.digits) * rule.weights[l] *
                               legendre_poly_eval(static_cast<int>(k) - 1, rule.nodes[l]));
    return C;
}

inline QuadratureScheme quadrature_map(const SchemeParameters& p, const QuadratureRule& rule) {
    if (p.K() != rule.size()) throw ShapeError("quadrature map needs K equal to the number of nodes");
    const auto C = quadrature_matrix(rule, p.K());
    QuadratureScheme s;
    s.rule = rule;
    for (const auto& row : p.f) {
        std::vector<MPComplex> a;
        for (std::size_t l = 0; l < rule.size(); ++l) {
            MPComplex acc(Precision{rule.digits});
            for (std::size_t k = 0; k < row.size(); ++k) acc = acc + row[k] * C[k][l];
            a.push_back(acc);
        }
        s.a.push_back(std::move(a));
    }
    return s;
}

/// Solves C^T f_j = a_j row by row.
inline SchemeParameters inverse_quadrature_map(const QuadratureScheme& s) {
    const std::size_t K = s.rule.size();
    const auto C = quadrature_matrix(s.rule, K);
    Matrix<MPComplex> Ct(K, std::vector<MPComplex>(K));
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t l = 0; l < K; ++l) Ct[l][k] = C[k][l];
    SchemeParameters p;
    for (const auto& row : s.a) {
        if (row.size() != K) throw ShapeError("quadrature scheme row has wrong length");
        p.f.push_back(solve_numeric(Ct, row));
    }
    return p;
}

/// Row-wise Re f_{j,1} > 0.
inline std::vector<bool> positivity_check(const SchemeParameters& p) {
    std::vector<bool> ok;
    for (const auto& row : p.f) ok.push_back(!row.empty() && row[0].real().sign() > 0);
    return ok;
}

inline bool positivity_holds(const SchemeParameters& p) {
    const auto rows = positivity_check(p);
    for (bool b : rows)
        if (!b) return false;
    return !rows.empty();
}

/// exp(sum_k f_{J,k} A_k) ... exp(sum_k f_{1,k} A_k).
inline Expr<MPComplex> scheme_expression(const SchemeParameters& p) {
    using E = Expr<MPComplex>;
    std::vector<E> factors;
    for (std::size_t j = p.J(); j-- > 0;) {
        std::vector<E> terms;
        for (std::size_t k = 0; k < p.K(); ++k)
            if (!p.f[j][k].is_zero()) terms.push_back(E::scaled(p.f[j][k], E::symbol(k)));
        factors.push_back(E::exponential(E::sum(std::move(terms))));
    }
    return E::product(std::move(factors));
}

/// The 22 Lyndon words of odd grade <= 8 over {A1..A4}, split by the largest
/// generator they contain.
struct Magnus8Words {
    GradedAlphabet alphabet;
    std::vector<Word> w12, w3, w4;
    std::vector<Word> all() const {
        std::vector<Word> out = w12;
        out.insert(out.end(), w3.begin(), w3.end());
        out.insert(out.end(), w4.begin(), w4.end());
        return out;
    }
};

inline Magnus8Words magnus8_words() {
    Magnus8Words m;
    m.alphabet = GradedAlphabet::magnus(4);
    for (const auto& w : lyndon_words_of_odd_grade_up_to(m.alphabet, 8)) {
        std::size_t top = 0;
        for (std::size_t letter : w) top = std::max(top, letter);
        (top <= 1 ? m.w12 : top == 2 ? m.w3 : m.w4).push_back(w);
    }
    return m;
}

inline std::vector<Rational> magnus_rhs(const std::vector<Word>& words, const GradedAlphabet& alphabet) {
    std::vector<Rational> out;
    for (const auto& w : words) out.push_back(magnus_word_coefficient(w, alphabet));
    return out;
}

}  // namespace expocon
