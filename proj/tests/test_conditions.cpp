#include <gtest/gtest.h>

#include "expocon/expocon.hpp"

using namespace expocon;

namespace {

const GradedAlphabet AB = GradedAlphabet::uniform({"A", "B"});
const std::vector<std::string> abcd{"a", "b", "c", "d"};

Expr<Rational> strang_product() { return parse_rational_expression("exp(1/2*B)*exp(A)*exp(1/2*B)", AB); }
Expr<Rational> exact_flow() { return parse_rational_expression("exp(A+B)", AB); }

Expr<Rational> splitting_scheme() {
    return parse_rational_expression("exp(1/6*B)*exp(1/2*A)*exp(2/3*B + 1/72*[B,[A,B]])*exp(1/2*A)*exp(1/6*B)", AB);
}

void expect_slice_matches(const Expr<Rational>& X, const LeadingErrorTerm& t, const GradedAlphabet& a) {
    const auto lhs = series_of(X, a, t.grade).grade_slice(t.grade);
    const auto rhs = series_of(leading_error_expression(t), a, t.grade).grade_slice(t.grade);
    for (const auto& w : words_up_to_grade(a, t.grade))
        EXPECT_EQ(lhs.coeff(w), rhs.coeff(w)) << word_to_string(w, a);
}

}  // namespace

TEST(OrderConditions, SplittingSystem) {
    const auto S = parse_expression(splitting_ansatz_text, AB, abcd);
    const auto E = to_poly_expr(exact_flow());
    const auto sys = order_conditions(S, E, AB, 4, true);
    ASSERT_EQ(sys.size(), 4u);
    EXPECT_EQ(sys.rhs_source, "wcoeff");
    const auto eqs = sys.equations();
    EXPECT_EQ(eqs[0], parse_poly("-1+2*a"));
    EXPECT_EQ(eqs[1], parse_poly("-1+2*b+c"));
    EXPECT_EQ(eqs[2], parse_poly("-1/6+2*a^2*b+1/2*a^2*c"));
    EXPECT_EQ(eqs[3], parse_poly("-1/6+1/2*a*c^2+a*c*b+a*b^2-d"));
}

TEST(OrderConditions, StrangSecondOrder) {
    const auto sys = order_conditions(strang_product(), exact_flow(), AB, 2, true);
    ASSERT_EQ(sys.size(), 2u);
    for (const auto& e : sys.equations()) EXPECT_TRUE(e.is_zero());
}

TEST(OrderConditions, FirstOrderSingleParameter) {
    const auto A = GradedAlphabet::uniform({"A"});
    const auto S = parse_expression("exp(a*A)", A, {"a"});
    const auto sys = order_conditions(S, to_poly_expr(parse_rational_expression("exp(A)", A)), A, 1, false);
    ASSERT_EQ(sys.size(), 1u);
    EXPECT_EQ(sys.equations()[0], parse_poly("a - 1"));
}

TEST(OrderConditions, SymmetryIsEnforced) {
    const auto S = parse_expression("exp(a*A)*exp(b*B)", AB, {"a", "b"});
    EXPECT_THROW(order_conditions(S, to_poly_expr(exact_flow()), AB, 3, true), SymmetryViolationError);
}

TEST(OrderConditions, NonSymmetricWordList) {
    EXPECT_EQ(condition_words(AB, 4, false).size(), 8u);
    EXPECT_EQ(condition_words(AB, 4, true).size(), 4u);
}

TEST(LeadingError, Strang) {
    const auto X = strang_product() - exact_flow();
    const auto t = leading_error_term(X, AB, 3);
    ASSERT_TRUE(t.has_value());
    EXPECT_EQ(t->grade, 3);
    ASSERT_EQ(t->basis.size(), 2u);
    EXPECT_EQ(t->basis[0].to_string(AB), "[A,[A,B]]");
    EXPECT_EQ(t->basis[1].to_string(AB), "[[A,B],B]");
    EXPECT_EQ(t->coefficients, (std::vector<Rational>{Rational(1, 12), Rational(-1, 24)}));
    expect_slice_matches(X, *t, AB);
}

TEST(LeadingError, SplittingSchemeGradeFive) {
    const auto X = splitting_scheme() - exact_flow();
    const auto t = leading_error_term(X, AB, 5);
    ASSERT_TRUE(t.has_value());
    EXPECT_EQ(t->grade, 5);
    const int T5[6][6] = {{1, 0, 0, 0, 0, 0},  {0, 1, 0, 0, 0, 0}, {0, -2, 1, 0, 0, 0},
                          {0, 0, 0, 1, 0, 0},  {0, 0, 0, -3, 1, 0}, {0, 0, 0, 0, 0, 1}};
    ASSERT_EQ(t->T.size(), 6u);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) EXPECT_EQ(t->T[i][j], Rational(T5[i][j])) << i << "," << j;
    const std::vector<Rational> cb{Rational(1, 2880), Rational(-7, 8640), Rational(1, 2160),
                                   Rational(7, 12960), Rational(1, 4320), Rational(-41, 155520)};
    EXPECT_EQ(t->coefficients, cb);
    expect_slice_matches(X, *t, AB);
}

TEST(LeadingError, NoErrorFound) {
    const auto X = parse_rational_expression("exp(A) - exp(A)", AB);
    EXPECT_FALSE(leading_error_term(X, AB, 6).has_value());
}

TEST(Residual, PrintedMagnusParameters) {
    const int D = 60;
    DigitsGuard g(D);
    const auto prob = Magnus8Problem::make();
    const auto S = substitute_parameters(prob.ansatz.expression, reference_f_block(D));
    const auto words = prob.words.all();
    ASSERT_EQ(words.size(), 22u);
    const MpReal r = residual_of_scheme(S, words, prob.all_rhs(D), D);
    EXPECT_LE(r.to_double(), 1e-45);
}

TEST(Residual, ExactSplittingScheme) {
    const auto words = lyndon_words_of_odd_grade_up_to(AB, 4);
    std::vector<Rational> rhs;
    for (const auto& w : words) rhs.push_back(wcoeff(w, exact_flow()));
    EXPECT_EQ(residual_of_scheme(splitting_scheme(), words, rhs), Rational(0));
}

TEST(Residual, StrangFirstLetters) {
    const std::vector<Word> words{parse_word("A", AB), parse_word("B", AB)};
    EXPECT_EQ(residual_of_scheme(strang_product(), words, {Rational(1), Rational(1)}), Rational(0));
    std::vector<MPComplex> rhs{MPComplex(Rational(1), 30), MPComplex(Rational(1), 30)};
    const auto numeric = map_scalars<MPComplex>(strang_product(), [](const Rational& q) { return MPComplex(q, 30); });
    EXPECT_TRUE(residual_of_scheme(numeric, words, rhs, 30).is_zero());
}

TEST(Theorems, AllWordsVanishForSolvedScheme) {
    const auto s = series_of(splitting_scheme() - exact_flow(), AB, 4);
    for (const auto& w : words_up_to_grade(AB, 4)) EXPECT_TRUE(s.coeff(w).is_zero()) << word_to_string(w, AB);
}

TEST(Theorems, EvenGradeLyndonCoefficientsVanish) {
    const auto strang = strang_product() - exact_flow();
    for (const auto& w : lyndon_words_of_grade(AB, 2)) EXPECT_TRUE(wcoeff(w, strang).is_zero());
    const auto split = splitting_scheme() - exact_flow();
    for (int q : {2, 4})
        for (const auto& w : lyndon_words_of_grade(AB, q)) EXPECT_TRUE(wcoeff(w, split).is_zero());
}

TEST(TransitionMatrix, UnitLowerTriangular) {
    auto check = [](const GradedAlphabet& a, int qmax) {
        for (int q = 1; q <= qmax; ++q) {
            const auto tm = transition_matrix(a, q);
            for (std::size_t i = 0; i < tm.T.size(); ++i) {
                EXPECT_EQ(tm.T[i][i], Rational(1));
                for (std::size_t j = i + 1; j < tm.T.size(); ++j) EXPECT_TRUE(tm.T[i][j].is_zero());
            }
        }
    };
    check(AB, 6);
    check(GradedAlphabet::magnus(4), 8);
}
