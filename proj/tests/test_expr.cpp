#include <random>

#include <gtest/gtest.h>

#include "expocon/expocon.hpp"

using namespace expocon;

namespace {

const GradedAlphabet AB = GradedAlphabet::uniform({"A", "B"});
const GradedAlphabet ABC = GradedAlphabet::uniform({"A", "B", "C"});

using E = Expr<Rational>;

E random_expr(std::mt19937_64& rng, int depth, bool allow_exp = true) {
    std::uniform_int_distribution<int> kind(0, depth > 0 ? 6 : 0), sym(0, 2), num(-5, 5), den(1, 4);
    switch (kind(rng)) {
        case 0: return E::symbol(static_cast<std::size_t>(sym(rng)));
        case 1: return E::sum({random_expr(rng, depth - 1), random_expr(rng, depth - 1)});
        case 2: {
            int n = num(rng);
            return E::scaled(Rational(n == 0 ? 1 : n, den(rng)), random_expr(rng, depth - 1));
        }
        case 3: return E::product({random_expr(rng, depth - 1), random_expr(rng, depth - 1)});
        case 4: return E::power(random_expr(rng, depth - 1), 2);
        case 5: return E::commutator(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
        default:
            if (!allow_exp) return E::symbol(0);
            // Exponent built from symbols and commutators only, so the constant term is zero.
            return E::exponential(E::sum({E::symbol(static_cast<std::size_t>(sym(rng))),
                                          E::commutator(random_expr(rng, depth - 1, false), E::symbol(1))}));
    }
}

void expect_same_series(const E& x, const E& y, const GradedAlphabet& a, int n) {
    const auto sx = series_of(x, a, n), sy = series_of(y, a, n);
    for (const auto& w : words_up_to_grade(a, n)) EXPECT_EQ(sx.coeff(w), sy.coeff(w)) << word_to_string(w, a);
}

}  // namespace

TEST(Parse, StrangExpression) {
    const auto e = parse_rational_expression("exp(1/2*B)*exp(A)*exp(1/2*B) - exp(A+B)", AB);
    EXPECT_EQ(to_string(e, AB), "exp(1/2*B)*exp(A)*exp(1/2*B) - exp(A + B)");
    const auto* s = e.as<node::Sum<Rational>>();
    ASSERT_NE(s, nullptr);
    EXPECT_EQ(s->terms.size(), 2u);
}

TEST(Parse, SplittingAnsatz) {
    const auto e = parse_expression("exp(b*B)*exp(a*A)*exp(c*B + d*[B,[A,B]])*exp(a*A)*exp(b*B) - exp(A+B)", AB,
                                    {"a", "b", "c", "d"});
    const auto* s = e.as<node::Sum<PolyRational>>();
    ASSERT_NE(s, nullptr);
    const auto* p = s->terms[0].as<node::Product<PolyRational>>();
    ASSERT_NE(p, nullptr);
    EXPECT_EQ(p->factors.size(), 5u);
}

TEST(Parse, SingleSymbol) {
    const auto e = parse_rational_expression("A", AB);
    const auto* s = e.as<node::Symbol>();
    ASSERT_NE(s, nullptr);
    EXPECT_EQ(s->index, 0u);
}

TEST(Parse, ErrorsCarryPositions) {
    try {
        parse_rational_expression("exp(A)*exp(B", AB);
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), 12u);
    }
    try {
        parse_rational_expression("A*C", AB);
        FAIL() << "expected an unknown identifier";
    } catch (const UnknownIdentifierError& e) {
        EXPECT_EQ(e.name(), "C");
        EXPECT_EQ(e.position(), 2u);
    }
    EXPECT_THROW(parse_rational_expression("A B", AB), ParseError);
    EXPECT_THROW(parse_rational_expression("A^(-1)", AB), ParseError);
    EXPECT_THROW(parse_rational_expression("0.5*A", AB), ParseError);
}

TEST(Parse, ProductOrderIsPreserved) {
    const auto ab = parse_rational_expression("A*B", AB), ba = parse_rational_expression("B*A", AB);
    EXPECT_NE(to_string(ab, AB), to_string(ba, AB));
    const auto sab = series_of(ab, AB, 2), sba = series_of(ba, AB, 2);
    EXPECT_EQ(sab.coeff(parse_word("AB", AB)), Rational(1));
    EXPECT_EQ(sba.coeff(parse_word("AB", AB)), Rational(0));
}

TEST(Parse, Precedence) {
    // Unary minus binds tighter than +, products associate left.
    expect_same_series(parse_rational_expression("-A + B", AB),
                       E::sum({E::scaled(Rational(-1), E::symbol(0)), E::symbol(1)}), AB, 3);
    expect_same_series(parse_rational_expression("A*B*A", AB),
                       E::product({E::product({E::symbol(0), E::symbol(1)}), E::symbol(0)}), AB, 3);
    expect_same_series(parse_rational_expression("2*A^2", AB), E::scaled(Rational(2), E::power(E::symbol(0), 2)), AB, 3);
}

TEST(Parse, RoundTripHandCorpus) {
    const std::vector<std::string> corpus{
        "A", "A + B", "A - B", "2*A", "-A", "1/3*A*B", "A*B*A", "[A,B]", "[A,[A,B]]", "[[A,B],B]",
        "exp(A)", "exp(A + B)", "exp(1/2*B)*exp(A)*exp(1/2*B)", "exp(1/2*B)*exp(A)*exp(1/2*B) - exp(A + B)",
        "(A + B)^3", "A^0", "exp(2/3*B + 1/72*[B,[A,B]])", "-1/6*[A,B] + A", "(A - B)*(A + B)", "1",
        "3", "-2/5", "A*(B + C)", "[A + B,C]", "exp(-A)*exp(A)", "C^2*A", "[A,B]^2", "exp([A,B])",
        "(2*A)^2", "A - 1/2*B - C"};
    for (const auto& text : corpus) {
        const auto e = parse_rational_expression(text, ABC);
        const std::string printed = to_string(e, ABC);
        const auto back = parse_rational_expression(printed, ABC);
        EXPECT_EQ(to_string(back, ABC), printed) << text;
        expect_same_series(e, back, ABC, 3);
    }
}

TEST(Parse, RoundTripRandomCorpus) {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 60; ++i) {
        const E e = random_expr(rng, 3);
        const std::string printed = to_string(e, ABC);
        const auto back = parse_rational_expression(printed, ABC);
        EXPECT_EQ(to_string(back, ABC), printed);
        expect_same_series(e, back, ABC, 3);
    }
}

TEST(Parse, AstJson) {
    const auto e = parse_rational_expression("exp(1/2*B)*[A,B]", AB);
    const json j = expr_to_json(e, AB);
    EXPECT_EQ(j["node"], "product");
    EXPECT_EQ(j["factors"][0]["node"], "exp");
    EXPECT_EQ(j["factors"][0]["operand"]["scalar"], "1/2");
    EXPECT_EQ(j["factors"][1]["node"], "commutator");
}

TEST(Ansatz, EightExponentials) {
    const auto a = build_self_adjoint_ansatz(8, GradedAlphabet::magnus(4));
    EXPECT_EQ(a.parameters.size(), 16u);
    EXPECT_EQ(a.parameters.front(), "f11");
    EXPECT_EQ(a.parameters.back(), "f44");
    EXPECT_EQ(exponential_factors(a.expression).size(), 8u);
    // The leftmost factor is exponent 8, the mirror of exponent 1.
    EXPECT_EQ(to_string(exponential_factors(a.expression).front(), a.generators),
              "f11*A1 - f12*A2 + f13*A3 - f14*A4");
    EXPECT_EQ(to_string(exponential_factors(a.expression).back(), a.generators), "f11*A1 + f12*A2 + f13*A3 + f14*A4");
}

TEST(Ansatz, SingleFactor) {
    const auto a = build_self_adjoint_ansatz(1, GradedAlphabet::magnus(1));
    EXPECT_EQ(to_string(a.expression, a.generators), "exp(f11*A1)");
}

TEST(Ansatz, TwoFactorsByHand) {
    const auto a = build_self_adjoint_ansatz(2, GradedAlphabet::magnus(2));
    EXPECT_EQ(to_string(a.expression, a.generators), "exp(f11*A1 - f12*A2)*exp(f11*A1 + f12*A2)");
    EXPECT_EQ(a.parameters.size(), 2u);
}

TEST(Ansatz, SelfAdjointForAllSizes) {
    for (int J = 1; J <= 8; ++J)
        for (int K = 1; K <= 4; ++K) {
            const auto a = build_self_adjoint_ansatz(J, GradedAlphabet::magnus(K));
            EXPECT_TRUE(is_self_adjoint(a.expression, a.generators, 8)) << J << "x" << K;
            if (J % 2 == 0) EXPECT_EQ(a.parameters.size(), static_cast<std::size_t>(J / 2 * K));
        }
}

TEST(SelfAdjoint, Examples) {
    EXPECT_TRUE(is_self_adjoint(parse_rational_expression("exp(1/2*B)*exp(A)*exp(1/2*B)", AB), AB, 6));
    const auto M2 = GradedAlphabet::magnus(2);
    EXPECT_FALSE(is_self_adjoint(parse_rational_expression("exp(A1 + A2)", M2), M2, 4));
    EXPECT_TRUE(is_self_adjoint(parse_rational_expression("exp(A1)", M2), M2, 4));
    EXPECT_THROW(is_self_adjoint(parse_rational_expression("A*exp(B)", AB), AB, 3), ShapeError);
}

TEST(Substitute, SplittingSolutionGivesEquationTwo) {
    const auto e = parse_expression(splitting_ansatz_text, AB, {"a", "b", "c", "d"});
    const std::map<std::string, Rational> sol{
        {"a", Rational(1, 2)}, {"b", Rational(1, 6)}, {"c", Rational(2, 3)}, {"d", Rational(1, 72)}};
    const auto s = to_rational_expr(substitute_parameters(e, sol));
    EXPECT_EQ(to_string(s, AB), "exp(1/6*B)*exp(1/2*A)*exp(2/3*B + 1/72*[B,[A,B]])*exp(1/2*A)*exp(1/6*B)");
}

TEST(Substitute, IdentitySubstitution) {
    const auto e = parse_expression(splitting_ansatz_text, AB, {"a", "b", "c", "d"});
    EXPECT_EQ(to_string(substitute_parameters(e, std::map<std::string, Rational>{}), AB), to_string(e, AB));
}

TEST(Substitute, PrintedMagnusParameters) {
    const auto prob = Magnus8Problem::make();
    const auto S = substitute_parameters(prob.ansatz.expression, reference_f_block(60));
    EXPECT_EQ(exponential_factors(S).size(), 8u);
    EXPECT_TRUE(is_self_adjoint(S, prob.words.alphabet, 8));
}

TEST(Substitute, MissingParameterIsUnbound) {
    const auto e = parse_expression("exp(a*A)", AB, {"a"});
    EXPECT_THROW(substitute_parameters(e, std::map<std::string, MPComplex>{}), UnboundVariableError);
}
