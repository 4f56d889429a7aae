#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "expocon/expocon.hpp"

using namespace expocon;

namespace {

const GradedAlphabet AB = GradedAlphabet::uniform({"A", "B"});
const GradedAlphabet M4 = GradedAlphabet::magnus(4);

std::vector<std::string> names(const std::vector<Word>& ws, const GradedAlphabet& a) {
    std::vector<std::string> out;
    for (const auto& w : ws) out.push_back(word_to_string(w, a));
    return out;
}

// Brute force: enumerate all words of the grade and keep those strictly
// smaller than each proper rotation.
std::vector<Word> brute_force_lyndon(const GradedAlphabet& a, int q) {
    std::vector<Word> out;
    for (const auto& w : words_up_to_grade(a, q)) {
        if (w.empty() || grade_of(w, a) != q) continue;
        bool ok = true;
        for (std::size_t r = 1; r < w.length() && ok; ++r) {
            Word rot = w.subword(r, w.length() - r).concat(w.subword(0, r));
            ok = w < rot;
        }
        if (ok) out.push_back(w);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST(Grade, Examples) {
    EXPECT_EQ(grade_of(parse_word("AAB", AB), AB), 3);
    EXPECT_EQ(grade_of(parse_word("A1 A2", M4), M4), 3);
    EXPECT_EQ(grade_of(Word(), AB), 0);
}

TEST(Alphabet, ParseAndValidate) {
    const auto a = GradedAlphabet::parse("A:1,B:1");
    EXPECT_EQ(a.size(), 2u);
    EXPECT_EQ(a.grade(1), 1);
    EXPECT_THROW(GradedAlphabet({"A"}, {0}), DomainError);
    EXPECT_THROW(GradedAlphabet({"A", "A"}, {1, 1}), DomainError);
    EXPECT_THROW(validate_word(Word{5}, a), InvalidWordError);
}

TEST(Words, PrintingAndParsing) {
    EXPECT_EQ(word_to_string(parse_word("A A B", AB), AB), "AAB");
    EXPECT_EQ(word_to_string(parse_word("A1 A2", M4), M4), "A1 A2");
    EXPECT_EQ(word_to_string(Word(), AB), "Id");
    EXPECT_EQ(parse_word("Id", AB), Word());
    EXPECT_THROW(parse_word("AC", AB), InvalidWordError);
}

TEST(Lyndon, WordsOfGradeExamples) {
    EXPECT_EQ(names(lyndon_words_of_grade(AB, 3), AB), (std::vector<std::string>{"AAB", "ABB"}));
    EXPECT_EQ(names(lyndon_words_of_grade(M4, 4), M4), (std::vector<std::string>{"A1 A1 A2", "A1 A3", "A4"}));
    EXPECT_EQ(names(lyndon_words_of_grade(M4, 1), M4), (std::vector<std::string>{"A1"}));
    EXPECT_EQ(names(lyndon_words_of_grade(AB, 1), AB), (std::vector<std::string>{"A", "B"}));
}

TEST(Lyndon, OddGradeLists) {
    EXPECT_EQ(names(lyndon_words_of_odd_grade_up_to(AB, 4), AB), (std::vector<std::string>{"A", "B", "AAB", "ABB"}));
    EXPECT_EQ(names(lyndon_words_of_odd_grade_up_to(AB, 1), AB), (std::vector<std::string>{"A", "B"}));
    EXPECT_EQ(lyndon_words_of_odd_grade_up_to(M4, 8).size(), 22u);
}

TEST(Lyndon, CountsByGrade) {
    const std::vector<std::size_t> expected{2, 1, 2, 3, 6};
    for (int q = 1; q <= 5; ++q) EXPECT_EQ(lyndon_words_of_grade(AB, q).size(), expected[q - 1]) << "grade " << q;
}

TEST(Lyndon, MagnusPartition) {
    const auto m = magnus8_words();
    EXPECT_EQ(m.w12.size(), 8u);
    EXPECT_EQ(m.w3.size(), 9u);
    EXPECT_EQ(m.w4.size(), 5u);
}

TEST(Lyndon, ExhaustiveRotationCheck) {
    for (const auto* a : {&AB, &M4}) {
        for (int q = 1; q <= 8; ++q) {
            const auto got = lyndon_words_of_grade(*a, q);
            EXPECT_TRUE(std::is_sorted(got.begin(), got.end()));
            EXPECT_EQ(got, brute_force_lyndon(*a, q)) << "grade " << q;
            for (const auto& w : got) EXPECT_TRUE(is_lyndon(w));
        }
    }
}

TEST(Lyndon, AllWordsUpToGrade) {
    const auto all = lyndon_words_up_to_grade(AB, 5);
    EXPECT_EQ(all.size(), 14u);
}

TEST(Bracketing, Examples) {
    EXPECT_EQ(lyndon_bracketing(parse_word("AAB", AB)).to_string(AB), "[A,[A,B]]");
    EXPECT_EQ(lyndon_bracketing(parse_word("A1 A1 A2", M4)).to_string(M4), "[A1,[A1,A2]]");
    EXPECT_EQ(lyndon_bracketing(parse_word("B", AB)).to_string(AB), "B");
    EXPECT_EQ(lyndon_bracketing(parse_word("ABB", AB)).to_string(AB), "[[A,B],B]");
    EXPECT_THROW(lyndon_bracketing(parse_word("BA", AB)), InvalidWordError);
}

TEST(Bracketing, FoliageAndUnitCoefficient) {
    for (const auto* a : {&AB, &M4}) {
        for (int q = 1; q <= 7; ++q) {
            for (const auto& w : lyndon_words_of_grade(*a, q)) {
                const auto b = lyndon_bracketing(w);
                EXPECT_EQ(b.foliage(), w);
                const auto s = series_of(to_expr<Rational>(b), *a, q);
                EXPECT_EQ(s.coeff(w), Rational(1)) << word_to_string(w, *a);
                // Every other word in the expansion is lexicographically larger.
                for (const auto& [u, c] : s.coefficients())
                    if (!c.is_zero()) EXPECT_GE(u, w);
            }
        }
    }
}
