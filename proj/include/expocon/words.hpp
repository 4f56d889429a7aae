#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "expocon/error.hpp"

namespace expocon {

/// Ordered alphabet of noncommutative symbols with positive integer grades.
class GradedAlphabet {
public:
    GradedAlphabet() = default;
    GradedAlphabet(std::vector<std::string> names, std::vector<int> grades)
        : names_(std::move(names)), grades_(std::move(grades)) {
        if (names_.size() != grades_.size()) throw DomainError("alphabet names and grades differ in length");
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (grades_[i] < 1) throw DomainError("grade of '" + names_[i] + "' must be at least 1");
            if (names_[i].empty()) throw DomainError("empty symbol name");
            for (std::size_t j = 0; j < i; ++j)
                if (names_[j] == names_[i]) throw DomainError("duplicate symbol '" + names_[i] + "'");
        }
    }

    /// {A, B, ...} with all grades 1.
    static GradedAlphabet uniform(std::vector<std::string> names) {
        std::vector<int> grades(names.size(), 1);
        return GradedAlphabet(std::move(names), std::move(grades));
    }

    /// {A1, ..., AK} with grade(Ak) = k.
    static GradedAlphabet magnus(int K, const std::string& prefix = "A") {
        std::vector<std::string> names;
        std::vector<int> grades;
        for (int k = 1; k <= K; ++k) {
            names.push_back(prefix + std::to_string(k));
            grades.push_back(k);
        }
        return GradedAlphabet(std::move(names), std::move(grades));
    }

    /// Parses "A:1,B:1" (a missing ":g" means grade 1).
    static GradedAlphabet parse(std::string_view spec) {
        std::vector<std::string> names;
        std::vector<int> grades;
        std::string s(spec);
        std::size_t start = 0;
        while (start <= s.size()) {
            auto comma = s.find(',', start);
            std::string item = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            item.erase(0, item.find_first_not_of(' '));
            item.erase(item.find_last_not_of(' ') + 1);
            if (item.empty()) throw ParseError("empty alphabet entry", start);
            auto colon = item.find(':');
            if (colon == std::string::npos) {
                names.push_back(item);
                grades.push_back(1);
            } else {
                names.push_back(item.substr(0, colon));
                try {
                    grades.push_back(std::stoi(item.substr(colon + 1)));
                } catch (const std::exception&) {
                    throw ParseError("malformed grade in '" + item + "'", start + colon + 1);
                }
            }
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        return GradedAlphabet(std::move(names), std::move(grades));
    }

    std::size_t size() const noexcept { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    int grade(std::size_t i) const { return grades_.at(i); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    const std::vector<int>& grades() const noexcept { return grades_; }
    int min_grade() const { return grades_.empty() ? 1 : *std::min_element(grades_.begin(), grades_.end()); }

    std::optional<std::size_t> index_of(std::string_view name) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return i;
        return std::nullopt;
    }

    /// "A:1,B:1"
    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (i) out += ",";
            out += names_[i] + ":" + std::to_string(grades_[i]);
        }
        return out;
    }

    friend bool operator==(const GradedAlphabet&, const GradedAlphabet&) = default;

private:
    std::vector<std::string> names_;
    std::vector<int> grades_;
};

/// Finite sequence of symbol indices; the empty word is the identity Id.
class Word {
public:
    Word() = default;
    explicit Word(std::vector<std::size_t> letters) : letters_(std::move(letters)) {}
    Word(std::initializer_list<std::size_t> letters) : letters_(letters) {}

    const std::vector<std::size_t>& letters() const noexcept { return letters_; }
    std::size_t length() const noexcept { return letters_.size(); }
    bool empty() const noexcept { return letters_.empty(); }
    std::size_t operator[](std::size_t i) const { return letters_[i]; }
    auto begin() const noexcept { return letters_.begin(); }
    auto end() const noexcept { return letters_.end(); }

    Word subword(std::size_t pos, std::size_t len) const {
        return Word(std::vector<std::size_t>(letters_.begin() + static_cast<std::ptrdiff_t>(pos),
                                             letters_.begin() + static_cast<std::ptrdiff_t>(pos + len)));
    }
    Word concat(const Word& other) const {
        std::vector<std::size_t> l = letters_;
        l.insert(l.end(), other.letters_.begin(), other.letters_.end());
        return Word(std::move(l));
    }

    /// Lexicographic by symbol order; a proper prefix is smaller.
    friend std::strong_ordering operator<=>(const Word&, const Word&) = default;
    friend bool operator==(const Word&, const Word&) = default;

private:
    std::vector<std::size_t> letters_;
};

/// Sum of letter grades; 0 for Id.
inline int grade_of(const Word& w, const GradedAlphabet& alphabet) {
    int g = 0;
    for (auto l : w.letters()) g += alphabet.grade(l);
    return g;
}

inline void validate_word(const Word& w, const GradedAlphabet& alphabet) {
    for (auto l : w.letters())
        if (l >= alphabet.size()) throw InvalidWordError("letter index " + std::to_string(l) + " outside alphabet");
}

/// Concatenated names when every name is a single character ("AAB"),
/// space-separated otherwise ("A1 A2"). The identity prints as "Id".
inline std::string word_to_string(const Word& w, const GradedAlphabet& alphabet) {
    if (w.empty()) return "Id";
    const bool compact =
        std::all_of(alphabet.names().begin(), alphabet.names().end(), [](const auto& n) { return n.size() == 1; });
    std::string out;
    for (std::size_t i = 0; i < w.length(); ++i) {
        if (i && !compact) out += " ";
        out += alphabet.name(w[i]);
    }
    return out;
}

/// Parses "A A B", "AAB" (single-character names), or "A1 A2". "Id" or an
/// empty string give the identity word.
inline Word parse_word(std::string_view text, const GradedAlphabet& alphabet) {
    std::vector<std::size_t> letters;
    std::string s(text);
    std::vector<std::string> parts;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == ',')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != ',') ++j;
        if (j > i) parts.push_back(s.substr(i, j - i));
        i = j;
    }
    if (parts.size() == 1 && parts[0] == "Id") return Word();
    for (const auto& part : parts) {
        if (auto idx = alphabet.index_of(part)) {
            letters.push_back(*idx);
            continue;
        }
        // Greedy longest-match split of a concatenated token such as "AAB".
        std::size_t pos = 0;
        while (pos < part.size()) {
            std::size_t best_len = 0, best = 0;
            for (std::size_t k = 0; k < alphabet.size(); ++k) {
                const auto& n = alphabet.name(k);
                if (n.size() > best_len && part.compare(pos, n.size(), n) == 0) {
                    best_len = n.size();
                    best = k;
                }
            }
            if (best_len == 0) throw InvalidWordError("cannot split '" + part + "' into alphabet symbols");
            letters.push_back(best);
            pos += best_len;
        }
    }
    return Word(std::move(letters));
}

/// All words over the alphabet with grade <= max_grade, ordered by grade and
/// then lexicographically within a grade (Id first).
inline std::vector<Word> words_up_to_grade(const GradedAlphabet& alphabet, int max_grade) {
    std::vector<Word> out{Word()};
    std::vector<Word> frontier{Word()};
    while (!frontier.empty()) {
        std::vector<Word> next;
        for (const auto& w : frontier) {
            int g = grade_of(w, alphabet);
            for (std::size_t a = 0; a < alphabet.size(); ++a)
                if (g + alphabet.grade(a) <= max_grade) next.push_back(w.concat(Word{a}));
        }
        out.insert(out.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    std::stable_sort(out.begin(), out.end(), [&](const Word& x, const Word& y) {
        int gx = grade_of(x, alphabet), gy = grade_of(y, alphabet);
        return gx != gy ? gx < gy : x < y;
    });
    return out;
}

/// True iff w is strictly smaller than each of its proper rotations.
inline bool is_lyndon(const Word& w) {
    const std::size_t n = w.length();
    if (n == 0) return false;
    for (std::size_t r = 1; r < n; ++r) {
        int cmp = 0;
        for (std::size_t i = 0; i < n && cmp == 0; ++i) {
            auto a = w[i], b = w[(i + r) % n];
            cmp = a < b ? -1 : (a > b ? 1 : 0);
        }
        if (cmp >= 0) return false;  // not smaller than this rotation
    }
    return true;
}

/// Lyndon words with at most `max_length` letters over an alphabet of `k`
/// symbols, in lexicographic order (Duval's generation algorithm).
inline std::vector<Word> lyndon_words_up_to_length(std::size_t k, std::size_t max_length) {
    std::vector<Word> out;
    if (k == 0 || max_length == 0) return out;
    std::vector<std::size_t> w{0};
    while (!w.empty()) {
        out.emplace_back(w);
        const std::size_t m = w.size();
        while (w.size() < max_length) w.push_back(w[w.size() - m]);
        while (!w.empty() && w.back() == k - 1) w.pop_back();
        if (!w.empty()) ++w.back();
    }
    return out;
}

/// Lyndon words of grade exactly q, in lexicographic order.
inline std::vector<Word> lyndon_words_of_grade(const GradedAlphabet& alphabet, int q) {
    if (q < 1) throw DomainError("grade must be at least 1");
    std::vector<Word> out;
    const auto max_len = static_cast<std::size_t>(q / alphabet.min_grade());
    for (auto& w : lyndon_words_up_to_length(alphabet.size(), max_len))
        if (grade_of(w, alphabet) == q) out.push_back(std::move(w));
    return out;
}

/// Lyndon words of odd grade q <= p, concatenated over q = 1, 3, 5, ...
inline std::vector<Word> lyndon_words_of_odd_grade_up_to(const GradedAlphabet& alphabet, int p) {
    if (p < 1) throw DomainError("order must be at least 1");
    std::vector<Word> out;
    for (int q = 1; q <= p; q += 2) {
        auto ws = lyndon_words_of_grade(alphabet, q);
        out.insert(out.end(), ws.begin(), ws.end());
    }
    return out;
}

/// Lyndon words of every grade q <= p, concatenated over q = 1, 2, 3, ...
inline std::vector<Word> lyndon_words_up_to_grade(const GradedAlphabet& alphabet, int p) {
    if (p < 1) throw DomainError("order must be at least 1");
    std::vector<Word> out;
    for (int q = 1; q <= p; ++q) {
        auto ws = lyndon_words_of_grade(alphabet, q);
        out.insert(out.end(), ws.begin(), ws.end());
    }
    return out;
}

/// Nested commutator of alphabet letters: a Lyndon basis element.
class BasisElement {
public:
    explicit BasisElement(std::size_t letter) : node_(letter) {}
    BasisElement(BasisElement left, BasisElement right)
        : node_(std::make_pair(std::make_shared<const BasisElement>(std::move(left)),
                               std::make_shared<const BasisElement>(std::move(right)))) {}

    bool is_letter() const noexcept { return std::holds_alternative<std::size_t>(node_); }
    std::size_t letter() const { return std::get<std::size_t>(node_); }
    const BasisElement& left() const { return *std::get<Pair>(node_).first; }
    const BasisElement& right() const { return *std::get<Pair>(node_).second; }

    /// The word obtained by dropping all brackets.
    Word foliage() const {
        if (is_letter()) return Word{letter()};
        return left().foliage().concat(right().foliage());
    }

    /// "[A,[A,B]]"
    std::string to_string(const GradedAlphabet& alphabet) const {
        if (is_letter()) return alphabet.name(letter());
        return "[" + left().to_string(alphabet) + "," + right().to_string(alphabet) + "]";
    }

    friend bool operator==(const BasisElement& a, const BasisElement& b) {
        if (a.is_letter() != b.is_letter()) return false;
        if (a.is_letter()) return a.letter() == b.letter();
        return a.left() == b.left() && a.right() == b.right();
    }

private:
    using Pair = std::pair<std::shared_ptr<const BasisElement>, std::shared_ptr<const BasisElement>>;
    std::variant<std::size_t, Pair> node_;
};

/// Standard bracketing: w = uv with v the longest proper Lyndon suffix,
/// mapped recursively to [bracket(u), bracket(v)].
inline BasisElement lyndon_bracketing(const Word& w) {
    if (!is_lyndon(w)) throw InvalidWordError("word is not a Lyndon word");
    if (w.length() == 1) return BasisElement(w[0]);
    for (std::size_t split = 1; split < w.length(); ++split) {
        Word v = w.subword(split, w.length() - split);
        if (is_lyndon(v)) return BasisElement(lyndon_bracketing(w.subword(0, split)), lyndon_bracketing(v));
    }
    throw InvalidWordError("Lyndon word without a Lyndon suffix");  // unreachable: the last letter is Lyndon
}

}  // namespace expocon
