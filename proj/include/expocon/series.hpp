#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "expocon/error.hpp"
#include "expocon/expr.hpp"
#include "expocon/rational.hpp"
#include "expocon/ring.hpp"
#include "expocon/words.hpp"

namespace expocon {

/// Element of the free associative algebra truncated at a maximal grade:
/// a finite map word -> coefficient. Absent words have coefficient zero.
///
/// This is the brute-force reference for coefficient extraction; it does not
/// share code with the phiv evaluator.
template <ScalarRing R>
class TruncatedSeries {
public:
    TruncatedSeries(std::shared_ptr<const GradedAlphabet> alphabet, int max_grade)
        : alphabet_(std::move(alphabet)), max_grade_(max_grade) {}

    static TruncatedSeries identity(std::shared_ptr<const GradedAlphabet> alphabet, int max_grade) {
        TruncatedSeries s(std::move(alphabet), max_grade);
        s.coeffs_.emplace(Word(), ring_one<R>());
        return s;
    }

    const GradedAlphabet& alphabet() const noexcept { return *alphabet_; }
    const std::shared_ptr<const GradedAlphabet>& alphabet_ptr() const noexcept { return alphabet_; }
    int max_grade() const noexcept { return max_grade_; }
    const std::map<Word, R>& coefficients() const noexcept { return coeffs_; }

    /// Stored coefficient or zero; words beyond the truncation are an error.
    R coeff(const Word& w) const {
        if (grade_of(w, *alphabet_) > max_grade_)
            throw OutOfTruncationError("word grade exceeds truncation grade " + std::to_string(max_grade_));
        auto it = coeffs_.find(w);
        return it == coeffs_.end() ? ring_zero<R>() : it->second;
    }

    void add(const Word& w, const R& c) {
        if (is_zero(c) || grade_of(w, *alphabet_) > max_grade_) return;
        auto [it, inserted] = coeffs_.try_emplace(w, c);
        if (!inserted) {
            it->second = it->second + c;
            if (is_zero(it->second)) coeffs_.erase(it);
        }
    }

    /// The homogeneous part of grade q.
    TruncatedSeries grade_slice(int q) const {
        TruncatedSeries s(alphabet_, max_grade_);
        for (const auto& [w, c] : coeffs_)
            if (grade_of(w, *alphabet_) == q) s.coeffs_.emplace(w, c);
        return s;
    }

    /// Drops all words of grade > m.
    TruncatedSeries truncated(int m) const {
        TruncatedSeries s(alphabet_, std::min(m, max_grade_));
        for (const auto& [w, c] : coeffs_)
            if (grade_of(w, *alphabet_) <= m) s.coeffs_.emplace(w, c);
        return s;
    }

    TruncatedSeries operator+(const TruncatedSeries& o) const {
        TruncatedSeries s = *this;
        for (const auto& [w, c] : o.coeffs_) s.add(w, c);
        return s;
    }
    TruncatedSeries operator-(const TruncatedSeries& o) const { return *this + o.scaled(-ring_one<R>()); }
    TruncatedSeries scaled(const R& k) const {
        TruncatedSeries s(alphabet_, max_grade_);
        if (is_zero(k)) return s;
        for (const auto& [w, c] : coeffs_) s.add(w, k * c);
        return s;
    }

    /// Concatenation product, truncated at the grade bound.
    TruncatedSeries operator*(const TruncatedSeries& o) const {
        TruncatedSeries s(alphabet_, max_grade_);
        std::vector<std::pair<const Word*, int>> rhs;
        rhs.reserve(o.coeffs_.size());
        for (const auto& [w, c] : o.coeffs_) rhs.emplace_back(&w, grade_of(w, *alphabet_));
        for (const auto& [u, cu] : coeffs_) {
            const int gu = grade_of(u, *alphabet_);
            std::size_t k = 0;
            for (const auto& [v, cv] : o.coeffs_) {
                if (gu + rhs[k++].second <= max_grade_) s.add(u.concat(v), cu * cv);
            }
        }
        return s;
    }

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
        return a.max_grade_ == b.max_grade_ && a.coeffs_ == b.coeffs_;
    }

private:
    std::shared_ptr<const GradedAlphabet> alphabet_;
    int max_grade_;
    std::map<Word, R> coeffs_;
};

namespace detail {

template <ScalarRing R>
TruncatedSeries<R> series_rec(const Expr<R>& e, const std::shared_ptr<const GradedAlphabet>& alpha, int N) {
    using S = TruncatedSeries<R>;
    return std::visit(
        [&](const auto& x) -> S {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, node::Symbol>) {
                if (x.index >= alpha->size()) throw InvalidWordError("symbol index outside alphabet");
                S s(alpha, N);
                s.add(Word{x.index}, ring_one<R>());
                return s;
            } else if constexpr (std::is_same_v<T, node::Sum<R>>) {
                S s(alpha, N);
                for (const auto& t : x.terms) s = s + series_rec(t, alpha, N);
                return s;
            } else if constexpr (std::is_same_v<T, node::Scaled<R>>) {
                return series_rec(x.operand, alpha, N).scaled(x.scalar);
            } else if constexpr (std::is_same_v<T, node::Product<R>>) {
                S s = S::identity(alpha, N);
                for (const auto& f : x.factors) s = s * series_rec(f, alpha, N);
                return s;
            } else if constexpr (std::is_same_v<T, node::Power<R>>) {
                S base = series_rec(x.base, alpha, N);
                S s = S::identity(alpha, N);
                for (unsigned i = 0; i < x.exponent; ++i) s = s * base;
                return s;
            } else if constexpr (std::is_same_v<T, node::Commutator<R>>) {
                S l = series_rec(x.left, alpha, N), r = series_rec(x.right, alpha, N);
                return l * r - r * l;
            } else {
                S y = series_rec(x.operand, alpha, N);
                if (!is_zero(y.coeff(Word()))) throw NonzeroConstantTermError();
                // sum_k y^k / k!; y^k has minimal grade >= k, so k <= N suffices.
                S s = S::identity(alpha, N);
                S term = S::identity(alpha, N);
                for (int k = 1; k <= N; ++k) {
                    term = (term * y).scaled(R(Rational(1, k)));
                    if (term.coefficients().empty()) break;
                    s = s + term;
                }
                return s;
            }
        },
        e.node());
}

}  // namespace detail

/// Expands X in the free algebra, exactly for all words of grade <= max_grade.
template <ScalarRing R>
TruncatedSeries<R> series_of(const Expr<R>& e, const GradedAlphabet& alphabet, int max_grade) {
    auto alpha = std::make_shared<const GradedAlphabet>(alphabet);
    return detail::series_rec(e, alpha, max_grade);
}

template <ScalarRing R>
R series_coeff(const TruncatedSeries<R>& s, const Word& w) {
    return s.coeff(w);
}

}  // namespace expocon
