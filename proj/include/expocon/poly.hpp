#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "expocon/error.hpp"
#include "expocon/lexer.hpp"
#include "expocon/mpcomplex.hpp"
#include "expocon/rational.hpp"

namespace expocon {

using Exponents = std::vector<std::uint32_t>;

/// Graded lexicographic order: total degree first, then lexicographic on the
/// exponent vector (first variable most significant).
struct GrlexLess {
    bool operator()(const Exponents& a, const Exponents& b) const {
        const auto da = std::accumulate(a.begin(), a.end(), std::uint64_t{0});
        const auto db = std::accumulate(b.begin(), b.end(), std::uint64_t{0});
        if (da != db) return da < db;
        return a < b;
    }
};

/// Sparse multivariate polynomial with rational coefficients.
///
/// The variable list is kept sorted by name; binary operations work over the
/// union of the operands' variables. Zero coefficients are never stored.
class PolyRational {
public:
    using VarList = std::vector<std::string>;
    using TermMap = std::map<Exponents, Rational, GrlexLess>;

    PolyRational() : vars_(empty_vars()) {}
    PolyRational(const Rational& c) : vars_(empty_vars()) {  // NOLINT(google-explicit-constructor)
        if (!c.is_zero()) terms_.emplace(Exponents{}, c);
    }
    PolyRational(int c) : PolyRational(Rational(c)) {}  // NOLINT(google-explicit-constructor)

    static PolyRational variable(const std::string& name) {
        PolyRational p;
        p.vars_ = std::make_shared<const VarList>(VarList{name});
        p.terms_.emplace(Exponents{1}, Rational(1));
        return p;
    }

    /// Builds from explicit terms; exponent vectors must match `vars` in length.
    static PolyRational from_terms(VarList vars, const std::vector<std::pair<Exponents, Rational>>& terms) {
        std::vector<std::size_t> order(vars.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](auto i, auto j) { return vars[i] < vars[j]; });
        VarList sorted;
        for (auto i : order) sorted.push_back(vars[i]);
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw DomainError("duplicate variable name");
        PolyRational p;
        p.vars_ = std::make_shared<const VarList>(std::move(sorted));
        for (const auto& [e, c] : terms) {
            if (e.size() != vars.size()) throw DomainError("exponent vector length mismatch");
            Exponents mapped(order.size());
            for (std::size_t k = 0; k < order.size(); ++k) mapped[k] = e[order[k]];
            p.add_term(mapped, c);
        }
        return p;
    }

    const VarList& variables() const noexcept { return *vars_; }
    const TermMap& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }

    /// Variables with a nonzero exponent in some term.
    VarList used_variables() const {
        std::vector<bool> used(vars_->size(), false);
        for (const auto& [e, c] : terms_)
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i] != 0) used[i] = true;
        VarList out;
        for (std::size_t i = 0; i < used.size(); ++i)
            if (used[i]) out.push_back((*vars_)[i]);
        return out;
    }

    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && is_constant_exponent(terms_.begin()->first));
    }
    /// The coefficient of the constant monomial.
    Rational constant_term() const {
        for (const auto& [e, c] : terms_)
            if (is_constant_exponent(e)) return c;
        return Rational(0);
    }
    /// The value of a constant polynomial; throws when variables remain.
    Rational constant_value() const {
        if (!is_constant()) throw DomainError("polynomial '" + to_string() + "' is not constant");
        return constant_term();
    }
    std::uint64_t total_degree() const {
        std::uint64_t d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), std::uint64_t{0}));
        return d;
    }
    std::uint32_t degree_in(const std::string& var) const {
        auto idx = index_of(var);
        if (!idx) return 0;
        std::uint32_t d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e[*idx]);
        return d;
    }
    std::optional<std::size_t> index_of(const std::string& var) const {
        auto it = std::lower_bound(vars_->begin(), vars_->end(), var);
        if (it == vars_->end() || *it != var) return std::nullopt;
        return static_cast<std::size_t>(it - vars_->begin());
    }

    PolyRational operator-() const {
        PolyRational r(*this);
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }
    PolyRational& operator+=(const PolyRational& o) { return accumulate(o, false); }
    PolyRational& operator-=(const PolyRational& o) { return accumulate(o, true); }
    PolyRational& operator*=(const PolyRational& o) { return *this = *this * o; }
    friend PolyRational operator+(PolyRational a, const PolyRational& b) { return a += b; }
    friend PolyRational operator-(PolyRational a, const PolyRational& b) { return a -= b; }
    friend PolyRational operator*(const PolyRational& a, const PolyRational& b) {
        if (a.is_zero() || b.is_zero()) return PolyRational();
        if (b.is_constant()) return a.scaled(b.constant_term());
        if (a.is_constant()) return b.scaled(a.constant_term());
        auto [x, y] = align(a, b);
        PolyRational r;
        r.vars_ = x.vars_;
        Exponents e(x.vars_->size());
        for (const auto& [ea, ca] : x.terms_)
            for (const auto& [eb, cb] : y.terms_) {
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                auto [it, inserted] = r.terms_.try_emplace(e, ca * cb);
                if (!inserted) it->second += ca * cb;
            }
        r.drop_zeros();
        return r;
    }

    PolyRational scaled(const Rational& s) const {
        if (s.is_zero()) return PolyRational();
        PolyRational r(*this);
        for (auto& [e, c] : r.terms_) c *= s;
        return r;
    }

    friend bool operator==(const PolyRational& a, const PolyRational& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        if (a.vars_ == b.vars_ || *a.vars_ == *b.vars_) return a.terms_ == b.terms_;
        auto [x, y] = align(a, b);
        return x.terms_ == y.terms_;
    }

    /// Sorted monomial text, highest graded-lex term first, e.g. "2*a^2*b - 1/6".
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            const bool negative = c.sign() < 0;
            const Rational mag = negative ? -c : c;
            if (first) {
                if (negative) out += "-";
            } else {
                out += negative ? " - " : " + ";
            }
            first = false;
            std::string mono;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += (*vars_)[i];
                if (e[i] > 1) mono += "^" + std::to_string(e[i]);
            }
            if (mono.empty()) {
                out += mag.to_short_string();
            } else if (mag.is_one()) {
                out += mono;
            } else {
                out += mag.to_short_string() + "*" + mono;
            }
        }
        return out;
    }

    friend std::ostream& operator<<(std::ostream& os, const PolyRational& p) { return os << p.to_string(); }

    /// Re-expresses this polynomial over a superset of its variables.
    PolyRational over(const VarList& sorted_superset) const {
        auto target = std::make_shared<const VarList>(sorted_superset);
        return remap(target);
    }

    void add_term(const Exponents& e, const Rational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

private:
    static std::shared_ptr<const VarList> empty_vars() {
        static const auto empty = std::make_shared<const VarList>();
        return empty;
    }

    static bool is_constant_exponent(const Exponents& e) {
        return std::all_of(e.begin(), e.end(), [](auto x) { return x == 0; });
    }

    PolyRational remap(const std::shared_ptr<const VarList>& target) const {
        if (target == vars_ || *target == *vars_) {
            PolyRational r(*this);
            r.vars_ = target;
            return r;
        }
        std::vector<std::size_t> where(vars_->size());
        for (std::size_t i = 0; i < vars_->size(); ++i) {
            auto it = std::lower_bound(target->begin(), target->end(), (*vars_)[i]);
            if (it == target->end() || *it != (*vars_)[i]) throw DomainError("variable list is not a superset");
            where[i] = static_cast<std::size_t>(it - target->begin());
        }
        PolyRational r;
        r.vars_ = target;
        for (const auto& [e, c] : terms_) {
            Exponents m(target->size(), 0);
            for (std::size_t i = 0; i < e.size(); ++i) m[where[i]] = e[i];
            r.terms_.emplace(std::move(m), c);
        }
        return r;
    }

    static std::pair<PolyRational, PolyRational> align(const PolyRational& a, const PolyRational& b) {
        if (a.vars_ == b.vars_) return {a, b};
        if (*a.vars_ == *b.vars_) return {a, b.remap(a.vars_)};
        VarList u;
        std::set_union(a.vars_->begin(), a.vars_->end(), b.vars_->begin(), b.vars_->end(), std::back_inserter(u));
        auto target = std::make_shared<const VarList>(std::move(u));
        return {a.remap(target), b.remap(target)};
    }

    PolyRational& accumulate(const PolyRational& o, bool subtract) {
        if (o.is_zero()) return *this;
        if (vars_ != o.vars_ && *vars_ != *o.vars_) {
            auto [x, y] = align(*this, o);
            *this = std::move(x);
            return accumulate(y, subtract);
        }
        for (const auto& [e, c] : o.terms_) add_term(e, subtract ? -c : c);
        return *this;
    }

    void drop_zeros() {
        for (auto it = terms_.begin(); it != terms_.end();)
            it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
    }

    std::shared_ptr<const VarList> vars_;
    TermMap terms_;
};

inline bool is_zero(const PolyRational& p) noexcept { return p.is_zero(); }

inline PolyRational pow(const PolyRational& base, unsigned exponent) {
    PolyRational r(1);
    for (unsigned i = 0; i < exponent; ++i) r *= base;
    return r;
}

/// Formal partial derivative.
inline PolyRational differentiate(const PolyRational& p, const std::string& var) {
    auto idx = p.index_of(var);
    if (!idx) return PolyRational();
    PolyRational r = PolyRational().over(p.variables());
    for (const auto& [e, c] : p.terms()) {
        if (e[*idx] == 0) continue;
        Exponents d = e;
        d[*idx] -= 1;
        r.add_term(d, c * Rational(static_cast<long>(e[*idx])));
    }
    return r;
}

/// Exact substitution of rational values for a subset of the variables; the
/// substituted variables disappear from the result.
inline PolyRational poly_substitute(const PolyRational& p, const std::map<std::string, Rational>& partial) {
    const auto& vars = p.variables();
    std::vector<std::optional<Rational>> value(vars.size());
    PolyRational::VarList kept;
    std::vector<std::size_t> kept_index;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        auto it = partial.find(vars[i]);
        if (it != partial.end()) {
            value[i] = it->second;
        } else {
            kept.push_back(vars[i]);
            kept_index.push_back(i);
        }
    }
    std::vector<std::pair<Exponents, Rational>> terms;
    for (const auto& [e, c] : p.terms()) {
        Rational coeff = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (value[i] && e[i] > 0) coeff *= pow(*value[i], e[i]);
        if (coeff.is_zero()) continue;
        Exponents reduced;
        reduced.reserve(kept_index.size());
        for (auto i : kept_index) reduced.push_back(e[i]);
        terms.emplace_back(std::move(reduced), coeff);
    }
    return PolyRational::from_terms(kept, terms);
}

namespace detail {

template <typename T, typename Lift>
T evaluate_with(const PolyRational& p, const std::map<std::string, T>& assignment, Lift lift) {
    const auto& vars = p.variables();
    std::vector<const T*> values(vars.size(), nullptr);
    std::vector<std::uint32_t> max_exp(vars.size(), 0);
    for (const auto& [e, c] : p.terms())
        for (std::size_t i = 0; i < e.size(); ++i) max_exp[i] = std::max(max_exp[i], e[i]);
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (max_exp[i] == 0) continue;
        auto it = assignment.find(vars[i]);
        if (it == assignment.end()) throw UnboundVariableError(vars[i]);
        values[i] = &it->second;
    }
    // powers[i][k] = x_i^k
    std::vector<std::vector<T>> powers(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (max_exp[i] == 0) continue;
        powers[i].reserve(max_exp[i] + 1);
        powers[i].push_back(lift(Rational(1)));
        for (std::uint32_t k = 1; k <= max_exp[i]; ++k) powers[i].push_back(powers[i].back() * *values[i]);
    }
    T sum = lift(Rational(0));
    for (const auto& [e, c] : p.terms()) {
        T term = lift(c);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) term = term * powers[i][e[i]];
        sum = sum + term;
    }
    return sum;
}

}  // namespace detail

/// Evaluates at a numeric point; the working precision is the largest
/// precision found in the assignment.
inline MPComplex poly_evaluate(const PolyRational& p, const std::map<std::string, MPComplex>& assignment) {
    int digits = 0;
    for (const auto& [name, v] : assignment) digits = std::max(digits, v.digits());
    if (digits == 0) digits = default_digits();
    return detail::evaluate_with<MPComplex>(p, assignment, [digits](const Rational& q) { return MPComplex(q, digits); });
}

inline Rational poly_evaluate(const PolyRational& p, const std::map<std::string, Rational>& assignment) {
    return detail::evaluate_with<Rational>(p, assignment, [](const Rational& q) { return q; });
}

namespace detail {

class PolyParser {
public:
    explicit PolyParser(std::string_view text) : ts_(text) {}

    PolyRational parse() {
        PolyRational p = sum();
        if (!ts_.at(TokenKind::end)) throw ParseError("unexpected '" + ts_.peek().text + "'", ts_.peek().position);
        return p;
    }

private:
    PolyRational sum() {
        PolyRational acc = term();
        while (true) {
            if (ts_.accept(TokenKind::plus)) {
                acc += term();
            } else if (ts_.accept(TokenKind::minus)) {
                acc -= term();
            } else {
                return acc;
            }
        }
    }
    PolyRational term() {
        PolyRational acc = unary();
        while (true) {
            if (ts_.accept(TokenKind::star)) {
                acc *= unary();
            } else if (ts_.at(TokenKind::slash)) {
                auto pos = ts_.next().position;
                Token t = ts_.expect(TokenKind::integer, "integer divisor");
                Rational d = Rational::parse(t.text);
                if (d.is_zero()) throw ParseError("division by zero", pos);
                acc = acc.scaled(Rational(1) / d);
            } else {
                return acc;
            }
        }
    }
    PolyRational unary() {
        if (ts_.accept(TokenKind::minus)) return -unary();
        if (ts_.accept(TokenKind::plus)) return unary();
        return power();
    }
    PolyRational power() {
        PolyRational base = primary();
        if (ts_.accept(TokenKind::caret)) {
            Token t = ts_.expect(TokenKind::integer, "integer exponent");
            base = pow(base, static_cast<unsigned>(std::stoul(t.text)));
        }
        return base;
    }
    PolyRational primary() {
        const Token& t = ts_.peek();
        switch (t.kind) {
            case TokenKind::integer: return PolyRational(Rational::parse(ts_.next().text));
            case TokenKind::identifier: return PolyRational::variable(ts_.next().text);
            case TokenKind::lparen: {
                ts_.next();
                PolyRational inner = sum();
                ts_.expect(TokenKind::rparen, "')'");
                return inner;
            }
            default:
                throw ParseError(t.kind == TokenKind::end ? "unexpected end of input" : "unexpected '" + t.text + "'",
                                 t.position);
        }
    }

    TokenStream ts_;
};

}  // namespace detail

/// Parses commutative polynomial text such as "2*a^2*b - 1/6".
inline PolyRational parse_poly(std::string_view text) { return detail::PolyParser(text).parse(); }

}  // namespace expocon
