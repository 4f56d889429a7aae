#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "expocon/error.hpp"
#include "expocon/expr.hpp"
#include "expocon/rational.hpp"
#include "expocon/ring.hpp"
#include "expocon/words.hpp"

namespace expocon {

/// phi_w(X) * v for a word w: a vector of length len(w) + 1.
template <ScalarRing R>
using PhiVector = std::vector<R>;

struct PhiOptions {
    /// Stop products, powers and exponential series once an iterate is the
    /// exact zero vector. Results do not depend on this flag.
    bool early_exit = true;
};

namespace detail {

template <ScalarRing R>
bool all_zero(const PhiVector<R>& v) {
    return std::all_of(v.begin(), v.end(), [](const R& x) { return is_zero(x); });
}

template <ScalarRing R>
PhiVector<R> phiv_rec(const Word& w, const Expr<R>& X, const PhiVector<R>& v, const PhiOptions& opt);

template <ScalarRing R>
void ensure_zero_constant_term(const Expr<R>& operand, const PhiOptions& opt) {
    // coeff(Id, Y) is phiv over the empty word applied to (1).
    PhiVector<R> id = phiv_rec(Word(), operand, PhiVector<R>{ring_one<R>()}, opt);
    if (!is_zero(id[0])) throw NonzeroConstantTermError();
}

template <ScalarRing R>
PhiVector<R> phiv_rec(const Word& w, const Expr<R>& X, const PhiVector<R>& v, const PhiOptions& opt) {
    const std::size_t n = w.length();
    return std::visit(
        [&](const auto& x) -> PhiVector<R> {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, node::Symbol>) {
                // phi_w(a) has ones on the superdiagonal where w_i = a.
                PhiVector<R> r(n + 1, ring_zero<R>());
                for (std::size_t i = 0; i < n; ++i)
                    if (w[i] == x.index) r[i] = v[i + 1];
                return r;
            } else if constexpr (std::is_same_v<T, node::Sum<R>>) {
                PhiVector<R> r(n + 1, ring_zero<R>());
                for (const auto& t : x.terms) {
                    PhiVector<R> p = phiv_rec(w, t, v, opt);
                    for (std::size_t i = 0; i <= n; ++i) r[i] = r[i] + p[i];
                }
                return r;
            } else if constexpr (std::is_same_v<T, node::Scaled<R>>) {
                PhiVector<R> r = phiv_rec(w, x.operand, v, opt);
                for (auto& e : r) e = x.scalar * e;
                return r;
            } else if constexpr (std::is_same_v<T, node::Product<R>>) {
                // The rightmost factor acts first.
                PhiVector<R> r = v;
                for (auto it = x.factors.rbegin(); it != x.factors.rend(); ++it) {
                    r = phiv_rec(w, *it, r, opt);
                    if (opt.early_exit && all_zero(r)) return r;
                }
                return r;
            } else if constexpr (std::is_same_v<T, node::Power<R>>) {
                PhiVector<R> r = v;
                for (unsigned i = 0; i < x.exponent; ++i) {
                    r = phiv_rec(w, x.base, r, opt);
                    if (opt.early_exit && all_zero(r)) return r;
                }
                return r;
            } else if constexpr (std::is_same_v<T, node::Commutator<R>>) {
                PhiVector<R> a = phiv_rec(w, x.left, phiv_rec(w, x.right, v, opt), opt);
                PhiVector<R> b = phiv_rec(w, x.right, phiv_rec(w, x.left, v, opt), opt);
                for (std::size_t i = 0; i <= n; ++i) a[i] = a[i] - b[i];
                return a;
            } else {
                ensure_zero_constant_term(x.operand, opt);
                // phi_w(Y) is strictly upper triangular, so its (n+1)-th power vanishes.
                PhiVector<R> term = v, sum = v;
                for (std::size_t i = 1; i <= n; ++i) {
                    term = phiv_rec(w, x.operand, term, opt);
                    if (opt.early_exit && all_zero(term)) return sum;
                    const R inv_fact = R(Rational(1, static_cast<long>(i)));
                    for (auto& e : term) e = inv_fact * e;
                    for (std::size_t k = 0; k <= n; ++k) sum[k] = sum[k] + term[k];
                }
                return sum;
            }
        },
        X.node());
}

}  // namespace detail

/// Computes phi_w(X) * v without forming the matrix phi_w(X).
template <ScalarRing R>
PhiVector<R> phiv(const Word& w, const Expr<R>& X, const PhiVector<R>& v, const PhiOptions& opt = {}) {
    if (v.size() != w.length() + 1)
        throw ShapeError("vector length " + std::to_string(v.size()) + " does not match word length " +
                         std::to_string(w.length()) + " + 1");
    return detail::phiv_rec(w, X, v, opt);
}

/// coeff(w, X): the first component of phiv(w, X, (0, ..., 0, 1)).
template <ScalarRing R>
R wcoeff(const Word& w, const Expr<R>& X, const PhiOptions& opt = {}) {
    PhiVector<R> e(w.length() + 1, ring_zero<R>());
    e.back() = ring_one<R>();
    return detail::phiv_rec(w, X, e, opt)[0];
}

}  // namespace expocon
