#pragma once

#include <cstddef>
#include <algorithm>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "expocon/error.hpp"
#include "expocon/ring.hpp"
#include "expocon/words.hpp"

namespace expocon {

template <ScalarRing R>
class Expr;

namespace node {

struct Symbol {
    std::size_t index;
};
template <ScalarRing R>
struct Sum {
    std::vector<Expr<R>> terms;
};
template <ScalarRing R>
struct Scaled {
    R scalar;
    Expr<R> operand;
};
/// Ordered, noncommutative; the empty product is the identity.
template <ScalarRing R>
struct Product {
    std::vector<Expr<R>> factors;
};
template <ScalarRing R>
struct Power {
    Expr<R> base;
    unsigned exponent;
};
template <ScalarRing R>
struct Commutator {
    Expr<R> left;
    Expr<R> right;
};
template <ScalarRing R>
struct Exponential {
    Expr<R> operand;
};

}  // namespace node

/// Immutable noncommutative expression over the symbols of an alphabet with
/// scalars drawn from the ring R. Copies share structure.
template <ScalarRing R>
class Expr {
public:
    using Node = std::variant<node::Symbol, node::Sum<R>, node::Scaled<R>, node::Product<R>, node::Power<R>,
                              node::Commutator<R>, node::Exponential<R>>;

    /// The identity (empty product).
    Expr() : node_(identity_node()) {}

    static Expr symbol(std::size_t index) { return Expr(node::Symbol{index}); }
    static Expr identity() { return Expr(); }

    /// Scalar constant c * Id.
    static Expr constant(R c) { return scaled(std::move(c), identity()); }

    /// c * X; merges nested multiples and drops unit factors.
    static Expr scaled(R c, Expr x) {
        if (const auto* s = x.template as<node::Scaled<R>>()) return scaled(c * s->scalar, s->operand);
        if (c == ring_one<R>()) return x;
        return Expr(node::Scaled<R>{std::move(c), std::move(x)});
    }

    /// Flattened sum; a sum of scalars collapses to one scalar.
    static Expr sum(std::vector<Expr> terms) {
        std::vector<Expr> flat;
        for (auto& t : terms) {
            if (const auto* s = t.template as<node::Sum<R>>())
                flat.insert(flat.end(), s->terms.begin(), s->terms.end());
            else
                flat.push_back(std::move(t));
        }
        if (flat.empty()) return constant(ring_zero<R>());
        bool all_scalar = true;
        for (const auto& t : flat) all_scalar = all_scalar && t.is_scalar();
        if (all_scalar) {
            R total = ring_zero<R>();
            for (const auto& t : flat) total = total + *t.scalar_value();
            return constant(std::move(total));
        }
        if (flat.size() == 1) return flat.front();
        return Expr(node::Sum<R>{std::move(flat)});
    }

    /// Flattened product with scalar factors pulled to the front.
    static Expr product(std::vector<Expr> factors) {
        R scalar = ring_one<R>();
        std::vector<Expr> flat;
        std::function<void(const Expr&)> absorb = [&](const Expr& f) {
            if (const auto* s = f.template as<node::Scaled<R>>()) {
                scalar = scalar * s->scalar;
                absorb(s->operand);
            } else if (const auto* p = f.template as<node::Product<R>>()) {
                for (const auto& g : p->factors) absorb(g);
            } else {
                flat.push_back(f);
            }
        };
        for (const auto& f : factors) absorb(f);
        Expr core = flat.size() == 1 ? flat.front() : Expr(node::Product<R>{std::move(flat)});
        return scaled(std::move(scalar), std::move(core));
    }

    /// base^n; a power of a scalar is folded into a scalar.
    static Expr power(Expr base, unsigned n) {
        if (auto c = base.scalar_value()) {
            R r = ring_one<R>();
            for (unsigned i = 0; i < n; ++i) r = r * *c;
            return constant(std::move(r));
        }
        return Expr(node::Power<R>{std::move(base), n});
    }

    static Expr commutator(Expr left, Expr right) {
        return Expr(node::Commutator<R>{std::move(left), std::move(right)});
    }

    static Expr exponential(Expr operand) { return Expr(node::Exponential<R>{std::move(operand)}); }

    const Node& node() const noexcept { return *node_; }

    template <typename T>
    const T* as() const noexcept {
        return std::get_if<T>(node_.get());
    }

    bool is_identity() const {
        const auto* p = as<node::Product<R>>();
        return p && p->factors.empty();
    }

    /// True for c * Id and for Id itself.
    bool is_scalar() const { return scalar_value().has_value(); }

    std::optional<R> scalar_value() const {
        if (is_identity()) return ring_one<R>();
        if (const auto* s = as<node::Scaled<R>>())
            if (s->operand.is_identity()) return s->scalar;
        return std::nullopt;
    }

    /// Structural equality (scalars compared with the ring's ==).
    friend bool operator==(const Expr& a, const Expr& b) {
        if (a.node_ == b.node_) return true;
        if (a.node_->index() != b.node_->index()) return false;
        return std::visit(
            [&](const auto& x) -> bool {
                using T = std::decay_t<decltype(x)>;
                const auto& y = std::get<T>(*b.node_);
                if constexpr (std::is_same_v<T, node::Symbol>) {
                    return x.index == y.index;
                } else if constexpr (std::is_same_v<T, node::Sum<R>>) {
                    return x.terms == y.terms;
                } else if constexpr (std::is_same_v<T, node::Scaled<R>>) {
                    return x.scalar == y.scalar && x.operand == y.operand;
                } else if constexpr (std::is_same_v<T, node::Product<R>>) {
                    return x.factors == y.factors;
                } else if constexpr (std::is_same_v<T, node::Power<R>>) {
                    return x.exponent == y.exponent && x.base == y.base;
                } else if constexpr (std::is_same_v<T, node::Commutator<R>>) {
                    return x.left == y.left && x.right == y.right;
                } else {
                    return x.operand == y.operand;
                }
            },
            *a.node_);
    }

    friend Expr operator+(const Expr& a, const Expr& b) { return sum({a, b}); }
    friend Expr operator-(const Expr& a, const Expr& b) { return sum({a, scaled(-ring_one<R>(), b)}); }
    friend Expr operator*(const Expr& a, const Expr& b) { return product({a, b}); }
    friend Expr operator*(const R& c, const Expr& b) { return scaled(c, b); }

private:
    explicit Expr(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}

    static std::shared_ptr<const Node> identity_node() {
        static const auto id = std::make_shared<const Node>(node::Product<R>{});
        return id;
    }

    std::shared_ptr<const Node> node_;
};

/// Rebuilds an expression with every scalar mapped through `f`.
template <ScalarRing To, ScalarRing From, typename F>
Expr<To> map_scalars(const Expr<From>& e, F&& f) {
    return std::visit(
        [&](const auto& x) -> Expr<To> {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, node::Symbol>) {
                return Expr<To>::symbol(x.index);
            } else if constexpr (std::is_same_v<T, node::Sum<From>>) {
                std::vector<Expr<To>> ts;
                for (const auto& t : x.terms) ts.push_back(map_scalars<To>(t, f));
                return Expr<To>::sum(std::move(ts));
            } else if constexpr (std::is_same_v<T, node::Scaled<From>>) {
                return Expr<To>::scaled(f(x.scalar), map_scalars<To>(x.operand, f));
            } else if constexpr (std::is_same_v<T, node::Product<From>>) {
                std::vector<Expr<To>> fs;
                for (const auto& t : x.factors) fs.push_back(map_scalars<To>(t, f));
                return Expr<To>::product(std::move(fs));
            } else if constexpr (std::is_same_v<T, node::Power<From>>) {
                return Expr<To>::power(map_scalars<To>(x.base, f), x.exponent);
            } else if constexpr (std::is_same_v<T, node::Commutator<From>>) {
                return Expr<To>::commutator(map_scalars<To>(x.left, f), map_scalars<To>(x.right, f));
            } else {
                return Expr<To>::exponential(map_scalars<To>(x.operand, f));
            }
        },
        e.node());
}

/// Expands a Lyndon basis element into a nested Commutator expression.
template <ScalarRing R>
Expr<R> to_expr(const BasisElement& b) {
    if (b.is_letter()) return Expr<R>::symbol(b.letter());
    return Expr<R>::commutator(to_expr<R>(b.left()), to_expr<R>(b.right()));
}

/// Largest symbol index used plus one (0 for symbol-free expressions).
template <ScalarRing R>
std::size_t symbol_bound(const Expr<R>& e) {
    return std::visit(
        [&](const auto& x) -> std::size_t {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, node::Symbol>) {
                return x.index + 1;
            } else if constexpr (std::is_same_v<T, node::Sum<R>>) {
                std::size_t m = 0;
                for (const auto& t : x.terms) m = std::max(m, symbol_bound(t));
                return m;
            } else if constexpr (std::is_same_v<T, node::Scaled<R>>) {
                return symbol_bound(x.operand);
            } else if constexpr (std::is_same_v<T, node::Product<R>>) {
                std::size_t m = 0;
                for (const auto& t : x.factors) m = std::max(m, symbol_bound(t));
                return m;
            } else if constexpr (std::is_same_v<T, node::Power<R>>) {
                return symbol_bound(x.base);
            } else if constexpr (std::is_same_v<T, node::Commutator<R>>) {
                return std::max(symbol_bound(x.left), symbol_bound(x.right));
            } else {
                return symbol_bound(x.operand);
            }
        },
        e.node());
}

}  // namespace expocon
