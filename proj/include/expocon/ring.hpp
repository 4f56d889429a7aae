#pragma once

#include <concepts>

#include "expocon/rational.hpp"

namespace expocon {

/// Commutative ring containing the rationals: the coefficient domain of every
/// expression. `R(q)` embeds a rational, `is_zero` tests for exact zero.
template <typename R>
concept ScalarRing = std::copy_constructible<R> && requires(const R a, const R b, const Rational q) {
    { R(q) } -> std::same_as<R>;
    { a + b } -> std::convertible_to<R>;
    { a - b } -> std::convertible_to<R>;
    { -a } -> std::convertible_to<R>;
    { a * b } -> std::convertible_to<R>;
    { a == b } -> std::convertible_to<bool>;
    { is_zero(a) } -> std::convertible_to<bool>;
};

template <ScalarRing R>
R ring_zero() {
    return R(Rational(0));
}

template <ScalarRing R>
R ring_one() {
    return R(Rational(1));
}

}  // namespace expocon
