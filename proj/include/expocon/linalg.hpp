#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "expocon/error.hpp"
#include "expocon/mpcomplex.hpp"
#include "expocon/rational.hpp"

namespace expocon {

template <typename T>
using Matrix = std::vector<std::vector<T>>;

namespace detail {

inline void check_square(std::size_t rows, std::size_t cols, std::size_t rhs) {
    if (rows != cols || rows != rhs)
        throw ShapeError("linear system is " + std::to_string(rows) + "x" + std::to_string(cols) + " with " +
                         std::to_string(rhs) + " right-hand sides");
}

}  // namespace detail

/// Exact solve of A x = b by Bareiss fraction-free elimination.
inline std::vector<Rational> solve_exact(Matrix<Rational> A, std::vector<Rational> b) {
    const std::size_t n = A.size();
    detail::check_square(n, n ? A[0].size() : 0, b.size());
    // Augment and eliminate; after step k every entry below row k is a k-th order minor.
    for (std::size_t i = 0; i < n; ++i) A[i].push_back(b[i]);
    Rational prev(1);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && A[piv][k].is_zero()) ++piv;
        if (piv == n) throw SingularMatrixError("singular matrix in exact solve");
        std::swap(A[k], A[piv]);
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j <= n; ++j) A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) / prev;
            A[i][k] = Rational(0);
        }
        prev = A[k][k];
    }
    std::vector<Rational> x(n);
    for (std::size_t i = n; i-- > 0;) {
        Rational s = A[i][n];
        for (std::size_t j = i + 1; j < n; ++j) s -= A[i][j] * x[j];
        x[i] = s / A[i][i];
    }
    return x;
}

inline Rational determinant_exact(Matrix<Rational> A) {
    const std::size_t n = A.size();
    detail::check_square(n, n ? A[0].size() : 0, n);
    Rational prev(1);
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && A[piv][k].is_zero()) ++piv;
        if (piv == n) return Rational(0);
        if (piv != k) {
            std::swap(A[k], A[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) / prev;
        prev = A[k][k];
    }
    return n == 0 ? Rational(1) : Rational(sign) * A[n - 1][n - 1];
}

/// Gaussian elimination with partial pivoting (largest modulus).
inline std::vector<MPComplex> solve_numeric(Matrix<MPComplex> A, std::vector<MPComplex> b) {
    const std::size_t n = A.size();
    detail::check_square(n, n ? A[0].size() : 0, b.size());
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        MpReal best = abs(A[k][k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            MpReal m = abs(A[i][k]);
            if (m > best) {
                best = std::move(m);
                piv = i;
            }
        }
        if (best.is_zero()) throw SingularMatrixError("singular matrix in numeric solve");
        std::swap(A[k], A[piv]);
        std::swap(b[k], b[piv]);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (A[i][k].is_zero()) continue;
            MPComplex f = A[i][k] / A[k][k];
            for (std::size_t j = k + 1; j < n; ++j) A[i][j] = A[i][j] - f * A[k][j];
            b[i] = b[i] - f * b[k];
        }
    }
    std::vector<MPComplex> x(n, MPComplex(Precision{b.empty() ? default_digits() : b[0].digits()}));
    for (std::size_t i = n; i-- > 0;) {
        MPComplex s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s = s - A[i][j] * x[j];
        x[i] = s / A[i][i];
    }
    return x;
}

}  // namespace expocon
