#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "expocon/error.hpp"
#include "expocon/expr.hpp"
#include "expocon/poly.hpp"
#include "expocon/series.hpp"
#include "expocon/words.hpp"

namespace expocon {

/// One scalar slot f_{j,k} of an ansatz: sign * parameter, or zero.
struct AnsatzEntry {
    std::string parameter;  // empty: the entry is identically zero
    int sign = 1;
};

/// Product of J exponentials of linear combinations of the generators.
///
/// rows[j-1][k-1] describes the coefficient of generator k in exponent j;
/// exponent 1 is the rightmost factor.
struct SchemeAnsatz {
    int J = 0;
    GradedAlphabet generators;
    std::vector<std::string> parameters;
    std::vector<std::vector<AnsatzEntry>> rows;
    Expr<PolyRational> expression;
};

inline std::string ansatz_parameter_name(const std::string& prefix, int j, int k) {
    if (j < 10 && k < 10) return prefix + std::to_string(j) + std::to_string(k);
    return prefix + std::to_string(j) + "_" + std::to_string(k);
}

/// Builds exp(Phi_J) ... exp(Phi_1) with Phi_{J-j+1,k} = (-1)^(grade_k + 1) Phi_{j,k}.
/// Rows 1..floor(J/2) carry free parameters; for odd J the middle row keeps
/// only odd-grade generators.
inline SchemeAnsatz build_self_adjoint_ansatz(int J, const GradedAlphabet& generators,
                                              const std::string& name_prefix = "f") {
    if (J < 1) throw DomainError("ansatz needs at least one exponential");
    const int K = static_cast<int>(generators.size());
    SchemeAnsatz a;
    a.J = J;
    a.generators = generators;
    a.rows.assign(J, std::vector<AnsatzEntry>(K));
    for (int j = 1; j <= (J + 1) / 2; ++j) {
        const int mirror = J - j + 1;
        for (int k = 1; k <= K; ++k) {
            const int g = generators.grade(k - 1);
            if (j == mirror && g % 2 == 0) continue;
            const std::string name = ansatz_parameter_name(name_prefix, j, k);
            a.parameters.push_back(name);
            a.rows[j - 1][k - 1] = {name, 1};
            if (mirror != j) a.rows[mirror - 1][k - 1] = {name, g % 2 == 1 ? 1 : -1};
        }
    }
    std::vector<Expr<PolyRational>> factors;
    for (int j = J; j >= 1; --j) {
        std::vector<Expr<PolyRational>> terms;
        for (int k = 1; k <= K; ++k) {
            const auto& e = a.rows[j - 1][k - 1];
            if (e.parameter.empty()) continue;
            PolyRational c = PolyRational::variable(e.parameter);
            if (e.sign < 0) c = -c;
            terms.push_back(Expr<PolyRational>::scaled(c, Expr<PolyRational>::symbol(k - 1)));
        }
        factors.push_back(Expr<PolyRational>::exponential(Expr<PolyRational>::sum(std::move(terms))));
    }
    a.expression = Expr<PolyRational>::product(std::move(factors));
    return a;
}

/// Exponents of a product of exponentials, leftmost first.
template <ScalarRing R>
std::vector<Expr<R>> exponential_factors(const Expr<R>& e) {
    if (const auto* x = e.template as<node::Exponential<R>>()) return {x->operand};
    const auto* p = e.template as<node::Product<R>>();
    if (!p) throw ShapeError("expected a product of exponentials");
    std::vector<Expr<R>> out;
    for (const auto& f : p->factors) {
        const auto* x = f.template as<node::Exponential<R>>();
        if (!x) throw ShapeError("expected a product of exponentials");
        out.push_back(x->operand);
    }
    return out;
}

/// Checks the mirror sign rule on every graded component up to max_grade,
/// using the series expansion of each exponent. For MPComplex scalars a
/// positive tolerance admits coefficients read from rounded tables.
template <ScalarRing R>
bool is_self_adjoint(const Expr<R>& e, const GradedAlphabet& alphabet, int max_grade, double tolerance = 0.0) {
    const auto phis = exponential_factors(e);
    const std::size_t J = phis.size();
    std::vector<TruncatedSeries<R>> series;
    series.reserve(J);
    for (const auto& phi : phis) series.push_back(series_of(phi, alphabet, max_grade));
    for (std::size_t j = 0; j < (J + 1) / 2; ++j) {
        const auto& left = series[j];
        const auto& right = series[J - 1 - j];
        auto check = [&](const TruncatedSeries<R>& a, const TruncatedSeries<R>& b) {
            for (const auto& [w, c] : a.coefficients()) {
                const int g = grade_of(w, alphabet);
                const R expected = g % 2 == 1 ? c : -c;
                if constexpr (std::is_same_v<R, MPComplex>) {
                    if (tolerance > 0) {
                        if (abs(b.coeff(w) - expected).to_double() > tolerance) return false;
                        continue;
                    }
                }
                if (!(b.coeff(w) == expected)) return false;
            }
            return true;
        };
        if (!check(left, right) || !check(right, left)) return false;
    }
    return true;
}

}  // namespace expocon
