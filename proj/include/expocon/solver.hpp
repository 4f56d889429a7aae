#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "expocon/ansatz.hpp"
#include "expocon/conditions.hpp"
#include "expocon/error.hpp"
#include "expocon/linalg.hpp"
#include "expocon/magnus.hpp"
#include "expocon/mpcomplex.hpp"
#include "expocon/parser.hpp"
#include "expocon/poly.hpp"
#include "expocon/rational.hpp"

namespace expocon {

/// Polynomial equations in ordered unknowns with their symbolic Jacobian.
/// Equations may mention further variables, which must then be fixed
/// numerically when the system is compiled.
struct PolySystem {
    std::vector<PolyRational> equations;
    std::vector<std::string> variables;
    Matrix<PolyRational> jacobian;

    PolySystem() = default;
    PolySystem(std::vector<PolyRational> eqs, std::vector<std::string> vars)
        : equations(std::move(eqs)), variables(std::move(vars)) {
        if (variables.empty()) {
            std::set<std::string> used;
            for (const auto& e : equations)
                for (const auto& v : e.used_variables()) used.insert(v);
            variables.assign(used.begin(), used.end());
        }
        for (const auto& e : equations) {
            std::vector<PolyRational> row;
            for (const auto& v : variables) row.push_back(differentiate(e, v));
            jacobian.push_back(std::move(row));
        }
    }

    std::size_t size() const noexcept { return equations.size(); }
    bool square() const noexcept { return equations.size() == variables.size(); }
};

namespace detail {

/// Lifts a rational into the numeric type T.
template <typename T>
struct NumericTraits;

template <>
struct NumericTraits<std::complex<double>> {
    using Real = double;
    static std::complex<double> lift(const Rational& q, int) { return {q.to_double(), 0.0}; }
    static std::complex<double> zero(int) { return {0.0, 0.0}; }
    static double modulus(const std::complex<double>& z) { return std::abs(z); }
};

template <>
struct NumericTraits<MPComplex> {
    using Real = MpReal;
    static MPComplex lift(const Rational& q, int digits) { return MPComplex(q, digits); }
    static MPComplex zero(int digits) { return MPComplex(Precision{digits}); }
    static MpReal modulus(const MPComplex& z) { return abs(z); }
};

}  // namespace detail

/// A polynomial compiled for fast numeric evaluation over T, with some
/// variables already replaced by numbers.
template <typename T>
class CompiledPoly {
public:
    CompiledPoly() = default;
    CompiledPoly(const PolyRational& p, const std::vector<std::string>& unknowns, const std::map<std::string, T>& fixed,
                 int digits) {
        using Tr = detail::NumericTraits<T>;
        const auto& vars = p.variables();
        std::vector<int> slot(vars.size(), -1);
        std::vector<const T*> fixed_value(vars.size(), nullptr);
        for (std::size_t i = 0; i < vars.size(); ++i) {
            auto it = std::find(unknowns.begin(), unknowns.end(), vars[i]);
            if (it != unknowns.end()) {
                slot[i] = static_cast<int>(it - unknowns.begin());
            } else if (auto f = fixed.find(vars[i]); f != fixed.end()) {
                fixed_value[i] = &f->second;
            } else {
                throw UnboundVariableError(vars[i]);
            }
        }
        std::map<std::vector<std::pair<int, unsigned>>, T> merged;
        for (const auto& [e, c] : p.terms()) {
            T coeff = Tr::lift(c, digits);
            std::vector<std::pair<int, unsigned>> mono;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                if (slot[i] >= 0) {
                    mono.emplace_back(slot[i], e[i]);
                } else {
                    for (unsigned r = 0; r < e[i]; ++r) coeff = coeff * *fixed_value[i];
                }
            }
            auto [it, inserted] = merged.try_emplace(mono, coeff);
            if (!inserted) it->second = it->second + coeff;
        }
        for (auto& [mono, c] : merged) {
            for (const auto& [v, k] : mono) max_power_ = std::max(max_power_, k);
            terms_.push_back({std::move(c), mono});
        }
    }

    /// powers[v][k] = x_v^k for k <= max_power().
    T evaluate(const std::vector<std::vector<T>>& powers, int digits) const {
        T acc = detail::NumericTraits<T>::zero(digits);
        for (const auto& t : terms_) {
            T m = t.coeff;
            for (const auto& [v, k] : t.mono) m = m * powers[v][k];
            acc = acc + m;
        }
        return acc;
    }

    unsigned max_power() const noexcept { return max_power_; }
    std::size_t size() const noexcept { return terms_.size(); }

private:
    struct Term {
        T coeff;
        std::vector<std::pair<int, unsigned>> mono;
    };
    std::vector<Term> terms_;
    unsigned max_power_ = 0;
};

template <typename T>
class CompiledSystem {
public:
    CompiledSystem(const PolySystem& sys, const std::map<std::string, T>& fixed, int digits)
        : n_(sys.variables.size()), digits_(digits) {
        for (const auto& e : sys.equations) {
            f_.emplace_back(e, sys.variables, fixed, digits);
            max_power_ = std::max(max_power_, f_.back().max_power());
        }
        for (const auto& row : sys.jacobian) {
            std::vector<CompiledPoly<T>> r;
            for (const auto& p : row) {
                r.emplace_back(p, sys.variables, fixed, digits);
                max_power_ = std::max(max_power_, r.back().max_power());
            }
            jac_.push_back(std::move(r));
        }
    }

    std::size_t equations() const noexcept { return f_.size(); }
    std::size_t unknowns() const noexcept { return n_; }
    int digits() const noexcept { return digits_; }

    std::vector<std::vector<T>> powers(const std::vector<T>& x) const {
        std::vector<std::vector<T>> p(n_);
        for (std::size_t v = 0; v < n_; ++v) {
            p[v].push_back(detail::NumericTraits<T>::lift(Rational(1), digits_));
            for (unsigned k = 1; k <= max_power_; ++k) p[v].push_back(p[v].back() * x[v]);
        }
        return p;
    }
    std::vector<T> residual(const std::vector<T>& x) const {
        const auto p = powers(x);
        std::vector<T> r;
        for (const auto& f : f_) r.push_back(f.evaluate(p, digits_));
        return r;
    }
    Matrix<T> jacobian(const std::vector<T>& x) const {
        const auto p = powers(x);
        Matrix<T> J;
        for (const auto& row : jac_) {
            std::vector<T> r;
            for (const auto& f : row) r.push_back(f.evaluate(p, digits_));
            J.push_back(std::move(r));
        }
        return J;
    }

private:
    std::size_t n_;
    int digits_;
    unsigned max_power_ = 0;
    std::vector<CompiledPoly<T>> f_;
    Matrix<CompiledPoly<T>> jac_;
};

namespace detail {

inline std::vector<std::complex<double>> solve_dense(Matrix<std::complex<double>> A, std::vector<std::complex<double>> b) {
    const std::size_t n = A.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(A[i][k]) > std::abs(A[piv][k])) piv = i;
        if (std::abs(A[piv][k]) == 0.0) throw SingularMatrixError("singular Jacobian");
        std::swap(A[k], A[piv]);
        std::swap(b[k], b[piv]);
        for (std::size_t i = k + 1; i < n; ++i) {
            const auto f = A[i][k] / A[k][k];
            for (std::size_t j = k + 1; j < n; ++j) A[i][j] -= f * A[k][j];
            b[i] -= f * b[k];
        }
    }
    std::vector<std::complex<double>> x(n);
    for (std::size_t i = n; i-- > 0;) {
        auto s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= A[i][j] * x[j];
        x[i] = s / A[i][i];
    }
    return x;
}

inline std::vector<MPComplex> solve_dense(Matrix<MPComplex> A, std::vector<MPComplex> b) {
    return solve_numeric(std::move(A), std::move(b));
}

inline std::complex<double> conj_of(const std::complex<double>& z) { return std::conj(z); }
inline MPComplex conj_of(const MPComplex& z) { return conj(z); }

/// Newton direction; least squares through the normal equations when the
/// system has more equations than unknowns.
template <typename T>
std::vector<T> newton_direction(const Matrix<T>& J, const std::vector<T>& F, int digits) {
    using Tr = NumericTraits<T>;
    const std::size_t m = J.size(), n = m ? J[0].size() : 0;
    std::vector<T> rhs;
    for (const auto& f : F) rhs.push_back(-f);
    if (m == n) return solve_dense(J, rhs);
    Matrix<T> N(n, std::vector<T>(n, Tr::zero(digits)));
    std::vector<T> g(n, Tr::zero(digits));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t r = 0; r < m; ++r) N[i][j] = N[i][j] + conj_of(J[r][i]) * J[r][j];
        for (std::size_t r = 0; r < m; ++r) g[i] = g[i] + conj_of(J[r][i]) * rhs[r];
    }
    return solve_dense(N, g);
}

template <typename Real, typename T>
Real max_abs(const std::vector<T>& v, const Real& zero) {
    Real m = zero;
    for (const auto& x : v) {
        Real a = NumericTraits<T>::modulus(x);
        if (a > m) m = a;
    }
    return m;
}

inline double log10_of(double x) { return x > 0 ? std::log10(x) : -1e300; }
inline double log10_of(const MpReal& x) { return x.is_zero() ? -1e300 : log10(x).to_double(); }

inline double to_plain_double(double x) { return x; }
inline double to_plain_double(const MpReal& x) { return x.to_double(); }

}  // namespace detail

enum class NewtonStatus { converged, singular_jacobian, max_iterations, diverged };

inline const char* to_string(NewtonStatus s) {
    switch (s) {
        case NewtonStatus::converged: return "converged";
        case NewtonStatus::singular_jacobian: return "singular-jacobian";
        case NewtonStatus::max_iterations: return "max-iterations";
        case NewtonStatus::diverged: return "diverged";
    }
    return "unknown";
}

template <typename T>
struct NewtonResult {
    NewtonStatus status = NewtonStatus::max_iterations;
    std::vector<T> x;
    typename detail::NumericTraits<T>::Real residual{};
    int iterations = 0;
    /// log10 of the residual max-norm after each iteration (index 0: start).
    std::vector<double> log_residuals;
    bool converged() const noexcept { return status == NewtonStatus::converged; }
};

struct NewtonOptions {
    int max_iter = 60;
    int max_halvings = 30;
    /// Stop once the residual max-norm drops below this threshold.
    double log10_tolerance = -12;
    /// Declare divergence when an unknown exceeds this modulus.
    double divergence_bound = 1e8;
};

/// Damped Newton: a step is halved (up to max_halvings times) until the
/// residual max-norm decreases.
template <typename T>
NewtonResult<T> newton_iterate(const CompiledSystem<T>& sys, std::vector<T> x, const NewtonOptions& opt) {
    using Tr = detail::NumericTraits<T>;
    using Real = typename Tr::Real;
    const int digits = sys.digits();
    const Real zero = Tr::modulus(Tr::zero(digits));
    NewtonResult<T> res;
    std::vector<T> F = sys.residual(x);
    Real norm = detail::max_abs(F, zero);
    res.log_residuals.push_back(detail::log10_of(norm));
    for (int it = 0; it < opt.max_iter; ++it) {
        if (detail::log10_of(norm) < opt.log10_tolerance) {
            res.status = NewtonStatus::converged;
            break;
        }
        std::vector<T> dx;
        try {
            dx = detail::newton_direction(sys.jacobian(x), F, digits);
        } catch (const SingularMatrixError&) {
            res.status = NewtonStatus::singular_jacobian;
            break;
        }
        T lambda = Tr::lift(Rational(1), digits);
        const T half = Tr::lift(Rational(1, 2), digits);
        std::vector<T> trial;
        std::vector<T> Ft;
        Real nt = norm;
        for (int h = 0; h <= opt.max_halvings; ++h) {
            trial = x;
            for (std::size_t i = 0; i < x.size(); ++i) trial[i] = trial[i] + lambda * dx[i];
            Ft = sys.residual(trial);
            nt = detail::max_abs(Ft, zero);
            if (nt < norm) break;
            lambda = lambda * half;
        }
        x = std::move(trial);
        F = std::move(Ft);
        norm = nt;
        res.iterations = it + 1;
        res.log_residuals.push_back(detail::log10_of(norm));
        if (detail::to_plain_double(detail::max_abs(x, zero)) > opt.divergence_bound) {
            res.status = NewtonStatus::diverged;
            break;
        }
        if (it + 1 == opt.max_iter && detail::log10_of(norm) < opt.log10_tolerance) res.status = NewtonStatus::converged;
    }
    res.x = std::move(x);
    res.residual = norm;
    return res;
}

/// Arbitrary-precision Newton; success means residual < 10^(-digits+8).
inline NewtonResult<MPComplex> newton_solve(const PolySystem& sys, const std::vector<MPComplex>& start, int digits,
                                            int max_iter = 60, const std::map<std::string, MPComplex>& fixed = {}) {
    if (sys.equations.size() < sys.variables.size())
        throw ShapeError("Newton needs at least as many equations as unknowns");
    if (start.size() != sys.variables.size()) throw ShapeError("start vector length differs from unknown count");
    std::map<std::string, MPComplex> fixed_d;
    for (const auto& [k, v] : fixed) fixed_d.emplace(k, v.with_digits(digits));
    CompiledSystem<MPComplex> cs(sys, fixed_d, digits);
    std::vector<MPComplex> x;
    for (const auto& s : start) x.push_back(s.with_digits(digits));
    NewtonOptions opt;
    opt.max_iter = max_iter;
    opt.log10_tolerance = -digits + 8;
    return newton_iterate(cs, std::move(x), opt);
}

inline NewtonResult<MPComplex> newton_solve(const PolySystem& sys, const std::vector<Rational>& start, int digits,
                                            int max_iter = 60) {
    std::vector<MPComplex> s;
    for (const auto& q : start) s.emplace_back(q, digits);
    return newton_solve(sys, s, digits, max_iter);
}

struct ComplexBox {
    double re_min = -2, re_max = 2, im_min = -2, im_max = 2;
};

struct Solution {
    std::map<std::string, MPComplex> assignment;
    std::vector<MPComplex> values;  // in PolySystem::variables order
    MpReal residual;
    bool is_real = false;
};

struct SolveReport {
    std::vector<Solution> solutions;
    std::vector<std::string> variables;
    int starts_tried = 0;
    int starts_converged = 0;
    int digits = 0;
};

struct MultistartOptions {
    int n_starts = 100;
    ComplexBox box;
    int digits = 64;
    double dedup_tol = 1e-8;
    std::uint64_t seed = 1;
    /// Digits of the intermediate polishing pass before the target precision.
    int polish_digits = 30;
    /// Iteration budget of each double-precision Newton run.
    int search_iterations = 300;
    /// Iteration budget of each polishing pass.
    int polish_iterations = 8;
};

namespace detail {

/// Uniform double in [0, 1) from the top 53 bits, independent of the
/// standard library's distribution implementation.
inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double solution_distance(const std::vector<std::complex<double>>& a, const std::vector<std::complex<double>>& b) {
    double d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

}  // namespace detail

/// Seeded multistart: a damped Newton search in double precision from
/// random starts in the box, then polishing at polish_digits and at the
/// target precision. Solutions are deduplicated by max-norm distance and
/// sorted by their components (real part, then imaginary part).
inline SolveReport multistart_search(const PolySystem& sys, const MultistartOptions& opt) {
    SolveReport report;
    report.variables = sys.variables;
    report.digits = opt.digits;
    if (sys.equations.size() < sys.variables.size())
        throw ShapeError("multistart needs at least as many equations as unknowns");
    const std::size_t n = sys.variables.size();
    CompiledSystem<std::complex<double>> fast(sys, {}, 16);
    std::mt19937_64 rng(opt.seed);
    NewtonOptions dopt;
    dopt.max_iter = opt.search_iterations;
    dopt.log10_tolerance = -11;

    std::vector<std::vector<std::complex<double>>> seen;
    std::vector<std::pair<std::vector<std::complex<double>>, Solution>> found;
    for (int s = 0; s < opt.n_starts; ++s) {
        std::vector<std::complex<double>> x0(n);
        for (auto& z : x0) {
            const double re = opt.box.re_min + (opt.box.re_max - opt.box.re_min) * detail::unit_uniform(rng);
            const double im = opt.box.im_min + (opt.box.im_max - opt.box.im_min) * detail::unit_uniform(rng);
            z = {re, im};
        }
        ++report.starts_tried;
        auto coarse = newton_iterate(fast, x0, dopt);
        if (!coarse.converged()) continue;
        bool duplicate = false;
        for (const auto& v : seen) duplicate = duplicate || detail::solution_distance(v, coarse.x) < 1e-6;
        ++report.starts_converged;
        if (duplicate) continue;
        seen.push_back(coarse.x);

        std::vector<MPComplex> x;
        for (const auto& z : coarse.x) x.emplace_back(z, opt.polish_digits);
        // Isolated roots converge quadratically from a double-precision
        // root; a small budget rejects singular (linearly converging) ones.
        auto mid = newton_solve(sys, x, std::min(opt.polish_digits, opt.digits), opt.polish_iterations);
        if (!mid.converged()) continue;
        auto fine = opt.digits > opt.polish_digits ? newton_solve(sys, mid.x, opt.digits, opt.polish_iterations) : mid;
        if (!fine.converged()) continue;

        std::vector<std::complex<double>> key;
        for (const auto& z : fine.x) key.push_back(z.to_complex_double());
        bool dup = false;
        for (const auto& [k, sol] : found) dup = dup || detail::solution_distance(k, key) < opt.dedup_tol;
        if (dup) continue;
        Solution sol;
        sol.values = fine.x;
        sol.residual = fine.residual;
        sol.is_real = true;
        for (std::size_t i = 0; i < n; ++i) {
            sol.assignment.emplace(sys.variables[i], fine.x[i]);
            if (std::abs(key[i].imag()) >= opt.dedup_tol) sol.is_real = false;
        }
        found.emplace_back(std::move(key), std::move(sol));
    }
    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
        for (std::size_t i = 0; i < a.first.size(); ++i) {
            if (a.first[i].real() != b.first[i].real()) return a.first[i].real() < b.first[i].real();
            if (a.first[i].imag() != b.first[i].imag()) return a.first[i].imag() < b.first[i].imag();
        }
        return false;
    });
    for (auto& [k, sol] : found) report.solutions.push_back(std::move(sol));
    return report;
}

/// Order-condition polynomials wcoeff(w, S) - rhs(w) for the given words.
inline std::vector<PolyRational> condition_polynomials(const Expr<PolyRational>& S, const std::vector<Word>& words,
                                                       const std::vector<Rational>& rhs) {
    std::vector<PolyRational> out;
    for (std::size_t i = 0; i < words.size(); ++i) out.push_back(wcoeff(words[i], S) - PolyRational(rhs[i]));
    return out;
}

/// The 8-exponential, 16-parameter self-adjoint ansatz over {A1..A4} with
/// its 22 conditions split into the three solve stages.
struct Magnus8Problem {
    SchemeAnsatz ansatz;
    Magnus8Words words;
    std::vector<Rational> rhs12, rhs3, rhs4;
    std::vector<std::string> vars12, vars3, vars4;

    static Magnus8Problem make() {
        Magnus8Problem p;
        p.words = magnus8_words();
        p.ansatz = build_self_adjoint_ansatz(8, p.words.alphabet, "f");
        p.rhs12 = magnus_rhs(p.words.w12, p.words.alphabet);
        p.rhs3 = magnus_rhs(p.words.w3, p.words.alphabet);
        p.rhs4 = magnus_rhs(p.words.w4, p.words.alphabet);
        for (int k = 1; k <= 2; ++k)
            for (int j = 1; j <= 4; ++j) p.vars12.push_back(ansatz_parameter_name("f", j, k));
        for (int j = 1; j <= 4; ++j) {
            p.vars3.push_back(ansatz_parameter_name("f", j, 3));
            p.vars4.push_back(ansatz_parameter_name("f", j, 4));
        }
        return p;
    }

    /// The 8x8 system from the words involving only A1 and A2.
    PolySystem w12_system() const {
        return PolySystem(condition_polynomials(ansatz.expression, words.w12, rhs12), vars12);
    }

    /// Linear 4x4 stage from W3 words 2..5 (1-based), unknowns f13..f43.
    PolySystem w3_system(std::size_t first = 1, std::size_t count = 4) const {
        std::vector<Word> w(words.w3.begin() + first, words.w3.begin() + first + count);
        std::vector<Rational> r(rhs3.begin() + first, rhs3.begin() + first + count);
        return PolySystem(condition_polynomials(ansatz.expression, w, r), vars3);
    }

    /// Linear 4x4 stage from W4 words 1..4, unknowns f14..f44.
    PolySystem w4_system(std::size_t first = 0, std::size_t count = 4) const {
        std::vector<Word> w(words.w4.begin() + first, words.w4.begin() + first + count);
        std::vector<Rational> r(rhs4.begin() + first, rhs4.begin() + first + count);
        return PolySystem(condition_polynomials(ansatz.expression, w, r), vars4);
    }

    /// Expands free parameters into the full 8x4 coefficient matrix.
    SchemeParameters parameters(const std::map<std::string, MPComplex>& assignment, int digits) const {
        SchemeParameters p;
        for (const auto& row : ansatz.rows) {
            std::vector<MPComplex> r;
            for (const auto& e : row) {
                if (e.parameter.empty()) {
                    r.emplace_back(Precision{digits});
                    continue;
                }
                auto it = assignment.find(e.parameter);
                if (it == assignment.end()) throw UnboundVariableError(e.parameter);
                MPComplex v = it->second.with_digits(digits);
                r.push_back(e.sign < 0 ? -v : v);
            }
            p.f.push_back(std::move(r));
        }
        return p;
    }

    std::vector<MPComplex> all_rhs(int digits) const {
        std::vector<MPComplex> out;
        for (const auto* v : {&rhs12, &rhs3, &rhs4})
            for (const auto& q : *v) out.emplace_back(q, digits);
        return out;
    }
};

struct Magnus8Solution {
    std::map<std::string, MPComplex> assignment;  // all 16 free parameters
    SchemeParameters f;                            // full 8x4 matrix
    MpReal residual12, residual3, residual4;       // selected-stage residuals
    MpReal residual_all;                           // all 22 conditions
};

namespace detail {

inline std::map<std::string, MPComplex> solve_linear_stage(const PolySystem& sys,
                                                           const std::map<std::string, MPComplex>& fixed, int digits,
                                                           const char* stage, MpReal& residual) {
    std::vector<MPComplex> zero(sys.variables.size(), MPComplex(Precision{digits}));
    NewtonResult<MPComplex> r;
    try {
        r = newton_solve(sys, zero, digits, 4, fixed);
    } catch (const SingularMatrixError&) {
        throw SingularMatrixError(std::string("stage ") + stage + " linear system is singular");
    }
    if (r.status == NewtonStatus::singular_jacobian)
        throw SingularMatrixError(std::string("stage ") + stage + " linear system is singular");
    residual = r.residual;
    std::map<std::string, MPComplex> out;
    for (std::size_t i = 0; i < sys.variables.size(); ++i) out.emplace(sys.variables[i], r.x[i]);
    return out;
}

}  // namespace detail

/// Completes a solution of the W12 system: linear solves for f_{j,3} and then
/// f_{j,4}, followed by the residual over all 22 conditions.
inline Magnus8Solution staged_solve_magnus8(const Magnus8Problem& prob, const std::map<std::string, MPComplex>& f12,
                                            int digits) {
    Magnus8Solution sol;
    DigitsGuard guard(digits);
    for (const auto& v : prob.vars12) {
        auto it = f12.find(v);
        if (it == f12.end()) throw UnboundVariableError(v);
        sol.assignment.emplace(v, it->second.with_digits(digits));
    }
    {
        CompiledSystem<MPComplex> cs(prob.w12_system(), {}, digits);
        std::vector<MPComplex> x;
        for (const auto& v : prob.vars12) x.push_back(sol.assignment.at(v));
        sol.residual12 = detail::max_abs(cs.residual(x), MpReal(Precision{digits}));
    }
    auto f3 = detail::solve_linear_stage(prob.w3_system(), sol.assignment, digits, "W3", sol.residual3);
    sol.assignment.insert(f3.begin(), f3.end());
    auto f4 = detail::solve_linear_stage(prob.w4_system(), sol.assignment, digits, "W4", sol.residual4);
    sol.assignment.insert(f4.begin(), f4.end());
    sol.f = prob.parameters(sol.assignment, digits);
    sol.residual_all = residual_of_scheme(scheme_expression(sol.f), prob.words.all(), prob.all_rhs(digits), digits);
    return sol;
}

/// Builds the 4 conditions for the symmetric 5-exponential splitting ansatz,
/// solves them numerically and recovers the exact rational solution.
struct SplittingExample {
    GradedAlphabet alphabet;
    Expr<PolyRational> ansatz;
    Expr<PolyRational> target;
    OrderConditionSystem<PolyRational> conditions;
    std::map<std::string, Rational> solution;
};

inline constexpr const char* splitting_ansatz_text = "exp(b*B)*exp(a*A)*exp(c*B + d*[B,[A,B]])*exp(a*A)*exp(b*B)";

inline SplittingExample solve_splitting_example(int digits = 64) {
    SplittingExample ex;
    ex.alphabet = GradedAlphabet::uniform({"A", "B"});
    ex.ansatz = parse_expression(splitting_ansatz_text, ex.alphabet, {"a", "b", "c", "d"});
    ex.target = parse_expression("exp(A+B)", ex.alphabet);
    ex.conditions = order_conditions(ex.ansatz, ex.target, ex.alphabet, 4, true);
    PolySystem sys(ex.conditions.equations(), {"a", "b", "c", "d"});
    auto r = newton_solve(sys, std::vector<Rational>{Rational(2, 5), Rational(1, 5), Rational(7, 10), Rational(1, 100)},
                          digits);
    if (!r.converged()) {
        MultistartOptions opt;
        opt.n_starts = 50;
        opt.digits = digits;
        auto rep = multistart_search(sys, opt);
        if (rep.solutions.empty()) throw NotRationalError("splitting system: Newton did not converge");
        r.x = rep.solutions.front().values;
    }
    for (std::size_t i = 0; i < sys.variables.size(); ++i) {
        try {
            ex.solution.emplace(sys.variables[i], rationalize(r.x[i], 1000000L));
        } catch (const NotRationalError&) {
            throw NotRationalError("could not rationalize " + sys.variables[i] + " = " + r.x[i].to_string(30));
        }
    }
    for (const auto& eq : sys.equations)
        if (!poly_evaluate(eq, ex.solution).is_zero())
            throw NotRationalError("rationalized solution does not satisfy the conditions exactly");
    return ex;
}

}  // namespace expocon
