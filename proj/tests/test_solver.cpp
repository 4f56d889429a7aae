#include <cmath>

#include <gtest/gtest.h>

#include "expocon/expocon.hpp"

using namespace expocon;

namespace {

const GradedAlphabet AB = GradedAlphabet::uniform({"A", "B"});

PolySystem splitting_system() {
    std::vector<PolyRational> eqs{parse_poly("-1+2*a"), parse_poly("-1+2*b+c"), parse_poly("-1/6+2*a^2*b+1/2*a^2*c"),
                                  parse_poly("-1/6+1/2*a*c^2+a*c*b+a*b^2-d")};
    return PolySystem(eqs, {"a", "b", "c", "d"});
}

double log10_floor(const MpReal& r, int digits) {
    return r.is_zero() ? -digits : std::max(std::log10(r.to_double()), static_cast<double>(-digits));
}

MPComplex dec(const char* s, int digits) { return MPComplex(MpReal::parse(s, digits)); }

}  // namespace

TEST(Jacobian, SymbolicEntries) {
    const auto sys = splitting_system();
    EXPECT_EQ(sys.jacobian[2][0], parse_poly("4*a*b + a*c"));
    EXPECT_EQ(sys.jacobian[1][2], PolyRational(1));
}

TEST(Jacobian, NonsingularAtSplittingSolution) {
    const auto sys = splitting_system();
    const std::map<std::string, Rational> sol{
        {"a", Rational(1, 2)}, {"b", Rational(1, 6)}, {"c", Rational(2, 3)}, {"d", Rational(1, 72)}};
    Matrix<Rational> J;
    for (const auto& row : sys.jacobian) {
        std::vector<Rational> r;
        for (const auto& p : row) r.push_back(poly_evaluate(p, sol));
        J.push_back(r);
    }
    EXPECT_FALSE(determinant_exact(J).is_zero());
}

TEST(Jacobian, MatchesCentralDifferences) {
    const int D = 40;
    const auto prob = Magnus8Problem::make();
    const PolySystem sys = prob.w12_system();
    CompiledSystem<MPComplex> cs(sys, {}, D);
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    const MPComplex h = dec("1e-12", D), two_h = h + h;
    for (int t = 0; t < 10; ++t) {
        std::vector<MPComplex> x;
        for (std::size_t i = 0; i < sys.variables.size(); ++i) x.emplace_back(std::complex<double>(u(rng), u(rng)), D);
        const auto J = cs.jacobian(x);
        for (std::size_t j = 0; j < x.size(); ++j) {
            auto xp = x, xm = x;
            xp[j] = xp[j] + h;
            xm[j] = xm[j] - h;
            const auto fp = cs.residual(xp), fm = cs.residual(xm);
            for (std::size_t i = 0; i < fp.size(); ++i) {
                const MPComplex fd = (fp[i] - fm[i]) / two_h;
                const double scale = std::max(1.0, abs(J[i][j]).to_double());
                EXPECT_LT(abs(fd - J[i][j]).to_double() / scale, 1e-20) << i << "," << j;
            }
        }
    }
}

TEST(Newton, SquareRootOfTwo) {
    const int D = 64;
    const PolySystem sys({parse_poly("x^2 - 2")}, {"x"});
    const auto r = newton_solve(sys, std::vector<Rational>{Rational(1)}, D);
    ASSERT_TRUE(r.converged());
    const MpReal root = sqrt(MpReal(Rational(2), D + 20));
    EXPECT_LT(abs(r.x[0].real() - root).to_double(), 1e-62);
}

TEST(Newton, QuadraticConvergence) {
    const int D = 200;
    const PolySystem sys({parse_poly("x^2 - 2"), parse_poly("x*y - 3")}, {"x", "y"});
    const auto r = newton_solve(sys, std::vector<Rational>{Rational(3, 2), Rational(2)}, D);
    ASSERT_TRUE(r.converged());
    const auto& l = r.log_residuals;
    ASSERT_GE(l.size(), 4u);
    for (std::size_t k = l.size() - 3; k < l.size(); ++k) EXPECT_GT(l[k] / l[k - 1], 1.6) << l[k - 1] << " -> " << l[k];
}

TEST(Newton, SplittingSystemFromNearbyStart) {
    const int D = 50;
    const auto r = newton_solve(splitting_system(),
                                std::vector<MPComplex>{dec("0.4", D), dec("0.2", D), dec("0.7", D), dec("0.01", D)}, D);
    ASSERT_TRUE(r.converged());
    const std::vector<Rational> expected{Rational(1, 2), Rational(1, 6), Rational(2, 3), Rational(1, 72)};
    for (std::size_t i = 0; i < 4; ++i) EXPECT_LT(abs(r.x[i] - MPComplex(expected[i], D)).to_double(), 1e-45);
}

TEST(Newton, LinearInOneStep) {
    const PolySystem sys({parse_poly("-1+2*a")}, {"a"});
    const auto r = newton_solve(sys, std::vector<Rational>{Rational(7)}, 30);
    ASSERT_TRUE(r.converged());
    EXPECT_EQ(r.iterations, 1);
    EXPECT_TRUE(r.x[0] == MPComplex(Rational(1, 2), 30));
}

TEST(Newton, RejectsUnderdetermined) {
    const PolySystem sys({parse_poly("a + b")}, {"a", "b"});
    EXPECT_THROW(newton_solve(sys, std::vector<Rational>{Rational(0), Rational(0)}, 30), ShapeError);
}

TEST(Multistart, SplittingSystemHasOneSolution) {
    MultistartOptions opt;
    opt.n_starts = 50;
    opt.digits = 50;
    const auto rep = multistart_search(splitting_system(), opt);
    ASSERT_EQ(rep.solutions.size(), 1u);
    EXPECT_TRUE(rep.solutions[0].is_real);
    EXPECT_EQ(rationalize(rep.solutions[0].assignment.at("d"), 1000000), Rational(1, 72));
}

TEST(Multistart, InconsistentSystemIsEmpty) {
    auto eqs = splitting_system().equations;
    eqs.push_back(PolyRational(1));
    const PolySystem sys(eqs, {"a", "b", "c", "d"});
    MultistartOptions opt;
    opt.n_starts = 20;
    opt.digits = 30;
    const auto rep = multistart_search(sys, opt);
    EXPECT_TRUE(rep.solutions.empty());
    EXPECT_EQ(rep.starts_tried, 20);
}

TEST(Multistart, DeterministicUnderSeed) {
    const PolySystem sys({parse_poly("x^3 - 2*x + 1"), parse_poly("y^2 - x")}, {"x", "y"});
    MultistartOptions opt;
    opt.n_starts = 40;
    opt.digits = 40;
    opt.seed = 9;
    const auto a = report_to_json(multistart_search(sys, opt)).dump();
    const auto b = report_to_json(multistart_search(sys, opt)).dump();
    EXPECT_EQ(a, b);
}

TEST(Multistart, DedupIsSymmetricAndSeparating) {
    const PolySystem sys({parse_poly("x^3 - 2*x + 1"), parse_poly("y^2 - x")}, {"x", "y"});
    MultistartOptions opt;
    opt.n_starts = 60;
    opt.digits = 40;
    const auto rep = multistart_search(sys, opt);
    EXPECT_EQ(rep.solutions.size(), 6u);
    auto key = [](const Solution& s) {
        std::vector<std::complex<double>> k;
        for (const auto& v : s.values) k.push_back(v.to_complex_double());
        return k;
    };
    for (std::size_t i = 0; i < rep.solutions.size(); ++i)
        for (std::size_t j = 0; j < rep.solutions.size(); ++j) {
            const double dij = detail::solution_distance(key(rep.solutions[i]), key(rep.solutions[j]));
            const double dji = detail::solution_distance(key(rep.solutions[j]), key(rep.solutions[i]));
            EXPECT_EQ(dij, dji);
            // No two reported solutions are identified, so the relation is the identity.
            if (i != j) EXPECT_GE(dij, opt.dedup_tol);
        }
}

TEST(Staged, PrintedW12ReproducesPrintedBlock) {
    const int D = 50;
    const auto prob = Magnus8Problem::make();
    const auto printed = reference_f_block(D);
    std::map<std::string, MPComplex> f12;
    for (const auto& v : prob.vars12) f12.emplace(v, printed.at(v));
    const auto sol = staged_solve_magnus8(prob, f12, D);
    for (const auto* vars : {&prob.vars3, &prob.vars4})
        for (const auto& v : *vars) EXPECT_LT(abs(sol.assignment.at(v) - printed.at(v)).to_double(), 1e-45) << v;
    EXPECT_LT(sol.residual_all.to_double(), 1e-45);
}

TEST(Staged, MultistartSolutionsSatisfyAllConditions) {
    const int D = 50;
    const auto prob = Magnus8Problem::make();
    MultistartOptions opt;
    opt.n_starts = 200;
    opt.digits = D;
    opt.seed = 7;
    const PolySystem sys = prob.w12_system();
    const auto rep = multistart_search(sys, opt);
    ASSERT_FALSE(rep.solutions.empty());
    bool saw_real = false;
    for (const auto& s : rep.solutions) {
        EXPECT_LT(s.residual.to_double(), 1e-40);
        saw_real = saw_real || s.is_real;
        const auto full = staged_solve_magnus8(prob, s.assignment, D);
        EXPECT_LT(full.residual_all.to_double(), 1e-40);

        // Independent check of the reported residual through the 8 word coefficients.
        std::map<std::string, MPComplex> all = s.assignment;
        for (const auto* vars : {&prob.vars3, &prob.vars4})
            for (const auto& v : *vars) all.emplace(v, MPComplex(Precision{D}));
        const auto S = substitute_parameters(prob.ansatz.expression, all);
        std::vector<MPComplex> rhs;
        for (const auto& q : prob.rhs12) rhs.emplace_back(q, D);
        const MpReal r = residual_of_scheme(S, prob.words.w12, rhs, D);
        EXPECT_LE(std::abs(log10_floor(r, D) - log10_floor(s.residual, D)), 2.0);
    }
    EXPECT_TRUE(saw_real);
}

TEST(Symmetry, ConjugateOfComplexSchemeIsASolution) {
    const int D = 64;
    const auto prob = Magnus8Problem::make();
    auto f = inverse_quadrature_map(reference_table4(D));
    for (auto& row : f.f)
        for (auto& z : row) z = conj(z);
    EXPECT_LE(residual_of_scheme(scheme_expression(f), prob.words.all(), prob.all_rhs(D), D).to_double(), 1e-16);
}

TEST(Symmetry, SignFlippedMirrorReversesTheProduct) {
    // f_{j,k} -> (-1)^{k+1} f_{j,k} turns exponent j into exponent J+1-j, i.e. the
    // factor order is reversed. Reversal maps coeff(w, S) to coeff(reverse(w), S'),
    // so the mirrored parameters solve the conditions of the reversed words only.
    const int D = 60;
    const auto prob = Magnus8Problem::make();
    const auto f = reference_f_block(D);
    std::map<std::string, MPComplex> mirrored;
    for (const auto& [name, v] : f) mirrored.emplace(name, (name.back() - '0') % 2 == 1 ? v : -v);
    const auto S = scheme_expression(prob.parameters(f, D));
    const auto Sm = scheme_expression(prob.parameters(mirrored, D));
    for (const auto& w : prob.words.all()) {
        std::vector<std::size_t> rev(w.letters().rbegin(), w.letters().rend());
        EXPECT_LT(abs(wcoeff(Word(rev), Sm) - wcoeff(w, S)).to_double(), 1e-50);
    }
    EXPECT_GT(residual_of_scheme(Sm, prob.words.all(), prob.all_rhs(D), D).to_double(), 0.1);
}

TEST(Splitting, ExactSolution) {
    const auto ex = solve_splitting_example(50);
    EXPECT_EQ(ex.solution.at("a"), Rational(1, 2));
    EXPECT_EQ(ex.solution.at("b"), Rational(1, 6));
    EXPECT_EQ(ex.solution.at("c"), Rational(2, 3));
    EXPECT_EQ(ex.solution.at("d"), Rational(1, 72));
    for (const auto& e : ex.conditions.equations()) EXPECT_TRUE(poly_evaluate(e, ex.solution).is_zero());
}

TEST(Splitting, LeadingErrorOfDerivedScheme) {
    const auto ex = solve_splitting_example(50);
    const auto S = to_rational_expr(substitute_parameters(ex.ansatz, ex.solution));
    const auto t = leading_error_term(S - to_rational_expr(ex.target), AB, 5);
    ASSERT_TRUE(t.has_value());
    const std::vector<Rational> cb{Rational(1, 2880), Rational(-7, 8640), Rational(1, 2160),
                                   Rational(7, 12960), Rational(1, 4320), Rational(-41, 155520)};
    EXPECT_EQ(t->coefficients, cb);
}
