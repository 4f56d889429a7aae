#pragma once

#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "expocon/conditions.hpp"
#include "expocon/expr.hpp"
#include "expocon/error.hpp"
#include "expocon/magnus.hpp"
#include "expocon/mpcomplex.hpp"
#include "expocon/poly.hpp"
#include "expocon/rational.hpp"
#include "expocon/reference_data.hpp"
#include "expocon/solver.hpp"
#include "expocon/words.hpp"

namespace expocon {

using json = nlohmann::ordered_json;

inline json to_json(const Rational& q) { return q.to_string(); }
inline json to_json(const MPComplex& z) { return z.to_string(); }
inline json to_json(const PolyRational& p) { return p.to_string(); }

inline json to_json(const Matrix<MPComplex>& m) {
    json rows = json::array();
    for (const auto& r : m) {
        json row = json::array();
        for (const auto& z : r) row.push_back(to_json(z));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Matrix<MPComplex> matrix_from_json(const json& j, int digits) {
    Matrix<MPComplex> m;
    for (const auto& r : j) {
        std::vector<MPComplex> row;
        for (const auto& z : r) row.push_back(parse_mpcomplex(z.get<std::string>(), digits));
        m.push_back(std::move(row));
    }
    return m;
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what(), e.byte);
    }
}

inline void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

inline bool is_complex(const Matrix<MPComplex>& m) {
    for (const auto& r : m)
        for (const auto& z : r)
            if (!z.imag().is_zero()) return true;
    return false;
}

/// {J, K, rule:{nodes, weights, digits}, f, a, complex}; f or a may be absent.
inline json scheme_to_json(const SchemeParameters* f, const QuadratureScheme* a, const QuadratureRule& rule) {
    json j;
    const Matrix<MPComplex>& any = f ? f->f : a->a;
    j["J"] = any.size();
    j["K"] = any.empty() ? 0 : any[0].size();
    j["rule"] = {{"nodes", rule.node_text}, {"weights", rule.weight_text}, {"digits", rule.digits}};
    if (f) j["f"] = to_json(f->f);
    if (a) j["a"] = to_json(a->a);
    j["complex"] = (f && is_complex(f->f)) || (a && is_complex(a->a));
    return j;
}

/// Printed node coefficients: {a} of decimal strings, or {a_real, a_imag}.
inline QuadratureScheme table_from_json(const json& j, int digits) {
    QuadratureScheme s;
    s.rule = QuadratureRule::gauss4(digits);
    const bool cplx = j.contains("a_real");
    const json& re = cplx ? j.at("a_real") : j.at("a");
    for (std::size_t r = 0; r < re.size(); ++r) {
        std::vector<MPComplex> row;
        for (std::size_t l = 0; l < re[r].size(); ++l) {
            MpReal x = MpReal::parse(re[r][l].get<std::string>(), digits);
            MpReal y = cplx ? MpReal::parse(j.at("a_imag")[r][l].get<std::string>(), digits) : MpReal(Precision{digits});
            row.emplace_back(std::move(x), std::move(y));
        }
        s.a.push_back(std::move(row));
    }
    return s;
}

struct SchemeFile {
    std::optional<SchemeParameters> f;
    std::optional<QuadratureScheme> a;
    int digits = 0;
};

inline SchemeFile scheme_from_json(const json& j, int digits) {
    SchemeFile s;
    s.digits = digits;
    const QuadratureRule rule = QuadratureRule::gauss4(digits);
    if (j.contains("f")) s.f = SchemeParameters{matrix_from_json(j.at("f"), digits)};
    if (j.contains("a")) s.a = QuadratureScheme{matrix_from_json(j.at("a"), digits), rule};
    if (j.contains("a_real")) s.a = table_from_json(j, digits);
    if (!s.f && !s.a) throw ShapeError("scheme JSON needs an 'f' or an 'a' block");
    return s;
}

/// Debug view of the expression tree: {"node": kind, ...children}.
template <ScalarRing R>
json expr_to_json(const Expr<R>& e, const GradedAlphabet& alphabet) {
    return std::visit(
        [&](const auto& x) -> json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, node::Symbol>) {
                return {{"node", "symbol"}, {"name", alphabet.name(x.index)}};
            } else if constexpr (std::is_same_v<T, node::Sum<R>>) {
                json terms = json::array();
                for (const auto& t : x.terms) terms.push_back(expr_to_json(t, alphabet));
                return {{"node", "sum"}, {"terms", terms}};
            } else if constexpr (std::is_same_v<T, node::Scaled<R>>) {
                return {{"node", "scaled"}, {"scalar", to_json(x.scalar)}, {"operand", expr_to_json(x.operand, alphabet)}};
            } else if constexpr (std::is_same_v<T, node::Product<R>>) {
                json factors = json::array();
                for (const auto& f : x.factors) factors.push_back(expr_to_json(f, alphabet));
                return {{"node", "product"}, {"factors", factors}};
            } else if constexpr (std::is_same_v<T, node::Power<R>>) {
                return {{"node", "power"}, {"base", expr_to_json(x.base, alphabet)}, {"exponent", x.exponent}};
            } else if constexpr (std::is_same_v<T, node::Commutator<R>>) {
                return {{"node", "commutator"},
                        {"left", expr_to_json(x.left, alphabet)},
                        {"right", expr_to_json(x.right, alphabet)}};
            } else {
                return {{"node", "exp"}, {"operand", expr_to_json(x.operand, alphabet)}};
            }
        },
        e.node());
}

inline json word_list_json(const std::vector<Word>& words, const GradedAlphabet& alphabet) {
    json arr = json::array();
    for (const auto& w : words) arr.push_back(word_to_string(w, alphabet));
    return arr;
}

inline json system_to_json(const PolySystem& sys) {
    json eqs = json::array();
    for (const auto& e : sys.equations) eqs.push_back(e.to_string());
    return {{"variables", sys.variables}, {"equations", eqs}};
}

inline PolySystem system_from_json(const json& j) {
    std::vector<PolyRational> eqs;
    for (const auto& e : j.at("equations")) eqs.push_back(parse_poly(e.get<std::string>()));
    std::vector<std::string> vars;
    if (j.contains("variables")) vars = j.at("variables").get<std::vector<std::string>>();
    return PolySystem(std::move(eqs), std::move(vars));
}

inline json report_to_json(const SolveReport& r) {
    json sols = json::array();
    for (const auto& s : r.solutions) {
        json a = json::object();
        for (const auto& v : r.variables) a[v] = to_json(s.assignment.at(v));
        sols.push_back({{"assignment", a}, {"residual", s.residual.to_string(6)}, {"is_real", s.is_real}});
    }
    return {{"variables", r.variables},
            {"starts_tried", r.starts_tried},
            {"starts_converged", r.starts_converged},
            {"digits", r.digits},
            {"solutions", sols}};
}

// Shipped reference data.

namespace detail {

inline Matrix<MPComplex> parse_table(const char* const (&re)[8][4], const char* const (*im)[8][4], int digits) {
    Matrix<MPComplex> m(8);
    for (int j = 0; j < 8; ++j)
        for (int l = 0; l < 4; ++l)
            m[j].push_back(MPComplex(MpReal::parse(re[j][l], digits),
                                     im ? MpReal::parse((*im)[j][l], digits) : MpReal(Precision{digits})));
    return m;
}

}  // namespace detail

/// The real 8-exponential scheme as printed (19 significant digits).
inline QuadratureScheme reference_table3(int digits) {
    return {detail::parse_table(reference::table3_a, nullptr, digits), QuadratureRule::gauss4(digits)};
}

/// The complex scheme satisfying the positivity condition.
inline QuadratureScheme reference_table4(int digits) {
    return {detail::parse_table(reference::table4_a_real, &reference::table4_a_imag, digits),
            QuadratureRule::gauss4(digits)};
}

/// Printed f_{j,k}, rows 1..4, as an assignment of the ansatz parameters.
inline std::map<std::string, MPComplex> reference_f_block(int digits) {
    std::map<std::string, MPComplex> m;
    for (int j = 1; j <= 4; ++j)
        for (int k = 1; k <= 4; ++k)
            m.emplace(ansatz_parameter_name("f", j, k), parse_mpcomplex(reference::f_block[j - 1][k - 1], digits));
    return m;
}

/// Loads data/table3.json or data/table4.json.
inline QuadratureScheme load_table_file(const std::string& path, int digits) {
    return table_from_json(read_json_file(path), digits);
}

}  // namespace expocon
