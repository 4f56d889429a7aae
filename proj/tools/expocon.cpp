// Command-line front end: every pipeline stage with JSON output.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "expocon/expocon.hpp"
#include "golden.hpp"

namespace fs = std::filesystem;
using namespace expocon;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_verify = 2;

struct RunConfig {
    int digits = 64;
    std::uint64_t seed = 1;
    std::string alphabet = "A:1,B:1";
    std::string expr;
    std::string word;
    std::string vars;
    std::string params;
    std::string in;
    std::string out;
    int order = 0;
    int grade = 0;
    int max_grade = 0;
    bool self_adjoint = false;
};

int env_digits() {
    if (const char* s = std::getenv("EXPOCON_DIGITS")) {
        try {
            return std::stoi(s);
        } catch (const std::exception&) {
            throw CLI::ValidationError("EXPOCON_DIGITS", std::string("not an integer: ") + s);
        }
    }
    return 64;
}

/// An argument naming an existing file is replaced by the file's content.
std::string text_or_file(const std::string& arg) {
    std::error_code ec;
    if (!arg.empty() && fs::is_regular_file(arg, ec)) {
        std::ifstream in(arg);
        std::stringstream ss;
        ss << in.rdbuf();
        std::string s = ss.str();
        while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ')) s.pop_back();
        return s;
    }
    return arg;
}

std::vector<std::string> split_names(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(0, item.find_first_not_of(' '));
        item.erase(item.find_last_not_of(' ') + 1);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

void emit(const json& j, const std::string& out) {
    if (out.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        write_json_file(out, j);
    }
}

json rational_list(const std::vector<Rational>& v) {
    json a = json::array();
    for (const auto& q : v) a.push_back(q.to_string());
    return a;
}

/// Parameter values from a JSON object name -> "p/q" | number string.
struct Params {
    std::vector<std::string> names;
    std::map<std::string, Rational> exact;
    std::map<std::string, MPComplex> numeric;
    bool all_exact = true;
};

Params load_params(const RunConfig& c) {
    Params p;
    p.names = split_names(c.vars);
    if (c.params.empty()) return p;
    const json j = c.params.front() == '{' ? json::parse(c.params) : read_json_file(c.params);
    for (const auto& [k, v] : j.items()) {
        const std::string s = v.is_string() ? v.get<std::string>() : v.dump();
        if (std::find(p.names.begin(), p.names.end(), k) == p.names.end()) p.names.push_back(k);
        p.numeric.emplace(k, parse_mpcomplex(s, c.digits));
        try {
            p.exact.emplace(k, Rational::parse(s));
        } catch (const Error&) {
            p.all_exact = false;
        }
    }
    return p;
}

int cmd_wcoeff(const RunConfig& c) {
    const auto alpha = GradedAlphabet::parse(c.alphabet);
    const Params p = load_params(c);
    const auto e = parse_expression(text_or_file(c.expr), alpha, p.names);
    const Word w = parse_word(c.word, alpha);
    json j{{"word", word_to_string(w, alpha)}};
    if (!p.numeric.empty() && !p.all_exact) {
        DigitsGuard g(c.digits);
        j["value"] = to_json(wcoeff(w, substitute_parameters(e, p.numeric)));
    } else {
        PolyRational v = wcoeff(w, substitute_parameters(e, p.exact));
        j["value"] = v.is_constant() ? to_json(v.constant_value()) : to_json(v);
    }
    emit(j, c.out);
    return exit_ok;
}

int cmd_expand(const RunConfig& c) {
    const auto alpha = GradedAlphabet::parse(c.alphabet);
    const Params p = load_params(c);
    const auto e = substitute_parameters(parse_expression(text_or_file(c.expr), alpha, p.names), p.exact);
    const auto s = series_of(e, alpha, c.max_grade);
    json terms = json::object();
    for (const auto& w : words_up_to_grade(alpha, c.max_grade)) {
        auto it = s.coefficients().find(w);
        if (it == s.coefficients().end()) continue;
        const auto& v = it->second;
        terms[word_to_string(w, alpha)] = v.is_constant() ? to_json(v.constant_value()) : to_json(v);
    }
    emit({{"max_grade", c.max_grade}, {"coefficients", terms}}, c.out);
    return exit_ok;
}

int cmd_ast(const RunConfig& c) {
    const auto alpha = GradedAlphabet::parse(c.alphabet);
    const auto e = parse_expression(text_or_file(c.expr), alpha, split_names(c.vars));
    emit({{"text", to_string(e, alpha)}, {"ast", expr_to_json(e, alpha)}}, c.out);
    return exit_ok;
}

int cmd_lyndon(const RunConfig& c, bool odd, bool brackets) {
    const auto alpha = GradedAlphabet::parse(c.alphabet);
    std::vector<Word> words;
    if (c.grade > 0) {
        words = lyndon_words_of_grade(alpha, c.grade);
    } else if (c.order > 0) {
        words = odd ? lyndon_words_of_odd_grade_up_to(alpha, c.order) : lyndon_words_up_to_grade(alpha, c.order);
    } else {
        throw CLI::ValidationError("lyndon", "give --grade or --order");
    }
    if (!brackets) {
        emit(word_list_json(words, alpha), c.out);
        return exit_ok;
    }
    json arr = json::array();
    for (const auto& w : words)
        arr.push_back({{"word", word_to_string(w, alpha)}, {"basis", lyndon_bracketing(w).to_string(alpha)}});
    emit(arr, c.out);
    return exit_ok;
}

int cmd_conditions(const RunConfig& c, const std::string& ansatz, const std::string& target) {
    const auto alpha = GradedAlphabet::parse(c.alphabet);
    const Params p = load_params(c);
    const auto S = substitute_parameters(parse_expression(text_or_file(ansatz), alpha, p.names), p.exact);
    OrderConditionSystem<PolyRational> sys;
    if (target == "magnus") {
        sys = order_conditions<PolyRational>(
            S, alpha, c.order, c.self_adjoint,
            [&](const Word& w) { return PolyRational(magnus_word_coefficient(w, alpha)); }, "magnus closed form");
    } else {
        const auto E = parse_expression(text_or_file(target), alpha, p.names);
        sys = order_conditions(S, E, alpha, c.order, c.self_adjoint);
    }
    json arr = json::array();
    const auto eqs = sys.equations();
    for (std::size_t i = 0; i < sys.size(); ++i)
        arr.push_back({{"word", word_to_string(sys.words[i], alpha)}, {"polynomial", eqs[i].to_string()}});
    emit({{"order", c.order}, {"self_adjoint", c.self_adjoint}, {"rhs_source", sys.rhs_source}, {"conditions", arr}},
         c.out);
    return exit_ok;
}

json leading_error_json(const std::optional<LeadingErrorTerm>& t, const GradedAlphabet& alpha) {
    if (!t) return {{"grade", nullptr}, {"terms", json::array()}};
    json terms = json::array();
    for (std::size_t i = 0; i < t->basis.size(); ++i)
        terms.push_back({{"word", word_to_string(t->words[i], alpha)},
                         {"basis", t->basis[i].to_string(alpha)},
                         {"c_w", t->word_coefficients[i].to_string()},
                         {"c_b", t->coefficients[i].to_string()}});
    return {{"grade", t->grade}, {"terms", terms}};
}

int cmd_leading_error(const RunConfig& c) {
    const auto alpha = GradedAlphabet::parse(c.alphabet);
    const auto X = parse_rational_expression(text_or_file(c.expr), alpha);
    emit(leading_error_json(leading_error_term(X, alpha, c.max_grade), alpha), c.out);
    return exit_ok;
}

int cmd_magnus_rhs(const RunConfig& c) {
    const auto alpha = c.alphabet == "A:1,B:1" ? GradedAlphabet::magnus(8) : GradedAlphabet::parse(c.alphabet);
    const Word w = parse_word(c.word, alpha);
    emit({{"word", word_to_string(w, alpha)}, {"value", magnus_word_coefficient(w, alpha).to_string()}}, c.out);
    return exit_ok;
}

int cmd_quadrature(const RunConfig& c, bool inverse) {
    auto file = scheme_from_json(read_json_file(c.in), c.digits);
    const auto rule = QuadratureRule::gauss4(c.digits);
    if (inverse) {
        if (!file.a) throw ShapeError("--inverse needs an 'a' block");
        const auto f = inverse_quadrature_map(*file.a);
        emit(scheme_to_json(&f, &*file.a, rule), c.out);
    } else {
        if (!file.f) throw ShapeError("quadrature needs an 'f' block");
        const auto a = quadrature_map(*file.f, rule);
        emit(scheme_to_json(&*file.f, &a, rule), c.out);
    }
    return exit_ok;
}

int cmd_solve(const RunConfig& c, const std::string& system, int starts) {
    const PolySystem sys = system_from_json(read_json_file(system));
    MultistartOptions opt;
    opt.n_starts = starts;
    opt.digits = c.digits;
    opt.seed = c.seed;
    emit(report_to_json(multistart_search(sys, opt)), c.out);
    return exit_ok;
}

int cmd_verify(const RunConfig& c, const std::string& scheme, double tol) {
    auto file = scheme_from_json(read_json_file(scheme), c.digits);
    const SchemeParameters f = file.f ? *file.f : inverse_quadrature_map(*file.a);
    const auto alpha = GradedAlphabet::magnus(static_cast<int>(f.K()));
    const int p = c.order > 0 ? c.order : 8;
    const auto words = lyndon_words_of_odd_grade_up_to(alpha, p);
    std::vector<MPComplex> rhs;
    for (const auto& w : words) rhs.emplace_back(magnus_word_coefficient(w, alpha), c.digits);
    const auto S = scheme_expression(f);
    const MpReal res = residual_of_scheme(S, words, rhs, c.digits);
    const bool self_adj = is_self_adjoint(S, alpha, p, tol);
    json pos = json::array();
    for (bool b : positivity_check(f)) pos.push_back(b);
    const bool ok = res.to_double() <= tol && self_adj;
    emit({{"order", p},
          {"conditions", words.size()},
          {"digits", c.digits},
          {"residual", res.to_string(6)},
          {"tolerance", tol},
          {"self_adjoint", self_adj},
          {"positivity", pos},
          {"passed", ok}},
         c.out);
    return ok ? exit_ok : exit_verify;
}

// repro targets

int repro_strang(const RunConfig& c) {
    const auto alpha = GradedAlphabet::uniform({"A", "B"});
    const auto X = parse_rational_expression(golden::strang_expr, alpha);
    bool ok = true;
    json coeffs = json::array();
    std::size_t i = 0;
    for (const auto& w : words_up_to_grade(alpha, 3)) {
        if (w.empty()) continue;
        const Rational v = wcoeff(w, X);
        ok = ok && v == Rational::parse(golden::strang_coefficients[i++]);
        coeffs.push_back({{"word", word_to_string(w, alpha)}, {"value", v.to_string()}});
    }
    const auto t = leading_error_term(X, alpha, 3);
    ok = ok && t && t->grade == 3 && t->basis.size() == 2;
    for (std::size_t k = 0; ok && k < 2; ++k)
        ok = t->basis[k].to_string(alpha) == golden::strang_basis[k] &&
             t->coefficients[k] == Rational::parse(golden::strang_error[k]);
    emit({{"target", "strang"}, {"coefficients", coeffs}, {"leading_error", leading_error_json(t, alpha)},
          {"matches_golden", ok}},
         c.out);
    return ok ? exit_ok : exit_verify;
}

int repro_splitting4(const RunConfig& c) {
    const auto ex = solve_splitting_example(c.digits);
    const auto& alpha = ex.alphabet;
    bool ok = true;
    const auto eqs = ex.conditions.equations();
    json eq_json = json::array();
    for (std::size_t i = 0; i < eqs.size(); ++i) {
        ok = ok && eqs[i] == parse_poly(golden::splitting_equations[i]);
        eq_json.push_back({{"word", word_to_string(ex.conditions.words[i], alpha)}, {"polynomial", eqs[i].to_string()}});
    }
    json sol = json::object();
    for (const auto& [name, value] : golden::splitting_solution) {
        ok = ok && ex.solution.at(name) == Rational::parse(value);
        sol[name] = ex.solution.at(name).to_string();
    }
    const auto scheme = to_rational_expr(substitute_parameters(ex.ansatz, ex.solution));
    const auto X = scheme - to_rational_expr(ex.target);
    const auto t = leading_error_term(X, alpha, 5);
    ok = ok && t && t->grade == 5 && t->T.size() == 6;
    json T = json::array();
    if (t) {
        for (std::size_t r = 0; r < t->T.size(); ++r) {
            json row = json::array();
            for (std::size_t k = 0; k < t->T[r].size(); ++k) {
                ok = ok && t->T[r][k] == Rational(golden::T5[r][k]);
                row.push_back(t->T[r][k].to_short_string());
            }
            T.push_back(row);
        }
        for (std::size_t k = 0; ok && k < 6; ++k)
            ok = t->word_coefficients[k] == Rational::parse(golden::splitting_cw[k]) &&
                 t->coefficients[k] == Rational::parse(golden::splitting_cb[k]);
    }
    emit({{"target", "splitting4"},
          {"equations", eq_json},
          {"solution", sol},
          {"T5", T},
          {"leading_error", leading_error_json(t, alpha)},
          {"matches_golden", ok}},
         c.out);
    return ok ? exit_ok : exit_verify;
}

int repro_magnus8(const RunConfig& c) {
    const int D = std::max(c.digits, 60);
    DigitsGuard guard(D);
    const auto prob = Magnus8Problem::make();
    bool ok = true;
    auto check_rhs = [&](const std::vector<Rational>& got, const auto& want) {
        for (std::size_t i = 0; i < got.size(); ++i) ok = ok && got[i] == Rational::parse(want[i]);
        return rational_list(got);
    };
    json rhs{{"rhs12", check_rhs(prob.rhs12, golden::rhs12)},
             {"rhs3", check_rhs(prob.rhs3, golden::rhs3)},
             {"rhs4", check_rhs(prob.rhs4, golden::rhs4)}};

    // Staged solve from the printed W12 block.
    const auto printed = reference_f_block(D);
    std::map<std::string, MPComplex> f12;
    for (const auto& v : prob.vars12) f12.emplace(v, printed.at(v));
    const auto sol = staged_solve_magnus8(prob, f12, D);
    MpReal stage_err(Precision{D});
    for (const auto& [name, value] : printed) {
        MpReal e = abs(sol.assignment.at(name) - value);
        if (e > stage_err) stage_err = e;
    }
    ok = ok && stage_err.to_double() < 1e-45 && sol.residual_all.to_double() < 1e-45;

    // Tables: recover f by the inverse quadrature map and check all 22 conditions.
    const auto words = prob.words.all();
    const auto rhs_all = prob.all_rhs(D);
    const auto f3 = inverse_quadrature_map(reference_table3(D));
    const auto f4 = inverse_quadrature_map(reference_table4(D));
    const MpReal r3 = residual_of_scheme(scheme_expression(f3), words, rhs_all, D);
    const MpReal r4 = residual_of_scheme(scheme_expression(f4), words, rhs_all, D);
    const bool pos3 = positivity_holds(f3), pos4 = positivity_holds(f4);
    ok = ok && r3.to_double() <= 1e-16 && r4.to_double() <= 1e-16 && !pos3 && pos4;

    emit({{"target", "magnus8"},
          {"digits", D},
          {"rhs", rhs},
          {"staged_max_deviation_from_printed", stage_err.to_string(6)},
          {"staged_residual_22", sol.residual_all.to_string(6)},
          {"table3_residual_22", r3.to_string(6)},
          {"table3_positivity", pos3},
          {"table4_residual_22", r4.to_string(6)},
          {"table4_positivity", pos4},
          {"matches_golden", ok}},
         c.out);
    return ok ? exit_ok : exit_verify;
}

int cmd_magnus8_pipeline(const RunConfig& c, int starts) {
    const auto prob = Magnus8Problem::make();
    MultistartOptions opt;
    opt.n_starts = starts;
    opt.digits = c.digits;
    opt.seed = c.seed;
    const auto report = multistart_search(prob.w12_system(), opt);
    const auto rule = QuadratureRule::gauss4(c.digits);
    json schemes = json::array();
    bool ok = !report.solutions.empty();
    const double tol = std::pow(10.0, -(c.digits - 10));
    for (std::size_t i = 0; i < report.solutions.size(); ++i) {
        json entry{{"index", i}, {"is_real", report.solutions[i].is_real},
                   {"residual12", report.solutions[i].residual.to_string(6)}};
        try {
            const auto s = staged_solve_magnus8(prob, report.solutions[i].assignment, c.digits);
            const auto a = quadrature_map(s.f, rule);
            json j = scheme_to_json(&s.f, &a, rule);
            entry["residual22"] = s.residual_all.to_string(6);
            entry["positivity"] = positivity_holds(s.f);
            ok = ok && s.residual_all.to_double() < tol;
            if (!c.out.empty()) {
                fs::create_directories(c.out);
                const std::string path = (fs::path(c.out) / ("scheme_" + std::to_string(i) + ".json")).string();
                write_json_file(path, j);
                entry["file"] = path;
            }
        } catch (const SingularMatrixError& e) {
            entry["error"] = e.what();
            ok = false;
        }
        schemes.push_back(entry);
    }
    std::cout << json{{"starts_tried", report.starts_tried},
                      {"solutions", report.solutions.size()},
                      {"digits", c.digits},
                      {"seed", c.seed},
                      {"schemes", schemes},
                      {"passed", ok}}
                     .dump(2)
              << "\n";
    return ok ? exit_ok : exit_verify;
}

void print_error(const ParseError& e, const std::string& text) {
    std::cerr << "error: " << e.what() << "\n";
    if (!text.empty() && e.position() <= text.size()) std::cerr << "  " << text << "\n  " << std::string(e.position(), ' ') << "^\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coefficients of words in noncommutative exponential expressions"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig c;
    try {
        c.digits = env_digits();
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    app.add_option("--digits", c.digits, "working precision in decimal digits (default: EXPOCON_DIGITS or 64)")
        ->check(CLI::Range(16, 100000));
    app.add_option("--seed", c.seed, "random seed");
    app.add_option("--alphabet", c.alphabet, "symbols with grades, e.g. \"A:1,B:1\"");
    app.add_option("--out", c.out, "write JSON to this file instead of stdout");

    auto* wc = app.add_subcommand("wcoeff", "coefficient of a word in an expression");
    wc->add_option("--expr", c.expr, "expression text or file")->required();
    wc->add_option("--word", c.word, "word, e.g. \"A A B\"")->required();
    wc->add_option("--vars", c.vars, "comma-separated parameter names");
    wc->add_option("--params", c.params, "JSON file or object with parameter values");

    auto* ex = app.add_subcommand("expand", "truncated series expansion");
    ex->add_option("--expr", c.expr, "expression text or file")->required();
    ex->add_option("--max-grade", c.max_grade, "truncation grade")->required();
    ex->add_option("--vars", c.vars, "comma-separated parameter names");
    ex->add_option("--params", c.params, "JSON file or object with parameter values");

    auto* as = app.add_subcommand("ast", "parse an expression and print its tree");
    as->add_option("--expr", c.expr, "expression text or file")->required();
    as->add_option("--vars", c.vars, "comma-separated parameter names");

    bool odd = false, brackets = false;
    auto* ly = app.add_subcommand("lyndon", "Lyndon words by grade");
    ly->add_option("--grade", c.grade, "exact grade");
    ly->add_option("--order", c.order, "all grades up to this order");
    ly->add_flag("--odd", odd, "odd grades only (with --order)");
    ly->add_flag("--brackets", brackets, "include the Lyndon bracketing");

    std::string ansatz, target = "magnus";
    auto* co = app.add_subcommand("conditions", "order conditions of an ansatz");
    co->add_option("--ansatz", ansatz, "parametric scheme expression or file")->required();
    co->add_option("--target", target, "target expression or file, or 'magnus' for e^Omega")->required();
    co->add_option("--order", c.order, "order p")->required();
    co->add_option("--vars", c.vars, "comma-separated parameter names");
    co->add_option("--params", c.params, "JSON with values for some parameters");
    co->add_flag("--self-adjoint", c.self_adjoint, "odd-grade conditions only");

    auto* le = app.add_subcommand("leading-error", "leading error term in the Lyndon basis");
    le->add_option("--expr", c.expr, "expression text or file")->required();
    le->add_option("--max-grade", c.max_grade, "highest grade to search")->required();

    auto* mr = app.add_subcommand("magnus-rhs", "closed-form coefficient of a word in e^Omega");
    mr->add_option("--word", c.word, "word over A1, A2, ...")->required();

    bool inverse = false;
    auto* qu = app.add_subcommand("quadrature", "map f-coefficients to node coefficients a");
    qu->add_option("--in", c.in, "scheme JSON")->required();
    qu->add_flag("--inverse", inverse, "map a back to f");

    std::string system;
    int starts = 100;
    auto* so = app.add_subcommand("solve", "multistart Newton on a polynomial system");
    so->add_option("--system", system, "system JSON {variables, equations}")->required();
    so->add_option("--starts", starts, "number of random starts");

    std::string scheme;
    double tol = 1e-16;
    auto* ve = app.add_subcommand("verify", "residual of a Magnus-type scheme");
    ve->add_option("--scheme", scheme, "scheme JSON")->required();
    ve->add_option("--order", c.order, "order p (default 8)");
    ve->add_option("--tol", tol, "maximal accepted residual");

    std::string target_name;
    auto* re = app.add_subcommand("repro", "reproduce a published computation and diff against golden data");
    re->add_option("target", target_name, "strang | splitting4 | magnus8")
        ->required()
        ->check(CLI::IsMember({"strang", "splitting4", "magnus8"}));

    bool pipeline = false;
    int pipeline_starts = 2000;
    auto* m8 = app.add_subcommand("magnus8", "8th-order Magnus-type scheme search");
    m8->add_flag("--pipeline", pipeline, "multistart, staged solves, scheme export")->required();
    m8->add_option("--starts", pipeline_starts, "number of random starts");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*wc) return cmd_wcoeff(c);
        if (*ex) return cmd_expand(c);
        if (*as) return cmd_ast(c);
        if (*ly) return cmd_lyndon(c, odd, brackets);
        if (*co) return cmd_conditions(c, ansatz, target);
        if (*le) return cmd_leading_error(c);
        if (*mr) return cmd_magnus_rhs(c);
        if (*qu) return cmd_quadrature(c, inverse);
        if (*so) return cmd_solve(c, system, starts);
        if (*ve) return cmd_verify(c, scheme, tol);
        if (*re) {
            if (target_name == "strang") return repro_strang(c);
            if (target_name == "splitting4") return repro_splitting4(c);
            return repro_magnus8(c);
        }
        if (*m8) return cmd_magnus8_pipeline(c, pipeline_starts);
    } catch (const ParseError& e) {
        print_error(e, *co ? text_or_file(ansatz) : text_or_file(c.expr));
        return exit_usage;
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
