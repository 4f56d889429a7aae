#pragma once

// Published outputs the repro targets are diffed against, stored verbatim.

namespace golden {

// Strang splitting local error: coefficients of the 14 words of length 1..3
// over {A, B} in lexicographic order, and its leading error term.
inline constexpr const char* strang_expr = "exp(1/2*B)*exp(A)*exp(1/2*B) - exp(A+B)";
inline constexpr const char* strang_coefficients[14] = {"0", "0", "0", "0", "0", "0", "0",
                                                        "1/12", "-1/6", "-1/24", "1/12", "1/12", "-1/24", "0"};
inline constexpr const char* strang_basis[2] = {"[A,[A,B]]", "[[A,B],B]"};
inline constexpr const char* strang_error[2] = {"1/12", "-1/24"};

// Symmetric 5-exponential splitting of order 4.
inline constexpr const char* splitting_equations[4] = {
    "-1+2*a", "-1+2*b+c", "-1/6+2*a^2*b+1/2*a^2*c", "-1/6+1/2*a*c^2+a*c*b+a*b^2-d"};
inline constexpr const char* splitting_solution[4][2] = {{"a", "1/2"}, {"b", "1/6"}, {"c", "2/3"}, {"d", "1/72"}};
inline constexpr int T5[6][6] = {{1, 0, 0, 0, 0, 0},  {0, 1, 0, 0, 0, 0}, {0, -2, 1, 0, 0, 0},
                                 {0, 0, 0, 1, 0, 0},  {0, 0, 0, -3, 1, 0}, {0, 0, 0, 0, 0, 1}};
inline constexpr const char* splitting_cw[6] = {"1/2880", "-7/8640", "1/480", "7/12960", "-1/720", "-41/155520"};
inline constexpr const char* splitting_cb[6] = {"1/2880", "-7/8640", "1/2160", "7/12960", "1/4320", "-41/155520"};

// Right-hand sides coeff(w, e^Omega) for the three word groups.
inline constexpr const char* rhs12[8] = {"1", "-1/6", "-1/40", "1/60", "-1/1008", "1/420", "1/2520", "-1/840"};
inline constexpr const char* rhs3[9] = {"0", "1/60", "-1/30", "1/420", "-1/168", "1/280", "-1/840", "1/420", "-1/210"};
inline constexpr const char* rhs4[5] = {"0", "-1/840", "1/210", "-1/140", "-1/70"};

}  // namespace golden
