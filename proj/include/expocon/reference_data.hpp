#pragma once

// Published 8-exponential Magnus-type scheme data (19 printed digits for the
// node coefficients a_{j,l}, 50 printed digits for the exponent coefficients
// f_{j,k} of rows 1..4; rows 5..8 follow from the mirror rule).

namespace expocon::reference {

inline constexpr int table_digits = 19;
inline constexpr int f_block_digits = 50;

/// Real scheme, a[j-1][l-1].
inline constexpr const char* table3_a[8][4] = {
    {"-1.232611007291861933e+0", "1.381999278877963415e-1", "-3.352921035850962622e-2", "6.861942424401394962e-3"},
    {"1.452637092757343214e+0", "-1.632549976033022450e-1", "3.986114827352239259e-2", "-8.211316003097062961e-3"},
    {"-1.783965547974815151e-2", "-8.850494961553933912e-2", "-1.299159096777419811e-2", "4.448254906109529464e-3"},
    {"-2.982838328015747208e-2", "4.530735723950198008e-1", "-6.781322579940055086e-3", "-1.529505464262590422e-3"},
    {"-1.529505464262590422e-3", "-6.781322579940055086e-3", "4.530735723950198008e-1", "-2.982838328015747208e-2"},
    {"4.448254906109529464e-3", "-1.299159096777419811e-2", "-8.850494961553933912e-2", "-1.783965547974815151e-2"},
    {"-8.211316003097062961e-3", "3.986114827352239259e-2", "-1.632549976033022450e-1", "1.452637092757343214e+0"},
    {"6.861942424401394962e-3", "-3.352921035850962622e-2", "1.381999278877963415e-1", "-1.232611007291861933e+0"},
};

/// Complex scheme satisfying Re f_{j,1} > 0: real parts.
inline constexpr const char* table4_a_real[8][4] = {
    {"5.162172083124911076e-2", "-5.787809823308952456e-3", "1.404202563971892685e-3", "-2.873779919999358082e-4"},
    {"1.129000600487386325e-1", "-1.811008163470541820e-2", "8.982553129811831365e-3", "-2.544930699554437791e-3"},
    {"2.631601314221973826e-2", "1.983998701294184106e-1", "-4.965939955061425298e-2", "1.197843408520720342e-2"},
    {"-1.592059248033346570e-2", "1.424220211513735403e-1", "4.842122146532602005e-2", "-1.013590436679991693e-2"},
    {"-1.013590436679991693e-2", "4.842122146532602005e-2", "1.424220211513735403e-1", "-1.592059248033346570e-2"},
    {"1.197843408520720342e-2", "-4.965939955061425298e-2", "1.983998701294184106e-1", "2.631601314221973826e-2"},
    {"-2.544930699554437791e-3", "8.982553129811831365e-3", "-1.811008163470541820e-2", "1.129000600487386325e-1"},
    {"-2.873779919999358082e-4", "1.404202563971892685e-3", "-5.787809823308952456e-3", "5.162172083124911076e-2"},
};

/// Imaginary parts.
inline constexpr const char* table4_a_imag[8][4] = {
    {"-1.187198036084005914e-1", "1.331082409655082917e-2", "-3.229389682031679030e-3", "6.609128526175740449e-4"},
    {"1.359790143178213473e-1", "3.226637801235380303e-3", "-5.647440118497178834e-3", "1.831962429052182520e-3"},
    {"-1.952925932474600076e-2", "4.339859420803126316e-2", "4.884840043796339250e-3", "-1.849278537972746835e-3"},
    {"3.513884130112852023e-3", "-7.185755041597012718e-2", "1.591348406688517315e-2", "-1.887432258484616938e-3"},
    {"-1.887432258484616938e-3", "1.591348406688517315e-2", "-7.185755041597012718e-2", "3.513884130112852023e-3"},
    {"-1.849278537972746835e-3", "4.884840043796339250e-3", "4.339859420803126316e-2", "-1.952925932474600076e-2"},
    {"1.831962429052182520e-3", "-5.647440118497178834e-3", "3.226637801235380303e-3", "1.359790143178213473e-1"},
    {"6.609128526175740449e-4", "-3.229389682031679030e-3", "1.331082409655082917e-2", "-1.187198036084005914e-1"},
};

/// f[j-1][k-1] for j = 1..4 of the real scheme.
inline constexpr const char* f_block[4][4] = {
    {"-1.1210783473381738227756934594506597445892745485109", "1.0089705126043564404981241135055937701303470936598", "-0.78475484313672167594298542161546182121249218395766", "0.44843133893526952911027738378026389783570981940438"},
    {"1.3210319274244662988569102191161576010502669814859", "-1.1889339712738696420578749909323697235681087890036", "0.92477328275109744272940525314314765421496759253486", "-0.52881775248948867348601923353730351864984279845615"},
    {"-0.11488794115695215928140654449977903918312514606917", "0.44866039420480983666929215062389499923245100101695e-1", "0.24950727790821017623386132247659342458740875944374e-1", "-0.24298790613584639672784191664606712944260031094723e-1"},
    {"0.41493436107065968320018978483428118272213271309425", "-0.13197275582656085011222031954705867101347489961070", "-0.16496916740519678440980596377534517546121628452158", "0.19795913373984127516833047932058800652021234941605"},
};

}  // namespace expocon::reference
