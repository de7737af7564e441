#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "descent/cyclotomic.hpp"
#include "descent/numeric.hpp"
#include "descent/witness.hpp"

namespace descent::reference {

/// Known proportions of odd statistics: (n, numerator, denominator).
/// Only one representative per binary-ones count is needed.
inline const std::vector<std::tuple<int, u64, u64>>& rho_values() {
    static const std::vector<std::tuple<int, u64, u64>> v = {
        {1, 1, 1}, {3, 1, 2}, {7, 1, 2}, {15, 29, 64}, {31, 3991, 8192}};
    return v;
}

/// Exact degrees of Q_n (the zigzag numbers) for n = 3..13.
inline const std::vector<std::pair<int, u64>>& exact_degrees() {
    static const std::vector<std::pair<int, u64>> v = {
        {3, 2},        {4, 5},        {5, 16},       {6, 61},
        {7, 272},      {8, 1385},     {9, 7936},     {10, 50521},
        {11, 353792},  {12, 2702765}, {13, 22368256}};
    return v;
}

/// Known cyclotomic factor lists with multiplicities, 3 <= n <= 23.
/// The list for n = 16 includes Phi_2860, missing from the earlier
/// published table.
inline const std::map<int, std::vector<FactorEntry>>& known_factors() {
    static const std::map<int, std::vector<FactorEntry>> m = {
        {3, {{2, 1}}},
        {4, {{4, 2}}},
        {5, {{2, 2}, {10, 1}}},
        {6, {{2, 2}, {6, 2}, {10, 1}}},
        {7, {{2, 1}}},
        {8, {{4, 2}, {28, 1}}},
        {9, {{2, 2}, {6, 1}, {18, 1}}},
        {10, {{2, 2}, {6, 1}, {10, 2}, {18, 1}, {30, 1}}},
        {11, {{2, 1}, {6, 1}, {22, 1}}},
        {12, {{2, 2}, {6, 1}, {10, 1}, {18, 1}, {22, 2}, {66, 1}, {110, 1}, {198, 1}}},
        {13, {{2, 1}, {26, 1}}},
        {14, {{2, 2}, {4, 1}, {14, 2}, {26, 1}, {28, 1}, {182, 1}}},
        {15, {}},
        {16, {{4, 2}, {12, 1}, {20, 1}, {44, 1}, {52, 1}, {60, 1}, {156, 1}, {220, 1},
              {260, 1}, {572, 1}, {2860, 1}}},
        {17, {{2, 2}, {34, 1}}},
        {18, {{2, 2}, {6, 2}, {18, 1}, {34, 1}, {102, 1}, {306, 1}}},
        {19, {{2, 1}, {38, 1}}},
        {20, {{2, 2},   {6, 1},   {10, 1},  {30, 1},  {34, 1},   {38, 2},
              {102, 1}, {114, 1}, {170, 1}, {190, 1}, {510, 1},  {570, 1},
              {646, 1}, {1938, 1}, {3230, 1}, {9690, 1}}},
        {21, {{2, 1}, {6, 1}, {14, 1}, {42, 1}}},
        {22, {{2, 2}, {14, 1}, {22, 2}, {154, 1}}},
        {23, {}},
    };
    return m;
}

/// Equivalency classes {a, b} mod g making the smaller power of two
/// non-essential in base p, for the four published primes.
inline const std::map<u64, std::set<std::pair<int, int>>>& exponent_classes() {
    static const std::map<u64, std::set<std::pair<int, int>>> m = {
        {3, {{0, 1}, {1, 1}}},
        {5, {{0, 2}, {1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 3}}},
        {11, {{0, 5}, {1, 5}, {1, 6}, {2, 3}, {2, 5}, {2, 6}, {2, 7}, {3, 3}, {3, 4}, {3, 5},
              {3, 6}, {3, 7}, {3, 8}, {3, 9}, {4, 5}, {4, 6}, {4, 7}, {4, 9}, {5, 5}, {5, 6},
              {5, 7}, {5, 8}, {5, 9}, {6, 6}, {6, 7}, {6, 8}, {6, 9}, {7, 7}, {7, 9}, {9, 9}}},
        {17, {{0, 4}, {1, 4}, {1, 5}, {2, 4}, {2, 5}, {2, 6}, {3, 4}, {3, 5}, {3, 6}, {3, 7},
              {4, 4}, {4, 5}, {4, 6}, {4, 7}, {5, 5}, {5, 6}, {5, 7}, {6, 6}, {6, 7}, {7, 7}}},
    };
    return m;
}

/// How a published witness row is certified.
enum class RowKind {
    search,   // s from the divisor search, k a listed flip element
    rule,     // one of the named exponent-congruence rules
    digit,    // direct base-p digit carries (the mod-G refinements)
    outlier,  // the n = 11 factor Phi_6, proven by its own argument
};

struct WitnessRow {
    u64 n;
    u64 s;
    u64 k;
    RowKind kind;
    NamedRule rule = NamedRule::split_half;  // meaningful when kind == rule
};

/// Published one-digit rows (n = 2^a, factor Phi_4s). Two of the n = 16
/// rows are stored with their k values interchanged relative to the printed
/// table: C(16,2) = 120 is divisible by 3 and 15 but not 39, while
/// C(16,5) = 4368 is divisible by 39 but not 15.
inline std::vector<WitnessRow> one_digit_rows() {
    std::vector<WitnessRow> rows = {
        {4, 1, 1, RowKind::search},   {8, 1, 1, RowKind::search},
        {8, 7, 2, RowKind::search},   {16, 1, 1, RowKind::search},
        {16, 5, 7, RowKind::search},  {16, 11, 7, RowKind::search},
        {16, 13, 7, RowKind::search}, {16, 55, 7, RowKind::search},
        {16, 65, 7, RowKind::search}, {16, 143, 7, RowKind::search},
        {16, 715, 7, RowKind::search},
        {16, 3, 2, RowKind::search},  {16, 15, 2, RowKind::search},
        {16, 39, 5, RowKind::search},
    };
    for (u64 s : divisors(17678835))  // 3^2 * 5 * 19 * 23 * 29 * 31, 96 divisors
        rows.push_back({32, s, 15, RowKind::search});
    return rows;
}

/// Published two-digit rows (factor Phi_2s).
inline const std::vector<WitnessRow>& two_digit_rows() {
    static const std::vector<WitnessRow> rows = {
        {6, 3, 5, RowKind::rule, NamedRule::split_half},
        {6, 5, 3, RowKind::digit},
        {9, 3, 7, RowKind::rule, NamedRule::split_half},
        {9, 9, 2, RowKind::search},
        {10, 3, 5, RowKind::rule, NamedRule::both_half},
        {10, 5, 1, RowKind::digit},
        {10, 9, 5, RowKind::search},
        {10, 15, 3, RowKind::search},
        {12, 3, 7, RowKind::rule, NamedRule::split_half},
        {12, 5, 3, RowKind::digit},
        {12, 11, 2, RowKind::digit},
        {12, 55, 3, RowKind::search},
        {12, 9, 5, RowKind::search},
        {12, 33, 5, RowKind::search},
        {12, 99, 5, RowKind::search},
        {17, 17, 7, RowKind::rule, NamedRule::split_half},
        {18, 17, 3, RowKind::digit},
        {18, 9, 4, RowKind::search},
        {18, 51, 4, RowKind::search},
        {18, 153, 4, RowKind::search},
        {20, 3, 3, RowKind::digit},
        {20, 5, 7, RowKind::rule, NamedRule::split_half},
        {20, 17, 5, RowKind::digit},
        {20, 15, 6, RowKind::search},
        {20, 19, 6, RowKind::search},
        {20, 51, 6, RowKind::search},
        {20, 57, 6, RowKind::search},
        {20, 85, 6, RowKind::search},
        {20, 95, 6, RowKind::search},
        {20, 255, 6, RowKind::search},
        {20, 285, 6, RowKind::search},
        {20, 323, 6, RowKind::search},
        {20, 969, 6, RowKind::search},
        {20, 1615, 6, RowKind::search},
        {20, 4845, 6, RowKind::search},
        {72, 3, 7, RowKind::rule, NamedRule::split_half},
        {528, 31, 3, RowKind::rule, NamedRule::order_last},
        {1088, 5, 9, RowKind::rule, NamedRule::both_half},
    };
    return rows;
}

/// Published three-digit rows (factor Phi_2s). The n = 11, s = 3 row is the
/// outlier; its flip element is stored as 4 since C(11, 4) = 330 is the
/// smallest binomial divisible by 6 at a position non-essential in both
/// base 2 and base 3 (C(11, 3) = 165 is odd).
inline const std::vector<WitnessRow>& three_digit_rows() {
    static const std::vector<WitnessRow> rows = {
        {11, 3, 4, RowKind::outlier},
        {11, 11, 7, RowKind::rule, NamedRule::three_fermat},
        {13, 13, 7, RowKind::rule, NamedRule::three_fermat},
        {14, 7, 13, RowKind::rule, NamedRule::three_fermat},
        {14, 13, 3, RowKind::digit},
        {14, 91, 3, RowKind::search},
        {19, 19, 7, RowKind::rule, NamedRule::three_fermat},
        {21, 3, 2, RowKind::digit},
        {21, 7, 13, RowKind::rule, NamedRule::three_fermat},
        {21, 21, 2, RowKind::search},
        {22, 7, 3, RowKind::rule, NamedRule::three_high},
        {22, 11, 7, RowKind::digit},
        {22, 77, 3, RowKind::search},
        {56, 3, 3, RowKind::digit},
        {4108, 13, 7, RowKind::rule, NamedRule::three_fermat},
        {16576, 17, 3, RowKind::rule, NamedRule::three_high},
        {32802, 11, 7, RowKind::rule, NamedRule::three_split_half},
    };
    return rows;
}

}  // namespace descent::reference
