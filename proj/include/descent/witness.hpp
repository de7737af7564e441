#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "descent/beta_table.hpp"
#include "descent/combinatorics.hpp"
#include "descent/cyclotomic.hpp"
#include "descent/numeric.hpp"

namespace descent {

/// A witness (s, k) certifying a predicted cyclotomic factor of index 4s
/// (one binary digit) or 2s (two or three binary digits). `valid_ks` lists
/// every admissible flip element, `k` the smallest.
struct FactorWitness {
    u64 n = 0;
    u64 s = 1;
    u64 k = 0;
    unsigned factor_index = 0;
    std::string explanation;
    std::vector<u64> valid_ks;
};

inline bool essential_base2(u64 k, u64 n) { return (k & ~n) == 0; }

namespace detail {

inline std::vector<u64> sorted_odd_divisors(u64 v, u64 min_s) {
    std::vector<u64> out;
    for (u64 d : divisors(odd_part(v)))
        if (d >= min_s) out.push_back(d);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

/// Odd s dividing the central binomial coefficient of n = 2^a such that
/// s also divides C(n, k) for some k != n/2. Every such pair predicts the
/// factor Phi_4s.
inline std::vector<FactorWitness> find_one_digit_witnesses(int a) {
    if (a < 2) throw std::invalid_argument("find_one_digit_witnesses: need exponent >= 2");
    if (a > 6) throw std::invalid_argument("find_one_digit_witnesses: exponent beyond desk scale");
    u64 n = u64{1} << a;
    std::vector<u64> binoms(n);
    for (u64 k = 1; k < n; ++k) binoms[k] = binomial_u64(static_cast<unsigned>(n), static_cast<unsigned>(k));
    std::vector<FactorWitness> out;
    for (u64 s : detail::sorted_odd_divisors(binoms[n / 2], 1)) {
        std::vector<u64> ks;
        for (u64 k = 1; k < n; ++k)
            if (k != n / 2 && binoms[k] % s == 0) ks.push_back(k);
        if (ks.empty()) continue;
        out.push_back({n, s, ks.front(), static_cast<unsigned>(4 * s), "central-divisor", ks});
    }
    return out;
}

/// Odd s >= 3 dividing C(n, 2^a) for n with two binary ones, witnessed by a
/// non-essential k with s | C(n, k). Predicts Phi_2s.
inline std::vector<FactorWitness> find_two_digit_witnesses(u64 n) {
    if (std::popcount(n) != 2) throw std::invalid_argument("find_two_digit_witnesses: n needs exactly two binary ones");
    if (n > 64) throw std::invalid_argument("find_two_digit_witnesses: n beyond desk scale");
    u64 low = u64{1} << std::countr_zero(n);
    std::vector<u64> binoms(n);
    for (u64 k = 1; k < n; ++k) binoms[k] = binomial_u64(static_cast<unsigned>(n), static_cast<unsigned>(k));
    std::vector<FactorWitness> out;
    for (u64 s : detail::sorted_odd_divisors(binoms[low], 3)) {
        std::vector<u64> ks;
        for (u64 k = 1; k < n; ++k)
            if (!essential_base2(k, n) && binoms[k] % s == 0) ks.push_back(k);
        if (ks.empty()) continue;
        out.push_back({n, s, ks.front(), static_cast<unsigned>(2 * s), "gap-divisor", ks});
    }
    return out;
}

/// Odd s >= 3 dividing all three binomials C(n, 2^x) for n with three binary
/// ones, witnessed by a k outside the six essential elements. Predicts
/// Phi_2s.
inline std::vector<FactorWitness> find_three_digit_witnesses(u64 n) {
    if (std::popcount(n) != 3) throw std::invalid_argument("find_three_digit_witnesses: n needs exactly three binary ones");
    if (n > 64) throw std::invalid_argument("find_three_digit_witnesses: n beyond desk scale");
    std::vector<u64> binoms(n);
    for (u64 k = 1; k < n; ++k) binoms[k] = binomial_u64(static_cast<unsigned>(n), static_cast<unsigned>(k));
    u64 g = 0;
    for (u64 m = n; m != 0; m &= m - 1) g = std::gcd(g, binoms[u64{1} << std::countr_zero(m)]);
    std::vector<FactorWitness> out;
    for (u64 s : detail::sorted_odd_divisors(g, 3)) {
        std::vector<u64> ks;
        for (u64 k = 1; k < n; ++k)
            if (!essential_base2(k, n) && binoms[k] % s == 0) ks.push_back(k);
        if (ks.empty()) continue;
        out.push_back({n, s, ks.front(), static_cast<unsigned>(2 * s), "gcd-divisor", ks});
    }
    return out;
}

/// Exact re-verification of a prime witness: p divides every binomial
/// C(n, 2^x) over the binary digits of n, and k is non-essential in base 2
/// and base p (hence 2p divides C(n, k)). Digit comparisons subsume the
/// higher-digit carry refinements.
inline bool validate_prime_witness(u64 n, u64 p, u64 k) {
    int ones = std::popcount(n);
    if (ones != 2 && ones != 3) return false;
    if (k < 1 || k > n - 1) return false;
    if (ones == 2) {
        u64 low = u64{1} << std::countr_zero(n);
        if (is_essential(low, n, p)) return false;
    } else {
        for (u64 m = n; m != 0; m &= m - 1)
            if (is_essential(u64{1} << std::countr_zero(m), n, p)) return false;
    }
    return !essential_base2(k, n) && !is_essential(k, n, p);
}

/// The named exponent-congruence rules; each fixes a canonical witness
/// element.
enum class NamedRule {
    split_half,        // two ones, {a,b} = {0, g/2} mod g, k = 7
    both_half,         // two ones, a = b = g/2 mod g, k = 2p-1
    order_last,        // two ones, p > 3, a = b = g-1 mod g, k = 3
    three_split_half,  // three ones, {a,b,c} = {1, g/2, g/2} mod g, k = 7
    three_high,        // three ones, p >= 5, {a,b,c} = {g-2, g-2, g-1} mod g, k = 3
    three_fermat,      // three ones, p = 2^e + 2^d + 1, {a,b,c} = {0, d, e} mod g, k = 7 or 13
};

inline const char* rule_name(NamedRule r) {
    switch (r) {
        case NamedRule::split_half: return "order-split {0,g/2}";
        case NamedRule::both_half: return "order-pair {g/2,g/2}";
        case NamedRule::order_last: return "order-pair {g-1,g-1}";
        case NamedRule::three_split_half: return "order-triple {1,g/2,g/2}";
        case NamedRule::three_high: return "order-triple {g-2,g-2,g-1}";
        case NamedRule::three_fermat: return "binary-prime {0,d,e}";
    }
    return "?";
}

/// Checks the rule's congruence conditions on the binary exponents of n and
/// returns the canonical witness when all non-essentiality conditions
/// verify. The small-n override (n, p) = (6, 3) replaces the out-of-range
/// canonical element 7 with 5.
inline std::optional<FactorWitness> theorem_rule_witness(u64 n, NamedRule rule, u64 p) {
    if (!is_prime(p) || p == 2) return std::nullopt;
    u64 g = multiplicative_order(2, p);
    std::vector<u64> exps;
    for (u64 m = n; m != 0; m &= m - 1) exps.push_back(static_cast<u64>(std::countr_zero(m)) % g);
    std::sort(exps.begin(), exps.end());
    auto matches = [&](std::vector<u64> pattern) {
        for (u64& x : pattern) x %= g;
        std::sort(pattern.begin(), pattern.end());
        return exps == pattern;
    };
    u64 k = 0;
    switch (rule) {
        case NamedRule::split_half:
            if (exps.size() != 2 || g % 2 != 0 || !matches({0, g / 2})) return std::nullopt;
            k = (n == 6 && p == 3) ? 5 : 7;
            break;
        case NamedRule::both_half:
            if (exps.size() != 2 || g % 2 != 0 || !matches({g / 2, g / 2})) return std::nullopt;
            k = 2 * p - 1;
            break;
        case NamedRule::order_last:
            if (exps.size() != 2 || p <= 3 || !matches({g - 1, g - 1})) return std::nullopt;
            k = 3;
            break;
        case NamedRule::three_split_half:
            if (exps.size() != 3 || g % 2 != 0 || !matches({1, g / 2, g / 2})) return std::nullopt;
            k = 7;
            break;
        case NamedRule::three_high:
            if (exps.size() != 3 || p < 5 || !matches({g - 2, g - 2, g - 1})) return std::nullopt;
            k = 3;
            break;
        case NamedRule::three_fermat: {
            if (exps.size() != 3 || std::popcount(p) != 3 || (p & 1) == 0) return std::nullopt;
            u64 rest = p - 1;
            u64 d = static_cast<u64>(std::countr_zero(rest));
            u64 e = static_cast<u64>(std::bit_width(rest)) - 1;
            if ((u64{1} << d) + (u64{1} << e) + 1 != p) return std::nullopt;
            if (!matches({0, d, e})) return std::nullopt;
            k = (p == 7) ? 13 : 7;
            break;
        }
    }
    if (!validate_prime_witness(n, p, k)) return std::nullopt;
    return FactorWitness{n, p, k, static_cast<unsigned>(2 * p), rule_name(rule), {k}};
}

/// The unordered exponent pairs {a, b} mod g for which the smaller power of
/// two is non-essential for 2^a + 2^b in base p: exactly the pairs whose
/// last base-p digits sum to at least p.
inline std::set<std::pair<int, int>> exponent_classes_two_digit(u64 p) {
    if (!is_prime(p) || p == 2) throw std::invalid_argument("exponent_classes_two_digit: p must be an odd prime");
    u64 g = multiplicative_order(2, p);
    std::set<std::pair<int, int>> out;
    for (u64 a = 0; a < g; ++a) {
        for (u64 b = a; b < g; ++b) {
            if (power_mod(2, a, p) + power_mod(2, b, p) >= p)
                out.emplace(static_cast<int>(a), static_cast<int>(b));
        }
    }
    return out;
}

struct CrossCheckRow {
    u64 s = 1;
    unsigned factor_index = 0;
    bool confirmed = false;
};

struct CrossCheckReport {
    u64 n = 0;
    std::vector<CrossCheckRow> rows;
    bool pass = true;
};

/// Confirms every witness prediction in range against the exact root test.
inline CrossCheckReport cross_check_witnesses(u64 n, unsigned m_max, unsigned workers = 0) {
    std::vector<FactorWitness> witnesses;
    switch (std::popcount(n)) {
        case 1:
            if (n >= 4) witnesses = find_one_digit_witnesses(std::countr_zero(n));
            break;
        case 2: witnesses = find_two_digit_witnesses(n); break;
        case 3: witnesses = find_three_digit_witnesses(n); break;
        default: break;
    }
    CrossCheckReport report;
    report.n = n;
    if (witnesses.empty()) return report;
    BetaTable table = build_beta_table(static_cast<int>(n), workers);
    for (const auto& w : witnesses) {
        if (w.factor_index > m_max) continue;
        CrossCheckRow row{w.s, w.factor_index, divides(table, w.factor_index)};
        report.pass = report.pass && row.confirmed;
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace descent
