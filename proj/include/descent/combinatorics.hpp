#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "descent/composition.hpp"
#include "descent/numeric.hpp"

namespace descent {

inline Int factorial(u64 n) {
    Int f = 1;
    for (u64 i = 2; i <= n; ++i) f *= i;
    return f;
}

/// C(n, k), exact at arbitrary precision; 0 when k < 0 or k > n.
inline Int binomial(u64 n, long long k) {
    if (k < 0 || static_cast<u64>(k) > n) return 0;
    u64 kk = static_cast<u64>(k);
    kk = std::min(kk, n - kk);
    Int num = 1;
    for (u64 i = 0; i < kk; ++i) {
        num *= (n - i);
        num /= (i + 1);  // exact: prefix products of binomial rows
    }
    return num;
}

/// Small unchecked variant for hot loops; caller guarantees the value fits.
inline u64 binomial_u64(unsigned n, unsigned k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    u64 num = 1;
    for (unsigned i = 0; i < k; ++i) {
        num *= (n - i);
        num /= (i + 1);
    }
    return num;
}

/// n! / prod parts! for the composition's total n.
inline Int multinomial(const Composition& c) {
    Int result = 1;
    u64 remaining = static_cast<u64>(c.total());
    for (int part : c.parts) {
        result *= binomial(remaining, part);
        remaining -= static_cast<u64>(part);
    }
    return result;
}

/// Little-endian base-p digit vector; empty only for value 0.
struct BasePDigits {
    u64 base = 2;
    std::vector<u32> digits;

    u64 value() const {
        u64 v = 0;
        for (auto it = digits.rbegin(); it != digits.rend(); ++it) v = v * base + *it;
        return v;
    }
};

inline BasePDigits digits_base(u64 value, u64 base) {
    if (base < 2) throw std::invalid_argument("digits_base: base must be >= 2");
    BasePDigits d;
    d.base = base;
    while (value > 0) {
        d.digits.push_back(static_cast<u32>(value % base));
        value /= base;
    }
    return d;
}

/// k is essential for n in base p when every base-p digit of k is at most
/// the corresponding digit of n; equivalently k + (n-k) has no carries.
inline bool is_essential(u64 k, u64 n, u64 p) {
    if (k < 1 || k > n - 1)
        throw std::invalid_argument("is_essential: k must lie in [1, n-1]");
    if (p < 2) throw std::invalid_argument("is_essential: base must be >= 2");
    u64 a = k, b = n;
    while (a > 0) {
        if (a % p > b % p) return false;
        a /= p;
        b /= p;
    }
    return true;
}

/// Number of carries when adding k and l in base p. By Kummer's theorem this
/// equals the p-adic valuation of C(k+l, k).
inline int carry_count(u64 k, u64 l, u64 p) {
    if (p < 2) throw std::invalid_argument("carry_count: base must be >= 2");
    int carries = 0;
    u64 carry = 0;
    while (k > 0 || l > 0 || carry > 0) {
        u64 s = k % p + l % p + carry;
        carry = s >= p ? 1 : 0;
        carries += static_cast<int>(carry);
        k /= p;
        l /= p;
    }
    return carries;
}

/// C(n, k) mod p via the digit product. Nonzero exactly when k is essential
/// for n in base p.
inline u64 binomial_mod_p_lucas(u64 n, u64 k, u64 p) {
    if (!is_prime(p)) throw std::invalid_argument("binomial_mod_p_lucas: p must be prime");
    if (k > n) return 0;
    u64 result = 1;
    while (n > 0 || k > 0) {
        u64 nd = n % p, kd = k % p;
        if (kd > nd) return 0;
        result = mul_mod(result, binomial_u64(static_cast<unsigned>(nd), static_cast<unsigned>(kd)) % p, p);
        n /= p;
        k /= p;
    }
    return result;
}

/// E_n, the number of alternating permutations, via the boustrophedon
/// triangle. Also the largest descent set statistic for S_n.
inline Int euler_zigzag(unsigned n) {
    std::vector<Int> prev{1};
    for (unsigned row = 1; row <= n; ++row) {
        std::vector<Int> cur(row + 1);
        cur[0] = 0;
        for (unsigned k = 1; k <= row; ++k) cur[k] = cur[k - 1] + prev[row - k];
        prev = std::move(cur);
    }
    return prev.back();
}

}  // namespace descent
