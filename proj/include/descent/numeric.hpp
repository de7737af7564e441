#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace descent {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using u64 = std::uint64_t;
using u32 = std::uint32_t;

/// Outcome of a verifier run. `detail` carries the first counterexample
/// (or a short summary) when `pass` is false.
struct CheckResult {
    bool pass = true;
    std::string detail;
};

inline u64 mul_mod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

inline u64 power_mod(u64 base, u64 exp, u64 mod) {
    u64 result = 1 % mod;
    base %= mod;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, mod);
        base = mul_mod(base, base, mod);
        exp >>= 1;
    }
    return result;
}

/// Deterministic trial division; the magnitudes in this library stay at desk
/// scale so nothing faster is needed.
inline bool is_prime(u64 n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (u64 d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

/// Prime factorization by trial division, as (prime, exponent) pairs in
/// increasing prime order.
inline std::vector<std::pair<u64, int>> factorize(u64 n) {
    std::vector<std::pair<u64, int>> out;
    if (n == 0) throw std::invalid_argument("factorize: n must be positive");
    for (u64 d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
        if (n % d == 0) {
            int e = 0;
            while (n % d == 0) { n /= d; ++e; }
            out.emplace_back(d, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

/// All divisors, unsorted order not guaranteed; callers sort when needed.
inline std::vector<u64> divisors(u64 n) {
    auto fac = factorize(n);
    std::vector<u64> out{1};
    for (auto [p, e] : fac) {
        std::size_t base = out.size();
        u64 pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
        }
    }
    return out;
}

inline u64 odd_part(u64 n) {
    while (n != 0 && n % 2 == 0) n /= 2;
    return n;
}

inline u64 euler_phi(u64 n) {
    u64 phi = n;
    for (auto [p, e] : factorize(n)) phi -= phi / p;
    return phi;
}

inline int moebius(u64 n) {
    int mu = 1;
    for (auto [p, e] : factorize(n)) {
        if (e > 1) return 0;
        mu = -mu;
    }
    return mu;
}

/// Least g >= 1 with a^g = 1 mod `modulus`. Requires gcd(a, modulus) = 1.
inline u64 multiplicative_order(u64 a, u64 modulus) {
    if (modulus < 2) throw std::invalid_argument("multiplicative_order: modulus must be >= 2");
    a %= modulus;
    if (std::gcd(a, modulus) != 1)
        throw std::invalid_argument("multiplicative_order: arguments are not coprime");
    u64 x = a % modulus;
    for (u64 g = 1; g <= modulus; ++g) {
        if (x == 1) return g;
        x = mul_mod(x, a, modulus);
    }
    throw std::logic_error("multiplicative_order: no cycle found");
}

/// If q = p^r for an odd prime p, returns (p, r).
inline std::optional<std::pair<u64, int>> odd_prime_power(u64 q) {
    if (q < 3 || q % 2 == 0) return std::nullopt;
    u64 p = 0;
    for (u64 d = 3; d * d <= q; d += 2) {
        if (q % d == 0) { p = d; break; }
    }
    if (p == 0) return std::make_pair(q, 1);  // q itself prime
    int r = 0;
    u64 rest = q;
    while (rest % p == 0) { rest /= p; ++r; }
    if (rest != 1) return std::nullopt;
    return std::make_pair(p, r);
}

}  // namespace descent
