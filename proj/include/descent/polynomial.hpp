#pragma once

#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "descent/numeric.hpp"

namespace descent {

/// Dense polynomial with exact integer coefficients, little-endian.
/// Invariant: no trailing zero coefficient unless the polynomial is zero.
struct IntPolynomial {
    std::vector<Int> coeffs;

    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<Int> c) : coeffs(std::move(c)) { normalize(); }

    void normalize() {
        while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    }

    bool is_zero() const { return coeffs.empty(); }
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }

    const Int& operator[](std::size_t i) const {
        static const Int zero = 0;
        return i < coeffs.size() ? coeffs[i] : zero;
    }

    bool operator==(const IntPolynomial&) const = default;

    Int eval(const Int& x) const {
        Int acc = 0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
        return acc;
    }
};

inline IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Int> c(a.coeffs.size() + b.coeffs.size() - 1);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs.size(); ++j) c[i + j] += a.coeffs[i] * b.coeffs[j];
    return IntPolynomial{std::move(c)};
}

/// P * (t^d - 1).
inline IntPolynomial multiply_tpow_minus_one(const IntPolynomial& p, unsigned d) {
    if (p.is_zero()) return {};
    std::vector<Int> c(p.coeffs.size() + d);
    for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
        c[i + d] += p.coeffs[i];
        c[i] -= p.coeffs[i];
    }
    return IntPolynomial{std::move(c)};
}

/// P / (t^d - 1), assuming the division is exact.
inline IntPolynomial divide_tpow_minus_one(const IntPolynomial& p, unsigned d) {
    if (p.is_zero()) return {};
    if (p.coeffs.size() <= d) throw std::invalid_argument("divide_tpow_minus_one: degree too small");
    std::vector<Int> q(p.coeffs.size() - d);
    // p = q*t^d - q, so p_i = q_{i-d} - q_i
    for (std::size_t i = 0; i < q.size(); ++i)
        q[i] = (i >= d ? q[i - d] : Int{0}) - p.coeffs[i];
    for (std::size_t i = q.size(); i < p.coeffs.size(); ++i) {
        Int check = (i >= d && i - d < q.size()) ? q[i - d] : Int{0};
        if (check != p.coeffs[i]) throw std::invalid_argument("divide_tpow_minus_one: not divisible");
    }
    return IntPolynomial{std::move(q)};
}

namespace detail {
inline IntPolynomial compute_cyclotomic(unsigned m) {
    // Phi_m = prod over d | m of (t^{m/d} - 1)^{mu(d)}: multiply all
    // numerator binomials first so every intermediate division is exact.
    IntPolynomial acc{{1}};
    std::vector<unsigned> denom;
    for (u64 d : divisors(m)) {
        int mu = moebius(d);
        if (mu == 1)
            acc = multiply_tpow_minus_one(acc, static_cast<unsigned>(m / d));
        else if (mu == -1)
            denom.push_back(static_cast<unsigned>(m / d));
    }
    for (unsigned d : denom) acc = divide_tpow_minus_one(acc, d);
    return acc;
}
}  // namespace detail

/// The m-th cyclotomic polynomial, exact and memoized. The factor scanner
/// asks for the same small set of indices thousands of times.
inline const IntPolynomial& cyclotomic_polynomial(unsigned m) {
    if (m < 1) throw std::invalid_argument("cyclotomic_polynomial: m must be >= 1");
    static std::unordered_map<unsigned, IntPolynomial> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(m);
    if (it == cache.end()) it = cache.emplace(m, detail::compute_cyclotomic(m)).first;
    return it->second;
}

}  // namespace descent
