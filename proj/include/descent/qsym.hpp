#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "descent/composition.hpp"
#include "descent/numeric.hpp"

namespace descent {

/// Homogeneous quasi-symmetric function over Z_p in the monomial basis.
/// Keys are part sequences, ordered lexicographically; zero coefficients are
/// never stored.
struct QsymModP {
    u64 p = 2;
    std::map<std::vector<int>, u32> terms;
    std::size_t term_cap = 10'000'000;

    bool is_zero() const { return terms.empty(); }

    void add(const std::vector<int>& comp, u64 coeff) {
        coeff %= p;
        if (coeff == 0) return;
        auto [it, inserted] = terms.try_emplace(comp, 0);
        u64 c = (it->second + coeff) % p;
        if (c == 0)
            terms.erase(it);
        else
            it->second = static_cast<u32>(c);
        if (terms.size() > term_cap)
            throw std::length_error("QsymModP: term cap exceeded (" + std::to_string(term_cap) + ")");
    }
};

inline QsymModP qsym_monomial(u64 p, std::vector<int> comp, u64 coeff = 1) {
    QsymModP out;
    out.p = p;
    out.add(comp, coeff);
    return out;
}

namespace detail {

/// Overlapping shuffles of two part sequences: at each step take the next
/// part of a, the next part of b, or merge the two next parts by addition.
inline void overlay_shuffles(const std::vector<int>& a, std::size_t i, const std::vector<int>& b,
                             std::size_t j, std::vector<int>& prefix, u64 coeff, QsymModP& out) {
    if (i == a.size() && j == b.size()) {
        out.add(prefix, coeff);
        return;
    }
    if (i < a.size()) {
        prefix.push_back(a[i]);
        overlay_shuffles(a, i + 1, b, j, prefix, coeff, out);
        prefix.pop_back();
    }
    if (j < b.size()) {
        prefix.push_back(b[j]);
        overlay_shuffles(a, i, b, j + 1, prefix, coeff, out);
        prefix.pop_back();
    }
    if (i < a.size() && j < b.size()) {
        prefix.push_back(a[i] + b[j]);
        overlay_shuffles(a, i + 1, b, j + 1, prefix, coeff, out);
        prefix.pop_back();
    }
}

}  // namespace detail

inline QsymModP quasi_shuffle_product(const QsymModP& lhs, const QsymModP& rhs) {
    if (lhs.p != rhs.p) throw std::invalid_argument("quasi_shuffle_product: mismatched moduli");
    QsymModP out;
    out.p = lhs.p;
    out.term_cap = std::min(lhs.term_cap, rhs.term_cap);
    std::vector<int> prefix;
    for (const auto& [ac, acoef] : lhs.terms)
        for (const auto& [bc, bcoef] : rhs.terms)
            detail::overlay_shuffles(ac, 0, bc, 0, prefix,
                                     mul_mod(acoef, bcoef, lhs.p), out);
    return out;
}

/// The quasi-symmetric function of the Boolean algebra B_n modulo p: the
/// product of M_{(p^j)} over the base-p digits of n, each digit d repeated
/// d times.
inline QsymModP boolean_qsym_mod_p(u64 n, u64 p, std::size_t term_cap = 10'000'000) {
    if (!is_prime(p)) throw std::invalid_argument("boolean_qsym_mod_p: p must be prime");
    QsymModP acc = qsym_monomial(p, {});
    acc.term_cap = term_cap;
    u64 pj = 1;
    for (u64 rest = n; rest > 0; rest /= p, pj *= p) {
        u64 digit = rest % p;
        for (u64 i = 0; i < digit; ++i) {
            QsymModP factor = qsym_monomial(p, {static_cast<int>(pj)});
            factor.term_cap = term_cap;
            acc = quasi_shuffle_product(acc, factor);
        }
    }
    return acc;
}

/// Flag f-vector modulo p as a sparse mask -> residue map; masks absent from
/// the map are zero.
inline std::map<u64, u32> flag_f_mod_p(u64 n, u64 p, std::size_t term_cap = 10'000'000) {
    auto q = boolean_qsym_mod_p(n, p, term_cap);
    std::map<u64, u32> out;
    for (const auto& [comp, coeff] : q.terms) {
        Composition c{comp};
        out[to_descent_set(c).mask] = coeff;
    }
    return out;
}

/// Inclusion-exclusion through the sparse flag map: only the nonzero f_T
/// with T inside S contribute.
inline u64 beta_mod_p_from_flags(const std::map<u64, u32>& flags, u64 p, u64 set_mask) {
    u64 acc = 0;
    int s_size = std::popcount(set_mask);
    for (const auto& [t_mask, f] : flags) {
        if ((t_mask & ~set_mask) != 0) continue;
        int diff = s_size - std::popcount(t_mask);
        u64 term = (diff % 2 == 0) ? f : (p - f) % p;
        acc = (acc + term) % p;
    }
    return acc;
}

inline u64 beta_mod_p_via_qsym(u64 n, u64 p, u64 set_mask, std::size_t term_cap = 10'000'000) {
    return beta_mod_p_from_flags(flag_f_mod_p(n, p, term_cap), p, set_mask);
}

/// Closed form for beta_{2q}(S) mod p when q = p^r is an odd prime power:
/// (-1)^{|S - {q}|}.
inline u64 beta_2q_mod_p(u64 q, u64 set_mask) {
    auto pp = odd_prime_power(q);
    if (!pp) throw std::invalid_argument("beta_2q_mod_p: q must be an odd prime power");
    u64 p = pp->first;
    DescentSet s{static_cast<int>(2 * q), set_mask};  // validates S inside [2q-1]
    int size = s.size() - static_cast<int>((set_mask >> (q - 1)) & 1);
    return size % 2 == 0 ? 1 : p - 1;
}

/// Closed form for beta_{q+1}(S) mod p, split on |S cap {1, q}|.
inline u64 beta_q_plus_1_mod_p(u64 q, u64 set_mask) {
    auto pp = odd_prime_power(q);
    if (!pp) throw std::invalid_argument("beta_q_plus_1_mod_p: q must be an odd prime power");
    u64 p = pp->first;
    DescentSet s{static_cast<int>(q + 1), set_mask};
    int ends = static_cast<int>(set_mask & 1) + static_cast<int>((set_mask >> (q - 1)) & 1);
    if (ends == 1) return 0;
    u64 sign = s.size() % 2 == 0 ? 1 : p - 1;
    return ends == 0 ? sign : (p - sign) % p;
}

/// Renders "c*M(a,b,...) + ..." with terms in the stored (lexicographic)
/// order.
inline std::string to_string(const QsymModP& q) {
    if (q.terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [comp, coeff] : q.terms) {
        if (!first) os << " + ";
        first = false;
        if (coeff != 1 || comp.empty()) os << coeff << "*";
        os << "M(";
        for (std::size_t i = 0; i < comp.size(); ++i) {
            if (i) os << ",";
            os << comp[i];
        }
        os << ")";
    }
    return os.str();
}

}  // namespace descent
