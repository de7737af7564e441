#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "descent/beta_table.hpp"
#include "descent/numeric.hpp"
#include "descent/parallel.hpp"
#include "descent/polynomial.hpp"

namespace descent {

/// An element of Z[t]/Phi_m(t), i.e. an exact integer combination of powers
/// of a primitive m-th root of unity, in the canonical reduced form of
/// length phi(m). Zero is the all-zero vector.
struct CyclotomicInt {
    unsigned m = 1;
    std::vector<Int> coeffs;

    bool is_zero() const {
        for (const auto& c : coeffs)
            if (c != 0) return false;
        return true;
    }

    bool operator==(const CyclotomicInt&) const = default;
};

/// Exact remainder of pol modulo the (monic) m-th cyclotomic polynomial.
inline CyclotomicInt reduce_mod_cyclotomic(const IntPolynomial& pol, unsigned m) {
    const IntPolynomial& phi = cyclotomic_polynomial(m);
    std::size_t deg_phi = static_cast<std::size_t>(phi.degree());
    std::vector<Int> work = pol.coeffs;
    for (std::size_t i = work.size(); i-- > deg_phi;) {
        if (work[i] == 0) continue;
        Int lead = work[i];
        work[i] = 0;
        for (std::size_t j = 0; j < deg_phi; ++j)
            if (phi.coeffs[j] != 0) work[i - deg_phi + j] -= lead * phi.coeffs[j];
    }
    work.resize(deg_phi);
    return CyclotomicInt{m, std::move(work)};
}

/// Complex conjugation t -> t^{m-1} = t^{-1}, applied to the reduced
/// representative and re-reduced.
inline CyclotomicInt conjugate(const CyclotomicInt& z) {
    if (z.m <= 2) return z;  // real already
    std::vector<Int> poly(z.m, 0);
    for (std::size_t i = 0; i < z.coeffs.size(); ++i) {
        unsigned e = static_cast<unsigned>((z.m - i % z.m) % z.m);
        poly[e] += z.coeffs[i];
    }
    return reduce_mod_cyclotomic(IntPolynomial{std::move(poly)}, z.m);
}

namespace detail {

/// Fast synthetic division of a histogram polynomial by Phi_m in checked
/// signed 64-bit arithmetic. Falls back to exact big-integer division on
/// (never observed) overflow.
inline CyclotomicInt reduce_counts_mod_cyclotomic(const std::vector<u64>& counts, unsigned m) {
    const IntPolynomial& phi = cyclotomic_polynomial(m);
    std::size_t deg_phi = static_cast<std::size_t>(phi.degree());
    bool fits64 = true;
    std::vector<long long> phi64(deg_phi);
    for (std::size_t j = 0; j < deg_phi; ++j) {
        if (phi.coeffs[j] < std::numeric_limits<long long>::min() ||
            phi.coeffs[j] > std::numeric_limits<long long>::max())
            fits64 = false;
        else
            phi64[j] = static_cast<long long>(phi.coeffs[j]);
    }
    for (u64 c : counts)
        if (c > static_cast<u64>(std::numeric_limits<long long>::max())) fits64 = false;
    if (fits64) {
        std::vector<long long> work(counts.begin(), counts.end());
        if (work.size() < deg_phi) work.resize(deg_phi, 0);
        bool overflow = false;
        for (std::size_t i = work.size(); !overflow && i-- > deg_phi;) {
            long long lead = work[i];
            if (lead == 0) continue;
            work[i] = 0;
            for (std::size_t j = 0; j < deg_phi; ++j) {
                if (phi64[j] == 0) continue;
                long long prod;
                if (__builtin_mul_overflow(lead, phi64[j], &prod) ||
                    __builtin_sub_overflow(work[i - deg_phi + j], prod, &work[i - deg_phi + j])) {
                    overflow = true;
                    break;
                }
            }
        }
        if (!overflow) {
            std::vector<Int> out(deg_phi);
            for (std::size_t j = 0; j < deg_phi; ++j) out[j] = work[j];
            return CyclotomicInt{m, std::move(out)};
        }
    }
    std::vector<Int> big(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) big[i] = counts[i];
    return reduce_mod_cyclotomic(IntPolynomial{std::move(big)}, m);
}

}  // namespace detail

/// Q_n evaluated at a primitive m-th root of unity, exactly: the residue
/// histogram read as a polynomial and reduced mod Phi_m.
inline CyclotomicInt q_at_root(const ResidueHistogram& hist, unsigned m) {
    if (hist.m != m) throw std::invalid_argument("q_at_root: histogram modulus mismatch");
    return detail::reduce_counts_mod_cyclotomic(hist.counts, m);
}

inline CyclotomicInt q_at_root(const BetaTable& table, unsigned m) {
    return q_at_root(residue_histogram(table, m), m);
}

inline bool divides(const BetaTable& table, unsigned m) { return q_at_root(table, m).is_zero(); }

/// Q'_n(omega) up to the unit factor omega: the weighted histogram reduced
/// mod Phi_m. Needs true statistics, hence an exact table.
inline CyclotomicInt q_derivative_at_root(const BetaTable& table, unsigned m) {
    auto wh = weighted_histogram(table, m);
    std::vector<Int> poly(wh.sums.begin(), wh.sums.end());
    return reduce_mod_cyclotomic(IntPolynomial{std::move(poly)}, m);
}

inline bool multiplicity_at_least_2(const BetaTable& table, unsigned m) {
    return divides(table, m) && q_derivative_at_root(table, m).is_zero();
}

/// The sufficient conditions a_j = a_{-j} and a_j = a_{m/2 - j} for an even
/// modulus. Implies divisibility; the converse can fail.
inline bool lemma41_conditions_hold(const ResidueHistogram& hist) {
    if (hist.m % 2 != 0) throw std::invalid_argument("lemma41_conditions_hold: m must be even");
    u64 m = hist.m;
    for (u64 j = 0; j < m; ++j) {
        if (hist.counts[j] != hist.counts[(m - j) % m]) return false;
        if (hist.counts[j] != hist.counts[((m / 2 + m - j) % m)]) return false;
    }
    return true;
}

struct FactorEntry {
    unsigned m = 0;
    int multiplicity = 1;  // 1 or 2, where 2 means "at least 2"

    bool operator==(const FactorEntry&) const = default;
};

struct FactorReport {
    int n = 0;
    unsigned m_max = 0;
    bool even_only = true;
    std::vector<FactorEntry> entries;  // sorted by m
};

/// All m <= m_max with Phi_m dividing Q_n, each tagged with multiplicity
/// 1 or 2+. Candidates default to even m (every known factor has an even
/// index); m = 1 is checked as a sanity row and never divides since
/// Q_n(1) = 2^{n-1}. Candidates scan independently against the shared table.
inline FactorReport scan_factors(const BetaTable& table, unsigned m_max, bool even_only = true,
                                 bool with_multiplicity = true, unsigned workers = 0) {
    if (m_max < 2) throw std::invalid_argument("scan_factors: m_max must be >= 2");
    std::vector<unsigned> candidates;
    candidates.push_back(1);
    for (unsigned m = 2; m <= m_max; ++m)
        if (!even_only || m % 2 == 0) candidates.push_back(m);
    std::vector<char> hit(candidates.size(), 0);
    parallel_chunks(0, candidates.size(), workers, [&](u64 lo, u64 hi, unsigned) {
        for (u64 i = lo; i < hi; ++i) hit[i] = divides(table, candidates[i]) ? 1 : 0;
    });
    FactorReport report{table.n, m_max, even_only, {}};
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (!hit[i]) continue;
        FactorEntry e{candidates[i], 1};
        if (with_multiplicity && table.n <= kMaxExactN &&
            q_derivative_at_root(table, candidates[i]).is_zero())
            e.multiplicity = 2;
        report.entries.push_back(e);
    }
    return report;
}

}  // namespace descent
