#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "descent/beta_table.hpp"
#include "descent/composition.hpp"
#include "descent/numeric.hpp"

namespace descent {

/// The complex whose faces are the subsets of [n-1] whose composition sums
/// to n without binary carries. A subset {t_1 < ... < t_j} is a face exactly
/// when t_1, ..., t_j, n form a chain under bitwise inclusion, so the
/// vertices are the proper nonzero submasks of n.
struct DeltaComplex {
    int n;
    std::vector<u64> vertices;  // ascending

    explicit DeltaComplex(int n_) : n(n_) {
        if (n < 1) throw std::invalid_argument("DeltaComplex: n must be >= 1");
        u64 nn = static_cast<u64>(n);
        for (u64 sub = (nn - 1) & nn; sub != 0; sub = (sub - 1) & nn) vertices.push_back(sub);
        std::sort(vertices.begin(), vertices.end());
    }

    int ones() const { return std::popcount(static_cast<u64>(n)); }
};

inline bool is_face(int n, u64 mask) {
    int bits_needed = std::popcount(static_cast<u64>(n));
    u64 prev = 0;
    int seen = 0;
    for (u64 m = mask; m != 0; m &= m - 1) {
        u64 elem = static_cast<u64>(std::countr_zero(m)) + 1;
        u64 part = elem - prev;
        if ((part & prev) != 0) return false;  // support overlap with the prefix sum
        prev = elem;
        seen += std::popcount(part);
    }
    u64 last = static_cast<u64>(n) - prev;
    if ((last & prev) != 0) return false;
    seen += std::popcount(last);
    return seen == bits_needed;
}

/// Parity of the number of faces contained in S, counting the empty face;
/// this equals the reduced Euler characteristic of the induced subcomplex
/// mod 2. Only essential elements of S can appear in faces, which keeps the
/// chain count cheap even for large n.
inline int reduced_euler_char_mod2(int n, u64 mask) {
    u64 nn = static_cast<u64>(n);
    std::vector<u64> w;
    for (u64 m = mask; m != 0; m &= m - 1) {
        u64 elem = static_cast<u64>(std::countr_zero(m)) + 1;
        if ((elem & ~nn) == 0 && elem != nn) w.push_back(elem);
    }
    std::sort(w.begin(), w.end());
    // chains ending at w[i], counted mod 2
    std::vector<u64> ending(w.size());
    u64 total = 1;  // the empty face
    for (std::size_t i = 0; i < w.size(); ++i) {
        u64 e = 1;
        for (std::size_t j = 0; j < i; ++j)
            if ((w[j] & ~w[i]) == 0 && w[j] != w[i]) e += ending[j];
        ending[i] = e;
        total += e;
    }
    return static_cast<int>(total & 1);
}

/// Face counts by dimension (vertices first). Limited to n with at most
/// five binary ones, matching the regime where the complex is actually used.
inline std::vector<u64> complex_census(int n) {
    DeltaComplex dc(n);
    if (dc.ones() > 5) throw std::invalid_argument("complex_census: more than five binary ones");
    const auto& v = dc.vertices;
    int maxlen = dc.ones() - 1;
    if (maxlen <= 0) return {};
    // ways[i][l] = chains of length l ending at vertex i
    std::vector<std::vector<u64>> ways(v.size(), std::vector<u64>(maxlen + 1, 0));
    std::vector<u64> census(maxlen, 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        ways[i][1] = 1;
        for (std::size_t j = 0; j < i; ++j) {
            if ((v[j] & ~v[i]) == 0 && v[j] != v[i])
                for (int l = 2; l <= maxlen; ++l) ways[i][l] += ways[j][l - 1];
        }
        for (int l = 1; l <= maxlen; ++l) census[l - 1] += ways[i][l];
    }
    return census;
}

/// Exhaustive check that the statistic mod 2 equals the reduced Euler
/// characteristic of the induced subcomplex, for every subset of [n-1].
inline CheckResult verify_parity_theorem(int n, unsigned workers = 0) {
    auto parity = build_parity_table(n, workers);
    u64 count = u64{1} << (n - 1);
    for (u64 mask = 0; mask < count; ++mask) {
        int expected = static_cast<int>((parity[mask >> 6] >> (mask & 63)) & 1);
        if (reduced_euler_char_mod2(n, mask) != expected) {
            return {false, "n=" + std::to_string(n) + " S-mask=" + std::to_string(mask) +
                               ": Euler parity differs from the table"};
        }
    }
    return {true, "parity matches for all " + std::to_string(count) + " subsets"};
}

}  // namespace descent
