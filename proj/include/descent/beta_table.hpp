#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "descent/combinatorics.hpp"
#include "descent/composition.hpp"
#include "descent/numeric.hpp"
#include "descent/parallel.hpp"

namespace descent {

/// Largest n whose full table of descent set statistics fits in unsigned
/// 64-bit words: E_24 < 2^64 < E_25. Larger n are served by residue mode.
inline constexpr int kMaxExactN = 24;

/// Thrown when an exact-mode table is requested beyond kMaxExactN.
struct exact_mode_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct cache_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exact descent set statistics for every subset of [n-1], indexed by mask
/// in plain binary counting order.
struct BetaTable {
    int n = 1;
    std::vector<u64> values;

    u64 size() const { return values.size(); }
    u64 at(u64 mask) const { return values[mask]; }
};

namespace detail {

/// All C(a, b) for a <= 64 fit in a u64 word.
inline u64 small_binomial(unsigned a, unsigned b) { return binomial_u64(a, b); }

/// Flag f-vector of the Boolean algebra over all masks, modulo 2^64.
/// f_S factors as a product of binomials over consecutive gap sums, so each
/// entry extends the entry with its top element removed by one factor.
inline std::vector<u64> flag_table_wrap64(int n) {
    u64 count = u64{1} << (n - 1);
    std::vector<u64> f(count);
    f[0] = 1;
    std::vector<std::vector<u64>> binom(n + 1, std::vector<u64>(n + 1, 0));
    for (int a = 0; a <= n; ++a)
        for (int b = 0; b <= a; ++b) binom[a][b] = small_binomial(a, b);
    for (u64 mask = 1; mask < count; ++mask) {
        int top = std::bit_width(mask);  // top element of the subset
        u64 rest = mask & ~(u64{1} << (top - 1));
        int prev = std::bit_width(rest);
        f[mask] = f[rest] * binom[n - prev][top - prev];
    }
    return f;
}

/// In-place alternating Moebius transform: a[S] <- sum over T subset of S of
/// (-1)^{|S - T|} a[T]. Wraparound arithmetic is sound because the true
/// results fit in a word.
inline void alternating_subset_transform(std::vector<u64>& a, int bits, unsigned workers) {
    for (int d = 0; d < bits; ++d) {
        u64 step = u64{1} << d;
        u64 blocks = a.size() >> (d + 1);
        parallel_chunks(0, blocks, workers, [&](u64 lo, u64 hi, unsigned) {
            for (u64 b = lo; b < hi; ++b) {
                u64 base = (b << (d + 1)) + step;
                for (u64 i = base; i < base + step; ++i) a[i] -= a[i - step];
            }
        });
    }
}

}  // namespace detail

/// Exact table for 1 <= n <= kMaxExactN.
inline BetaTable build_beta_table(int n, unsigned workers = 0) {
    if (n < 1) throw std::invalid_argument("build_beta_table: n must be >= 1");
    if (n > kMaxExactN)
        throw exact_mode_error("build_beta_table: n = " + std::to_string(n) +
                               " exceeds the exact-mode ceiling " + std::to_string(kMaxExactN) +
                               "; use residue mode");
    BetaTable t;
    t.n = n;
    t.values = detail::flag_table_wrap64(n);
    detail::alternating_subset_transform(t.values, n - 1, workers);
    return t;
}

/// Exact flag f-vector entry: the multinomial of co(S).
inline Int flag_f(int n, u64 mask) { return multinomial(mask_composition(n, mask)); }

/// Single descent set statistic by inclusion-exclusion over subsets of S,
/// with exact signed arithmetic. Cheap for small |S| and any n.
inline Int beta_single(int n, u64 mask) {
    DescentSet s{n, mask};  // validates
    Int acc = 0;
    u64 sub = mask;
    int size_s = std::popcount(mask);
    while (true) {
        Int term = flag_f(n, sub);
        if ((size_s - std::popcount(sub)) % 2 != 0) term = -term;
        acc += term;
        if (sub == 0) break;
        sub = (sub - 1) & mask;
    }
    return acc;
}

inline Int beta_single(const DescentSet& s) { return beta_single(s.n, s.mask); }

/// Per-mask statistics modulo m, via the same transform carried out in
/// arithmetic modulo m. Supports n beyond the exact-mode ceiling.
inline std::vector<u32> build_residue_table(int n, u64 m, unsigned workers = 0) {
    if (n < 1 || n > 32) throw std::invalid_argument("build_residue_table: need 1 <= n <= 32");
    if (m < 1 || m > 0xffffffffULL) throw std::invalid_argument("build_residue_table: need 1 <= m < 2^32");
    u64 count = u64{1} << (n - 1);
    std::vector<u32> a(count);
    {
        std::vector<std::vector<u64>> binom(n + 1, std::vector<u64>(n + 1, 0));
        for (int x = 0; x <= n; ++x)
            for (int y = 0; y <= x; ++y) binom[x][y] = detail::small_binomial(x, y) % m;
        a[0] = static_cast<u32>(1 % m);
        for (u64 mask = 1; mask < count; ++mask) {
            int top = std::bit_width(mask);
            u64 rest = mask & ~(u64{1} << (top - 1));
            int prev = std::bit_width(rest);
            a[mask] = static_cast<u32>(mul_mod(a[rest], binom[n - prev][top - prev], m));
        }
    }
    for (int d = 0; d < n - 1; ++d) {
        u64 step = u64{1} << d;
        u64 blocks = count >> (d + 1);
        parallel_chunks(0, blocks, workers, [&](u64 lo, u64 hi, unsigned) {
            for (u64 b = lo; b < hi; ++b) {
                u64 base = (b << (d + 1)) + step;
                for (u64 i = base; i < base + step; ++i) {
                    u64 x = a[i], y = a[i - step];
                    a[i] = static_cast<u32>(x >= y ? x - y : x + m - y);
                }
            }
        });
    }
    return a;
}

/// Bit-packed statistics modulo 2: bit `mask` of the result is beta_n(mask)
/// mod 2. One bit per subset keeps n = 31 inside ordinary RAM, and the
/// transform collapses to word-wide XORs.
inline std::vector<u64> build_parity_table(int n, unsigned workers = 0) {
    if (n < 1 || n > 32) throw std::invalid_argument("build_parity_table: need 1 <= n <= 32");
    u64 count = u64{1} << (n - 1);
    u64 words = (count + 63) / 64;
    std::vector<u64> bits(words, 0);
    {
        // f_S odd iff every gap binomial is odd (no binary carries).
        std::vector<std::vector<char>> odd(n + 1, std::vector<char>(n + 1, 0));
        for (int a = 0; a <= n; ++a)
            for (int b = 0; b <= a; ++b) odd[a][b] = ((static_cast<u64>(b) & (a - b)) == 0) ? 1 : 0;
        bits[0] |= 1;  // f_empty = 1
        for (u64 mask = 1; mask < count; ++mask) {
            int top = std::bit_width(mask);
            u64 rest = mask & ~(u64{1} << (top - 1));
            int prev = std::bit_width(rest);
            u64 rest_bit = (bits[rest >> 6] >> (rest & 63)) & 1;
            if (rest_bit & odd[n - prev][top - prev]) bits[mask >> 6] |= u64{1} << (mask & 63);
        }
    }
    static constexpr std::array<u64, 6> kHalfMasks = {
        0x5555555555555555ULL, 0x3333333333333333ULL, 0x0f0f0f0f0f0f0f0fULL,
        0x00ff00ff00ff00ffULL, 0x0000ffff0000ffffULL, 0x00000000ffffffffULL};
    for (int d = 0; d < n - 1; ++d) {
        if (d < 6) {
            u64 lo_mask = kHalfMasks[d];
            int shift = 1 << d;
            parallel_chunks(0, words, workers, [&](u64 lo, u64 hi, unsigned) {
                for (u64 w = lo; w < hi; ++w) bits[w] ^= (bits[w] & lo_mask) << shift;
            });
        } else {
            u64 wstep = u64{1} << (d - 6);
            u64 blocks = words >> (d - 6 + 1);
            parallel_chunks(0, blocks, workers, [&](u64 lo, u64 hi, unsigned) {
                for (u64 b = lo; b < hi; ++b) {
                    u64 base = (b << (d - 6 + 1)) + wstep;
                    for (u64 w = base; w < base + wstep; ++w) bits[w] ^= bits[w - wstep];
                }
            });
        }
    }
    if (count < 64) bits[0] &= (u64{1} << count) - 1;
    return bits;
}

/// a_{m,j}: the number of subsets whose statistic is j mod m.
struct ResidueHistogram {
    int n = 1;
    u64 m = 1;
    std::vector<u64> counts;
};

inline ResidueHistogram residue_histogram(const BetaTable& table, u64 m) {
    if (m < 1) throw std::invalid_argument("residue_histogram: m must be >= 1");
    ResidueHistogram h{table.n, m, std::vector<u64>(m, 0)};
    for (u64 v : table.values) ++h.counts[v % m];
    return h;
}

inline ResidueHistogram residue_histogram(int n, const std::vector<u32>& residues, u64 m) {
    ResidueHistogram h{n, m, std::vector<u64>(m, 0)};
    for (u32 v : residues) ++h.counts[v % m];
    return h;
}

/// b_{m,j}: the sum of all statistics congruent to j mod m. Bounded by n!,
/// accumulated exactly.
struct WeightedHistogram {
    int n = 1;
    u64 m = 1;
    std::vector<Int> sums;
};

inline WeightedHistogram weighted_histogram(const BetaTable& table, u64 m) {
    if (m < 1) throw std::invalid_argument("weighted_histogram: m must be >= 1");
    // n <= 24 so each bucket stays below 24! < 2^80.
    std::vector<unsigned __int128> acc(m, 0);
    for (u64 v : table.values) acc[v % m] += v;
    WeightedHistogram h{table.n, m, std::vector<Int>(m)};
    for (u64 j = 0; j < m; ++j) {
        unsigned __int128 x = acc[j];
        Int big = static_cast<u64>(x >> 64);
        big <<= 64;
        big += static_cast<u64>(x);
        h.sums[j] = big;
    }
    return h;
}

/// The proportion of odd statistics, in lowest terms. Runs in the bit-packed
/// mod-2 mode so n up to 31 is reachable.
inline Rational rho(int n, unsigned workers = 0) {
    auto bits = build_parity_table(n, workers);
    Int odd = 0;
    for (u64 w : bits) odd += std::popcount(w);
    Int total = Int{1} << (n - 1);
    return Rational(odd, total);
}

/// Checks the multiplication identity relating beta_n(S) and
/// beta_n(S xor {k}) over all S and k, with exact arithmetic.
inline CheckResult verify_macmahon(int n) {
    std::vector<BetaTable> tables(n + 1);
    for (int k = 1; k <= n; ++k) tables[k] = build_beta_table(k);
    u64 count = u64{1} << (n - 1);
    for (u64 mask = 0; mask < count; ++mask) {
        for (int k = 1; k <= n - 1; ++k) {
            u64 flip = mask ^ (u64{1} << (k - 1));
            Int lhs = Int{tables[n].at(mask)} + Int{tables[n].at(flip)};
            u64 left_mask = mask & ((u64{1} << (k - 1)) - 1);
            u64 right_mask = mask >> k;
            Int rhs = binomial(static_cast<u64>(n), k) * Int{tables[k].at(left_mask)} *
                      Int{tables[n - k].at(right_mask)};
            if (lhs != rhs) {
                return {false, "n=" + std::to_string(n) + " S-mask=" + std::to_string(mask) +
                                   " k=" + std::to_string(k) + ": " + lhs.str() + " != " + rhs.str()};
            }
        }
    }
    return {true, "all " + std::to_string(count * (n - 1)) + " identities hold"};
}

// ---------------------------------------------------------------------------
// Disk cache. Exact tables: magic "DSBT", version u32, n u32, count u64,
// count little-endian u64 values in mask order. Residue tables: magic "DSRT",
// version u32, n u32, m u64, count u64, values in the minimal whole number of
// bytes covering m-1.

namespace detail {

inline void put_u32(std::ostream& os, u32 v) {
    char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    os.write(b, 4);
}

inline void put_u64(std::ostream& os, u64 v) {
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    os.write(b, 8);
}

inline u32 get_u32(std::istream& is) {
    unsigned char b[4];
    if (!is.read(reinterpret_cast<char*>(b), 4)) throw cache_error("cache: truncated header");
    u32 v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<u32>(b[i]) << (8 * i);
    return v;
}

inline u64 get_u64(std::istream& is) {
    unsigned char b[8];
    if (!is.read(reinterpret_cast<char*>(b), 8)) throw cache_error("cache: truncated header");
    u64 v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<u64>(b[i]) << (8 * i);
    return v;
}

inline int bytes_for_max(u64 max_value) {
    int b = 1;
    while (max_value >= (u64{1} << (8 * b)) && b < 8) ++b;
    return b;
}

}  // namespace detail

inline void save_table(const BetaTable& table, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw cache_error("cache: cannot open for writing: " + path.string());
    os.write("DSBT", 4);
    detail::put_u32(os, 1);
    detail::put_u32(os, static_cast<u32>(table.n));
    detail::put_u64(os, table.values.size());
    for (u64 v : table.values) detail::put_u64(os, v);
    if (!os) throw cache_error("cache: write failed: " + path.string());
}

inline BetaTable load_table(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw cache_error("cache: cannot open: " + path.string());
    char magic[4];
    if (!is.read(magic, 4) || std::string(magic, 4) != "DSBT")
        throw cache_error("cache: bad magic in " + path.string());
    u32 version = detail::get_u32(is);
    if (version != 1) throw cache_error("cache: unsupported version " + std::to_string(version));
    u32 n = detail::get_u32(is);
    u64 count = detail::get_u64(is);
    if (n < 1 || n > kMaxExactN || count != (u64{1} << (n - 1)))
        throw cache_error("cache: header n/count mismatch in " + path.string());
    BetaTable t;
    t.n = static_cast<int>(n);
    t.values.resize(count);
    for (u64 i = 0; i < count; ++i) {
        unsigned char b[8];
        if (!is.read(reinterpret_cast<char*>(b), 8))
            throw cache_error("cache: truncated payload in " + path.string());
        u64 v = 0;
        for (int j = 0; j < 8; ++j) v |= static_cast<u64>(b[j]) << (8 * j);
        t.values[i] = v;
    }
    if (is.get() != std::ifstream::traits_type::eof())
        throw cache_error("cache: trailing bytes in " + path.string());
    return t;
}

inline void save_residue_table(int n, u64 m, const std::vector<u32>& residues,
                               const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw cache_error("cache: cannot open for writing: " + path.string());
    os.write("DSRT", 4);
    detail::put_u32(os, 1);
    detail::put_u32(os, static_cast<u32>(n));
    detail::put_u64(os, m);
    detail::put_u64(os, residues.size());
    int width = detail::bytes_for_max(m - 1);
    for (u32 v : residues)
        for (int i = 0; i < width; ++i) os.put(static_cast<char>((v >> (8 * i)) & 0xff));
    if (!os) throw cache_error("cache: write failed: " + path.string());
}

inline std::vector<u32> load_residue_table(const std::filesystem::path& path, int& n_out, u64& m_out) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw cache_error("cache: cannot open: " + path.string());
    char magic[4];
    if (!is.read(magic, 4) || std::string(magic, 4) != "DSRT")
        throw cache_error("cache: bad magic in " + path.string());
    u32 version = detail::get_u32(is);
    if (version != 1) throw cache_error("cache: unsupported version " + std::to_string(version));
    u32 n = detail::get_u32(is);
    u64 m = detail::get_u64(is);
    u64 count = detail::get_u64(is);
    if (n < 1 || n > 32 || m < 1 || count != (u64{1} << (n - 1)))
        throw cache_error("cache: header n/m/count mismatch in " + path.string());
    int width = detail::bytes_for_max(m - 1);
    std::vector<u32> values(count);
    for (u64 i = 0; i < count; ++i) {
        u32 v = 0;
        for (int j = 0; j < width; ++j) {
            int c = is.get();
            if (c == std::ifstream::traits_type::eof())
                throw cache_error("cache: truncated payload in " + path.string());
            v |= static_cast<u32>(c & 0xff) << (8 * j);
        }
        values[i] = v;
    }
    if (is.get() != std::ifstream::traits_type::eof())
        throw cache_error("cache: trailing bytes in " + path.string());
    n_out = static_cast<int>(n);
    m_out = m;
    return values;
}

}  // namespace descent
