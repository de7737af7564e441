#include <algorithm>
#include <numeric>

#include <catch2/catch_amalgamated.hpp>

#include "descent/beta_table.hpp"
#include "descent/combinatorics.hpp"

using namespace descent;

namespace {

/// Brute-force oracle: tally the descent mask of every permutation of [n].
std::vector<u64> beta_by_enumeration(int n) {
    std::vector<u64> counts(u64{1} << (n - 1), 0);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    do {
        u64 mask = 0;
        for (int i = 0; i + 1 < n; ++i)
            if (perm[i] > perm[i + 1]) mask |= u64{1} << i;
        ++counts[mask];
    } while (std::next_permutation(perm.begin(), perm.end()));
    return counts;
}

u64 reverse_mask(u64 mask, int width) {
    u64 out = 0;
    for (int i = 0; i < width; ++i)
        if ((mask >> i) & 1) out |= u64{1} << (width - 1 - i);
    return out;
}

}  // namespace

TEST_CASE("tables match the permutation oracle") {
    for (int n = 1; n <= 8; ++n) {
        CAPTURE(n);
        CHECK(build_beta_table(n).values == beta_by_enumeration(n));
    }
}

TEST_CASE("frozen small values") {
    BetaTable t4 = build_beta_table(4);
    CHECK(t4.values == std::vector<u64>{1, 3, 5, 3, 3, 5, 3, 1});
    CHECK(beta_single(3, 0b01) == 2);
    CHECK(beta_single(4, 0b010) == 5);
    CHECK(beta_single(9, 0) == 1);
    CHECK(flag_f(4, 0b010) == 6);
    CHECK(flag_f(9, 0) == 1);
    CHECK(flag_f(11, 0b1) == 11);
}

TEST_CASE("row sums, maxima, and symmetries") {
    for (int n = 1; n <= 16; ++n) {
        BetaTable t = build_beta_table(n);
        Int sum = 0;
        u64 best = 0;
        for (u64 v : t.values) {
            sum += v;
            best = std::max(best, v);
        }
        CHECK(sum == factorial(n));
        CHECK(Int(best) == euler_zigzag(n));
        u64 full = t.size() - 1;
        for (u64 mask = 0; mask < t.size(); ++mask) {
            CHECK(t.at(mask) == t.at(reverse_mask(mask, n - 1)));
            CHECK(t.at(mask) == t.at(full & ~mask));
        }
    }
}

TEST_CASE("beta_single agrees with the bulk table") {
    BetaTable t = build_beta_table(9);
    for (u64 mask = 0; mask < t.size(); ++mask) CHECK(beta_single(9, mask) == Int(t.at(mask)));
}

TEST_CASE("results are identical for any worker count") {
    for (unsigned workers : {1u, 2u, 5u}) {
        CHECK(build_beta_table(11, workers).values == build_beta_table(11, 1).values);
        CHECK(build_residue_table(11, 37, workers) == build_residue_table(11, 37, 1));
        CHECK(build_parity_table(13, workers) == build_parity_table(13, 1));
    }
}

TEST_CASE("exact mode ceiling") {
    CHECK_THROWS_AS(build_beta_table(25), exact_mode_error);
    CHECK_THROWS_AS(build_beta_table(0), std::invalid_argument);
}

TEST_CASE("residue tables agree with the exact table") {
    CHECK(build_residue_table(4, 2) == std::vector<u32>(8, 1));
    CHECK(build_residue_table(3, 2) == std::vector<u32>{1, 0, 0, 1});
    for (int n : {6, 10, 12}) {
        BetaTable t = build_beta_table(n);
        for (u64 m : {2ULL, 3ULL, 5ULL, 7ULL, 16ULL, 60ULL}) {
            auto r = build_residue_table(n, m);
            for (u64 mask = 0; mask < t.size(); ++mask) CHECK(r[mask] == t.at(mask) % m);
        }
    }
}

TEST_CASE("parity tables match mod-2 residues") {
    for (int n : {1, 2, 5, 7, 8, 12, 14}) {
        auto bits = build_parity_table(n);
        auto r = build_residue_table(n, 2);
        for (u64 mask = 0; mask < (u64{1} << (n - 1)); ++mask)
            CHECK(((bits[mask >> 6] >> (mask & 63)) & 1) == r[mask]);
    }
}

TEST_CASE("histograms") {
    BetaTable t4 = build_beta_table(4);
    auto h = residue_histogram(t4, 2);
    CHECK(h.counts == std::vector<u64>{0, 8});
    BetaTable t3 = build_beta_table(3);
    CHECK(residue_histogram(t3, 2).counts == std::vector<u64>{2, 2});

    auto w = weighted_histogram(t4, 2);
    CHECK(w.sums == std::vector<Int>{0, 24});
    for (int n : {5, 6}) {
        BetaTable t = build_beta_table(n);
        for (u64 m : {2ULL, 6ULL, 10ULL}) {
            auto wh = weighted_histogram(t, m);
            Int total = 0;
            for (const auto& b : wh.sums) total += b;
            CHECK(total == factorial(n));
            auto rh = residue_histogram(t, m);
            u64 count_total = 0;
            for (u64 c : rh.counts) count_total += c;
            CHECK(count_total == t.size());
        }
    }
}

TEST_CASE("proportion of odd statistics") {
    CHECK(rho(1) == Rational(1));
    CHECK(rho(2) == Rational(1));
    CHECK(rho(4) == Rational(1));
    CHECK(rho(7) == Rational(1, 2));
    CHECK(rho(12) == Rational(1, 2));
    CHECK(rho(15) == Rational(29, 64));
    CHECK(rho(23) == Rational(29, 64));  // same binary-ones count as 15
}

TEST_CASE("multiplication identity") {
    BetaTable t4 = build_beta_table(4);
    CHECK(Int(t4.at(0)) + Int(t4.at(0b010)) == binomial(4, 2));
    for (int n = 2; n <= 9; ++n) {
        auto result = verify_macmahon(n);
        CAPTURE(n, result.detail);
        CHECK(result.pass);
    }
}

TEST_CASE("statistic parity is stable under flipping a non-essential element") {
    for (int n : {6, 10, 11, 12}) {
        BetaTable t = build_beta_table(n);
        for (u64 k = 1; k < static_cast<u64>(n); ++k) {
            if (is_essential(k, n, 2)) continue;
            for (u64 mask = 0; mask < t.size(); ++mask) {
                u64 other = mask ^ (u64{1} << (k - 1));
                CHECK((t.at(mask) & 1) == (t.at(other) & 1));
            }
        }
    }
}

TEST_CASE("even and odd residue classes balance for two or three binary ones") {
    for (int n : {5, 6, 9, 10, 12, 7, 11, 13, 14}) {
        BetaTable t = build_beta_table(n);
        for (u64 s : {1ULL, 3ULL, 5ULL, 7ULL}) {
            auto h = residue_histogram(t, 2 * s);
            u64 even = 0, odd = 0;
            for (u64 j = 0; j < 2 * s; ++j) (j % 2 == 0 ? even : odd) += h.counts[j];
            CHECK(even == odd);
        }
    }
}
