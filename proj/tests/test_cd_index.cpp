#include <catch2/catch_amalgamated.hpp>

#include "descent/beta_table.hpp"
#include "descent/cd_index.hpp"

using namespace descent;

TEST_CASE("word enumeration") {
    auto w3 = cd_words_of_weight(3);
    CHECK(w3 == std::vector<CdWord>{"ccc", "cd", "dc"});
    // counts follow the Fibonacci pattern
    std::size_t prev2 = 1, prev1 = 1;
    for (int weight = 2; weight <= 15; ++weight) {
        std::size_t count = cd_words_of_weight(weight).size();
        CHECK(count == prev1 + prev2);
        prev2 = prev1;
        prev1 = count;
    }
}

TEST_CASE("expansions") {
    auto c = expand_cd_to_ab("c");
    CHECK(c.terms == std::map<u64, Int>{{0, 1}, {1, 1}});
    auto cd = expand_cd_to_ab("cd");
    CHECK(cd.terms == std::map<u64, Int>{{0b100, 1}, {0b010, 1}, {0b101, 1}, {0b011, 1}});
    for (int k = 1; k <= 5; ++k) {
        auto dk = expand_cd_to_ab(std::string(static_cast<std::size_t>(k), 'd'));
        CHECK(dk.terms.size() == (u64{1} << k));
        for (const auto& [mask, coeff] : dk.terms) {
            CHECK(std::popcount(mask) == k);
            CHECK(coeff == 1);
        }
    }
}

TEST_CASE("signatures are distinct") {
    for (int weight = 1; weight <= 12; ++weight) {
        std::set<u64> seen;
        for (const CdWord& w : cd_words_of_weight(weight)) CHECK(seen.insert(cd_signature_mask(w)).second);
    }
}

TEST_CASE("ab index of small Boolean algebras") {
    auto psi2 = ab_index(build_beta_table(2));
    CHECK(psi2.terms == std::map<u64, Int>{{0, 1}, {1, 1}});
    auto psi3 = ab_index(build_beta_table(3));
    CHECK(psi3.terms == std::map<u64, Int>{{0, 1}, {1, 2}, {2, 2}, {3, 1}});
}

TEST_CASE("cd forms of the small indices") {
    auto cd3 = ab_to_cd(ab_index(build_beta_table(3)));
    CHECK(cd3.terms == std::map<CdWord, Int>{{"cc", 1}, {"d", 1}});
    CHECK(to_string(cd3) == "c^2 + d");
    auto cd4 = ab_to_cd(ab_index(build_beta_table(4)));
    CHECK(cd4.terms == std::map<CdWord, Int>{{"ccc", 1}, {"cd", 2}, {"dc", 2}});
    CHECK(to_string(cd4) == "c^3 + 2cd + 2dc");
}

TEST_CASE("ab to cd rejects inexpressible input") {
    AbPolynomial just_a;
    just_a.degree = 1;
    just_a.terms[0] = 1;  // the single letter a
    CHECK_THROWS_AS(ab_to_cd(just_a), std::invalid_argument);
}

TEST_CASE("round trip and positivity") {
    for (int n = 2; n <= 10; ++n) {
        auto psi = ab_index(build_beta_table(n));
        auto cd = ab_to_cd(psi);
        CHECK(cd_to_ab(cd) == psi);
        for (const auto& [w, coeff] : cd.terms) CHECK(coeff > 0);
    }
}

TEST_CASE("sign functional") {
    BetaTable t4 = build_beta_table(4);
    CHECK(functional_L("cd", t4) == -4);
    CHECK(functional_L("ccc", t4) == -8);
    BetaTable t6 = build_beta_table(6);
    for (const CdWord& w : cd_words_of_weight(5)) CHECK(functional_L(w, t6) == 0);
    CHECK_THROWS_AS(functional_L("cc", t4), std::invalid_argument);
}

TEST_CASE("root functional coincides with the histogram route on c^(n-1)") {
    for (int n : {4, 6, 10}) {
        BetaTable t = build_beta_table(n);
        CdWord all_c(static_cast<std::size_t>(n - 1), 'c');
        for (unsigned m : {2u, 4u, 6u, 10u})
            CHECK(functional_root(all_c, t, m) == q_at_root(t, m));
    }
}

TEST_CASE("imaginary part vanishes word by word") {
    // away from the single exceptional word the root functional lands in the
    // fixed ring of conjugation
    for (u64 q : {3ULL, 5ULL}) {
        unsigned p = static_cast<unsigned>(odd_prime_power(q)->first);
        unsigned m = 2 * p;
        int n = static_cast<int>(2 * q);
        BetaTable t = build_beta_table(n);
        auto res = residues_u8(t, m);
        CdWord exceptional = std::string((q - 1) / 2, 'd') + "c" + std::string((q - 1) / 2, 'd');
        for (const CdWord& w : cd_words_of_weight(n - 1)) {
            if (w == exceptional) continue;
            auto z = functional_root(w, res, n, m);
            CHECK(conjugate(z) == z);
        }
    }
}

TEST_CASE("theorem verifiers") {
    auto r6 = verify_theorem_7_2(6);
    CHECK(r6.pass);
    CHECK_FALSE(r6.skipped);
    auto r8 = verify_theorem_7_2(8);
    CHECK(r8.skipped);  // Q_8(-1) is nonzero

    for (u64 q : {3ULL, 5ULL}) {
        auto r = verify_theorem_8_2(q);
        CAPTURE(q, r.lines);
        CHECK(r.pass);
    }

    auto r91_3 = verify_theorem_9_1(3);
    CHECK(r91_3.skipped);  // rho(4) = 1, hypothesis discrepancy
    auto r91_11 = verify_theorem_9_1(11);
    CHECK(r91_11.pass);
    auto r91_13 = verify_theorem_9_1(13, false);
    CHECK(r91_13.pass);  // 13 = 1 mod 4: single factor only
}
