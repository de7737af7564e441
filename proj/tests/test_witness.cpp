#include <catch2/catch_amalgamated.hpp>

#include "descent/combinatorics.hpp"
#include "descent/reference_data.hpp"
#include "descent/verify.hpp"
#include "descent/witness.hpp"

using namespace descent;

namespace {

const FactorWitness* find_s(const std::vector<FactorWitness>& ws, u64 s) {
    for (const auto& w : ws)
        if (w.s == s) return &w;
    return nullptr;
}

}  // namespace

TEST_CASE("one-digit searches") {
    auto w8 = find_one_digit_witnesses(3);
    auto* s7 = find_s(w8, 7);
    REQUIRE(s7 != nullptr);
    CHECK(s7->k == 2);
    CHECK(s7->factor_index == 28);

    auto w16 = find_one_digit_witnesses(4);
    std::set<u64> ss;
    for (const auto& w : w16) ss.insert(w.s);
    CHECK(ss == std::set<u64>{1, 3, 5, 11, 13, 15, 39, 55, 65, 143, 715});
    auto* s39 = find_s(w16, 39);
    REQUIRE(s39 != nullptr);
    CHECK(std::find(s39->valid_ks.begin(), s39->valid_ks.end(), 5) != s39->valid_ks.end());
    auto* s15 = find_s(w16, 15);
    REQUIRE(s15 != nullptr);
    CHECK(s15->valid_ks == std::vector<u64>{2, 14});  // only C(16,2) and its mirror

    auto w32 = find_one_digit_witnesses(5);
    CHECK(w32.size() == 96);
    for (const auto& w : w32) {
        CHECK(17678835 % w.s == 0);
        CHECK(std::find(w.valid_ks.begin(), w.valid_ks.end(), 15) != w.valid_ks.end());
    }
}

TEST_CASE("two-digit searches") {
    auto w18 = find_two_digit_witnesses(18);
    std::set<u64> ss;
    for (const auto& w : w18) ss.insert(w.s);
    CHECK(ss == std::set<u64>{3, 9, 17, 51, 153});
    CHECK(find_s(w18, 153)->k == 4);

    auto w20 = find_two_digit_witnesses(20);
    CHECK(find_s(w20, 4845)->k == 6);
    CHECK(w20.size() == 15);  // every divisor of 4845 except 1

    CHECK(find_s(find_two_digit_witnesses(10), 15)->k == 3);
    CHECK_THROWS_AS(find_two_digit_witnesses(11), std::invalid_argument);
}

TEST_CASE("three-digit searches") {
    auto w21 = find_three_digit_witnesses(21);
    std::set<u64> ss;
    for (const auto& w : w21) ss.insert(w.s);
    CHECK(ss == std::set<u64>{3, 7, 21});
    CHECK(find_s(w21, 21)->k == 2);

    CHECK(find_s(find_three_digit_witnesses(22), 77)->k == 3);
    CHECK(find_s(find_three_digit_witnesses(14), 91)->k == 3);
    CHECK(find_three_digit_witnesses(7).empty());  // every element is essential
}

TEST_CASE("searched witnesses satisfy their own conditions") {
    auto recheck = [](const FactorWitness& w, bool one_digit) {
        for (u64 k : w.valid_ks) {
            CHECK(binomial(w.n, static_cast<long long>(k)) % w.s == 0);
            if (one_digit)
                CHECK(k != w.n / 2);
            else
                CHECK_FALSE(essential_base2(k, w.n));
        }
    };
    for (const auto& w : find_one_digit_witnesses(4)) recheck(w, true);
    for (const auto& w : find_two_digit_witnesses(20)) recheck(w, false);
    for (const auto& w : find_three_digit_witnesses(22)) recheck(w, false);
}

TEST_CASE("named rules") {
    auto w528 = theorem_rule_witness(528, NamedRule::order_last, 31);
    REQUIRE(w528.has_value());
    CHECK(w528->k == 3);

    auto w1088 = theorem_rule_witness(1088, NamedRule::both_half, 5);
    REQUIRE(w1088.has_value());
    CHECK(w1088->k == 9);

    auto w32802 = theorem_rule_witness(32802, NamedRule::three_split_half, 11);
    REQUIRE(w32802.has_value());
    CHECK(w32802->k == 7);

    auto w72 = theorem_rule_witness(72, NamedRule::split_half, 3);
    REQUIRE(w72.has_value());
    CHECK(w72->k == 7);

    // the small-n override
    auto w6 = theorem_rule_witness(6, NamedRule::split_half, 3);
    REQUIRE(w6.has_value());
    CHECK(w6->k == 5);

    // wrong congruence class
    CHECK_FALSE(theorem_rule_witness(10, NamedRule::split_half, 3).has_value());
    // 7 is excluded from the g-1 rule (p > 3 but order odd makes {g-1,g-1} = {2,2})
    CHECK_FALSE(theorem_rule_witness(12, NamedRule::order_last, 7).has_value());

    auto w14 = theorem_rule_witness(14, NamedRule::three_fermat, 7);
    REQUIRE(w14.has_value());
    CHECK(w14->k == 13);  // the p = 7 variant
    auto w4108 = theorem_rule_witness(4108, NamedRule::three_fermat, 13);
    REQUIRE(w4108.has_value());
    CHECK(w4108->k == 7);
}

TEST_CASE("exponent classes") {
    CHECK(exponent_classes_two_digit(3) == reference::exponent_classes().at(3));
    CHECK(exponent_classes_two_digit(5) == reference::exponent_classes().at(5));
    CHECK(exponent_classes_two_digit(11) == reference::exponent_classes().at(11));
    CHECK(exponent_classes_two_digit(17) == reference::exponent_classes().at(17));
    CHECK(exponent_classes_two_digit(11).size() == 30);
    CHECK(exponent_classes_two_digit(17).size() == 20);

    // Mersenne primes admit only the top class
    for (u64 p : {7ULL, 31ULL, 127ULL}) {
        int g = static_cast<int>(multiplicative_order(2, p));
        CHECK(exponent_classes_two_digit(p) ==
              std::set<std::pair<int, int>>{{g - 1, g - 1}});
    }

    // membership is well defined mod g
    for (u64 p : {5ULL, 11ULL}) {
        auto classes = exponent_classes_two_digit(p);
        u64 g = multiplicative_order(2, p);
        for (int a = 0; a <= 25; ++a) {
            for (int b = a; b <= 25; ++b) {
                int ra = static_cast<int>(a % g), rb = static_cast<int>(b % g);
                if (ra > rb) std::swap(ra, rb);
                bool carry = power_mod(2, a, p) + power_mod(2, b, p) >= p;
                CHECK(classes.contains({ra, rb}) == carry);
            }
        }
    }
}

TEST_CASE("cross checks against the scanner") {
    auto r12 = cross_check_witnesses(12, 250);
    CHECK(r12.pass);
    std::set<u64> predicted;
    for (const auto& row : r12.rows) predicted.insert(row.s);
    CHECK(predicted == std::set<u64>{3, 5, 9, 11, 33, 55, 99});

    auto r8 = cross_check_witnesses(8, 100);
    CHECK(r8.pass);
    bool has28 = false;
    for (const auto& row : r8.rows) has28 |= row.factor_index == 28;
    CHECK(has28);

    auto r22 = cross_check_witnesses(22, 200);
    CHECK(r22.pass);
    std::set<u64> s22;
    for (const auto& row : r22.rows) s22.insert(row.s);
    CHECK(s22 == std::set<u64>{7, 11, 77});
}

TEST_CASE("published witness tables reproduce") {
    CHECK(verify_table2().pass);
    CHECK(verify_table3().pass);
    CHECK(verify_table4().pass);
    CHECK(verify_table5().pass);
}
