#include <catch2/catch_amalgamated.hpp>

#include "descent/beta_table.hpp"
#include "descent/cyclotomic.hpp"
#include "descent/reference_data.hpp"

using namespace descent;

namespace {

/// Independent divisibility oracle: long division with rational coefficients,
/// sharing no code with the checked reduction paths.
bool divides_by_rational_division(const std::vector<u64>& counts, unsigned m) {
    const auto& phi = cyclotomic_polynomial(m);
    std::vector<Rational> rem(counts.begin(), counts.end());
    std::size_t deg = static_cast<std::size_t>(phi.degree());
    while (rem.size() > deg) {
        if (rem.back() == 0) {
            rem.pop_back();
            continue;
        }
        Rational lead = rem.back();
        std::size_t top = rem.size() - 1;
        for (std::size_t j = 0; j <= deg; ++j)
            rem[top - deg + j] -= lead * Rational(phi.coeffs[j]);
        rem.pop_back();  // the top coefficient is now zero
    }
    for (const auto& c : rem)
        if (c != 0) return false;
    return true;
}

}  // namespace

TEST_CASE("reduction basics") {
    CHECK(reduce_mod_cyclotomic(IntPolynomial{{1, 1}}, 2).is_zero());
    for (unsigned m : {2u, 5u, 6u, 12u}) {
        std::vector<Int> tm(m + 1, 0);
        tm[m] = 1;  // t^m
        CHECK(reduce_mod_cyclotomic(IntPolynomial{tm}, m) ==
              reduce_mod_cyclotomic(IntPolynomial{{1}}, m));
    }
    // histogram of Q_4 mod 4: a_1 = a_3 = 4 reduces to zero mod t^2 + 1
    BetaTable t4 = build_beta_table(4);
    auto h = residue_histogram(t4, 4);
    CHECK(h.counts == std::vector<u64>{0, 4, 0, 4});
    CHECK(q_at_root(h, 4).is_zero());
}

TEST_CASE("root evaluations") {
    BetaTable t4 = build_beta_table(4);
    CHECK(q_at_root(t4, 4).is_zero());
    auto at_minus_one = q_at_root(t4, 2);
    CHECK(at_minus_one.coeffs == std::vector<Int>{-8});
    BetaTable t5 = build_beta_table(5);
    CHECK(q_at_root(t5, 10).is_zero());
    // ties the proportion to the evaluation at -1
    for (int n : {3, 4, 6, 7, 9}) {
        BetaTable t = build_beta_table(n);
        Rational expected = Rational(Int(1) << (n - 1)) * (1 - 2 * rho(n));
        CHECK(Rational(q_at_root(t, 2).coeffs[0]) == expected);
    }
}

TEST_CASE("divisibility matches an independent rational division") {
    CHECK(divides(build_beta_table(11), 6));
    CHECK(divides(build_beta_table(14), 28));
    CHECK_FALSE(divides(build_beta_table(7), 4));
    for (int n = 3; n <= 10; ++n) {
        BetaTable t = build_beta_table(n);
        for (unsigned m = 2; m <= 30; ++m) {
            auto h = residue_histogram(t, m);
            CHECK(divides(t, m) == divides_by_rational_division(h.counts, m));
        }
    }
}

TEST_CASE("double factors through the derivative") {
    CHECK(multiplicity_at_least_2(build_beta_table(6), 2));
    CHECK(multiplicity_at_least_2(build_beta_table(12), 22));
    CHECK_FALSE(multiplicity_at_least_2(build_beta_table(5), 10));
}

TEST_CASE("sufficient histogram conditions") {
    BetaTable t4 = build_beta_table(4);
    CHECK(lemma41_conditions_hold(residue_histogram(t4, 4)));
    BetaTable t8 = build_beta_table(8);
    CHECK(lemma41_conditions_hold(residue_histogram(t8, 28)));
    CHECK_THROWS_AS(lemma41_conditions_hold(residue_histogram(t8, 7)), std::invalid_argument);
    // the conditions imply divisibility
    for (int n = 3; n <= 14; ++n) {
        BetaTable t = build_beta_table(n);
        for (unsigned m = 2; m <= 60; m += 2) {
            if (lemma41_conditions_hold(residue_histogram(t, m))) {
                CAPTURE(n, m);
                CHECK(divides(t, m));
            }
        }
    }
}

TEST_CASE("conjugation") {
    // for m = 5, conj(t) = t^4 = -1 - t - t^2 - t^3
    CyclotomicInt z{5, {0, 1, 0, 0}};
    CHECK(conjugate(z).coeffs == std::vector<Int>{-1, -1, -1, -1});
    for (unsigned m : {5u, 6u, 10u, 22u}) {
        CyclotomicInt w{m, std::vector<Int>(euler_phi(m))};
        for (std::size_t i = 0; i < w.coeffs.size(); ++i) w.coeffs[i] = static_cast<int>(i) - 2;
        CHECK(conjugate(conjugate(w)) == w);
    }
}

TEST_CASE("factor scans") {
    BetaTable t5 = build_beta_table(5);
    auto r5 = scan_factors(t5, 100);
    CHECK(r5.entries == std::vector<FactorEntry>{{2, 2}, {10, 1}});

    BetaTable t12 = build_beta_table(12);
    auto r12 = scan_factors(t12, 250);
    CHECK(r12.entries == std::vector<FactorEntry>{{2, 2}, {6, 1}, {10, 1}, {18, 1},
                                                  {22, 2}, {66, 1}, {110, 1}, {198, 1}});

    // odd indices stay silent even when scanned
    auto r12_all = scan_factors(t12, 250, false);
    CHECK(r12_all.entries == r12.entries);
}

TEST_CASE("scans are independent of the worker count") {
    BetaTable t10 = build_beta_table(10);
    auto single = scan_factors(t10, 120, true, true, 1);
    for (unsigned workers : {2u, 7u})
        CHECK(scan_factors(t10, 120, true, true, workers).entries == single.entries);
}

TEST_CASE("known factor lists reproduce for small n") {
    for (int n = 3; n <= 12; ++n) {
        BetaTable t = build_beta_table(n);
        auto report = scan_factors(t, 250);
        std::vector<FactorEntry> expected;
        for (const auto& e : reference::known_factors().at(n))
            if (e.m <= 250) expected.push_back(e);
        CAPTURE(n);
        CHECK(report.entries == expected);
    }
}
