#include "doctest.h"

#include "occ/decomp.hpp"
#include "occ/errors.hpp"
#include "occ/exact.hpp"
#include "occ/scheme.hpp"

#include <vector>

using namespace occ;

TEST_CASE("generating polynomial from the pmf") {
    auto p = pgf_coefficients(exact_pmf({3, {1, 1}}));
    REQUIRE(p.size() == 3);
    CHECK(p[0] == 0);
    CHECK(p[1] == Rat(2, 3));
    CHECK(p[2] == Rat(1, 3));

    auto point = pgf_coefficients(exact_pmf({5, {3}}));
    CHECK(point == Poly{0, 0, 1});

    auto trip = pgf_coefficients(exact_pmf({4, {1, 1, 1}}));
    CHECK(trip == Poly{0, Rat(3, 8), Rat(9, 16), Rat(1, 16)});
}

TEST_CASE("two-cell factorization is exact") {
    auto dec = extract_bernoulli(Poly{0, Rat(2, 3), Rat(1, 3)});
    CHECK(dec.degree == 2);
    REQUIRE(dec.a.size() == 2);
    CHECK(dec.roots[0] == 0);
    CHECK(dec.roots[1] == -2);
    CHECK(dec.a[0] == 1);
    CHECK(dec.a[1] == to_real(Rat(1, 3)));
    REQUIRE(dec.l3.has_value());
    CHECK(abs(*dec.l3 - 1 / sqrt(Real(2))) < 1e-45);
    CHECK(abs(*dec.l4 + Real(3) / 2) < 1e-45);
    auto [l3, l4] = l3_l4(dec);
    CHECK(l3 == *dec.l3);
    CHECK(l4 == *dec.l4);
}

TEST_CASE("deterministic count decomposes into sure successes") {
    auto dec = extract_bernoulli(Poly{0, 0, 1});
    REQUIRE(dec.a.size() == 2);
    CHECK(dec.a[0] == 1);
    CHECK(dec.a[1] == 1);
    CHECK(!dec.l3.has_value());
    CHECK_THROWS_AS(l3_l4(dec), DomainError);
}

TEST_CASE("three singleton sets in four cells") {
    auto d = derive({4, {1, 1, 1}});
    auto dec = extract_bernoulli(pgf_coefficients(exact_pmf({4, {1, 1, 1}})));
    REQUIRE(dec.a.size() == 3);
    CHECK(dec.a[0] == 1);
    Real s57 = sqrt(Real(57));
    CHECK(abs(dec.a[1] - (11 + s57) / 32) < 1e-40);
    CHECK(abs(dec.a[2] - (11 - s57) / 32) < 1e-40);
    CHECK(abs(dec.sum_a() - to_real(d.mean_empty)) < 1e-40);
    CHECK(abs(dec.sum_a1a() - to_real(d.var_empty)) < 1e-40);
}

TEST_CASE("convolution of successes rebuilds the pmf") {
    auto pmf = exact_pmf({3, {1, 1}});
    auto dec = extract_bernoulli(pgf_coefficients(pmf));
    auto probs = reconstruct_pmf(dec);
    REQUIRE(probs.size() == 3);
    CHECK(abs(probs[0]) < 1e-45);
    CHECK(abs(probs[1] - to_real(Rat(2, 3))) < 1e-45);
    CHECK(abs(probs[2] - to_real(Rat(1, 3))) < 1e-45);

    auto single = extract_bernoulli(Poly{0, 1});
    auto one = reconstruct_pmf(single);
    REQUIRE(one.size() == 2);
    CHECK(one[0] == 0);
    CHECK(one[1] == 1);
}

TEST_CASE("round trip battery") {
    std::vector<SchemeParams> cases{
        {6, {2, 3}}, {7, {3, 2, 4}}, {9, {4, 4}},  {8, {2, 5, 3}},
        {10, {5, 2}}, {12, {6, 4}},  {11, {1, 1, 1, 1}},
    };
    for (const auto& params : cases) {
        CAPTURE(params.cells);
        auto d = derive(params);
        auto pmf = exact_pmf(params);
        auto dec = extract_bernoulli(pgf_coefficients(pmf));
        CHECK(dec.degree == pmf.max_k());

        long sure = 0;
        for (const auto& r : dec.roots)
            if (r == 0) ++sure;
        CHECK(sure == d.support_min());

        for (const auto& av : dec.a) {
            CHECK(av > 0);
            CHECK(av <= 1);
        }
        for (const auto& r : dec.roots) CHECK(r <= 0);

        Real mean = to_real(d.mean_empty), var = to_real(d.var_empty);
        CHECK(abs(dec.sum_a() - mean) <= 1e-10 * mean);
        CHECK(abs(dec.sum_a1a() - var) <= 1e-10 * var);

        auto probs = reconstruct_pmf(dec);
        for (long k = 0; k <= dec.degree; ++k)
            CHECK(abs(probs[static_cast<size_t>(k)] - to_real(pmf.at(k))) <= 1e-9);
    }
}

TEST_CASE("degree cap and malformed inputs") {
    DecompOptions tight;
    tight.degree_cap = 1;
    CHECK_THROWS_AS(extract_bernoulli(Poly{0, Rat(2, 3), Rat(1, 3)}, tight), ResourceError);
    CHECK_THROWS_AS(extract_bernoulli(Poly{1}), DomainError);
    CHECK_THROWS_AS(extract_bernoulli(Poly{0, 2, -1}), DomainError);
    // a positive zero cannot come from a Bernoulli product
    CHECK_THROWS_AS(extract_bernoulli(Poly{-2, Rat(7, 2), 1}), ValidationError);
}
