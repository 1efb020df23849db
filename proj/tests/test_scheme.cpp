#include "doctest.h"

#include "occ/errors.hpp"
#include "occ/moments.hpp"
#include "occ/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

using namespace occ;

TEST_CASE("parameter validation") {
    auto bad = [](long cells, std::vector<long> sizes) {
        SchemeParams p{cells, std::move(sizes)};
        CHECK_THROWS_AS(p.validate(), DomainError);
    };
    bad(1, {1});
    bad(4, {});
    bad(4, {0});
    bad(4, {4});
    bad(2, {1, 3});
    SchemeParams ok{2, {1, 1}};
    CHECK_NOTHROW(ok.validate());
}

TEST_CASE("derived scalars, two singleton sets in three cells") {
    auto d = derive({3, {1, 1}});
    CHECK(d.miss_all_prob == Rat(4, 9));
    CHECK(d.mean_empty == Rat(4, 3));
    CHECK(d.sigma2 == Rat(4, 81));
    CHECK(d.var_correction() == Rat(1, 2));
    CHECK(d.var_empty == Rat(2, 9));
    CHECK(d.alpha == Rat(2, 81));
    CHECK(d.support_min() == 1);
    CHECK(d.support_max() == 2);
    CHECK(d.odds_elem_sym == std::vector<Rat>{1, 1, Rat(1, 4)});
}

TEST_CASE("derived scalars, sets of size two and one in four cells") {
    auto d = derive({4, {2, 1}});
    CHECK(d.miss_all_prob == Rat(3, 8));
    CHECK(d.mean_empty == Rat(3, 2));
    CHECK(d.sigma2 == Rat(3, 64));
    CHECK(d.var_correction() == Rat(1, 3));
    CHECK(d.var_empty == Rat(1, 4));
}

TEST_CASE("three singleton sets in four cells") {
    auto d = derive({4, {1, 1, 1}});
    CHECK(d.mean_empty == Rat(27, 16));
    CHECK(d.var_empty == Rat(87, 256));
}

TEST_CASE("a single set is degenerate") {
    auto d = derive({5, {3}});
    CHECK(d.degenerate());
    CHECK(d.sigma2 == 0);
    CHECK(d.var_empty == 0);
    CHECK(d.mean_empty == 2);
    CHECK(d.support_min() == 2);
    CHECK(d.support_max() == 2);
    CHECK_THROWS_AS(d.var_correction(), DomainError);
}

TEST_CASE("sigma2 is positive once there are two sets") {
    for (long N : {2L, 5L, 9L, 17L})
        for (long n1 = 1; n1 < N; ++n1)
            for (long n2 = 1; n2 < N; ++n2) {
                auto d = derive({N, {n1, n2}});
                CHECK(d.sigma2 > 0);
                CHECK(d.var_empty == N * d.sigma2 * (1 + d.var_correction()));
            }
}

TEST_CASE("elementary symmetric polynomials match subset sums") {
    auto d = derive({11, {2, 3, 5, 7}});
    const auto& r = d.odds;
    const long s = 4;
    std::vector<Rat> direct(s + 1, Rat(0));
    for (unsigned long mask = 0; mask < (1ul << s); ++mask) {
        Rat prod = 1;
        int bits = 0;
        for (long l = 0; l < s; ++l)
            if (mask & (1ul << l)) {
                prod *= r[l];
                ++bits;
            }
        direct[bits] += prod;
    }
    CHECK(d.odds_elem_sym == direct);
}

TEST_CASE("appending a singleton set strictly lowers the mean") {
    std::vector<long> sets{3, 5};
    for (int i = 0; i < 4; ++i) {
        auto before = derive({12, sets});
        sets.push_back(1);
        auto after = derive({12, sets});
        CHECK(after.mean_empty < before.mean_empty);
    }
}

TEST_CASE("derive is invariant under set permutation") {
    auto a = derive({20, {3, 7, 5}});
    auto b = derive({20, {7, 5, 3}});
    CHECK(a.sigma2 == b.sigma2);
    CHECK(a.var_empty == b.var_empty);
    CHECK(a.alpha == b.alpha);
    CHECK(a.odds_elem_sym == b.odds_elem_sym);
}

TEST_CASE("variance correction decays like 1/N at fixed rates") {
    // proportions 0.3 and 0.5 of N
    std::vector<double> logN, logb;
    for (long N : {20L, 40L, 80L, 160L, 320L}) {
        auto d = derive({N, {3 * N / 10, N / 2}});
        double b = static_cast<double>(to_real(d.var_correction()));
        REQUIRE(b > 0);
        logN.push_back(std::log(static_cast<double>(N)));
        logb.push_back(std::log(b));
    }
    double n = static_cast<double>(logN.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < logN.size(); ++i) {
        sx += logN[i];
        sy += logb[i];
        sxx += logN[i] * logN[i];
        sxy += logN[i] * logb[i];
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(slope <= -0.9);
}

TEST_CASE("diagnostics for the smallest scheme") {
    auto d = derive({3, {1, 1}});
    auto gm = g_moments(d);
    auto diag = diagnostics(d, gm);

    // min(1/E|g~|^3, sqrt(pq)) = sqrt(2)/3, scaled by sqrt(3)
    Real expect_cutoff = sqrt(Real(6)) / 3;
    CHECK(abs(diag.t_cutoff - expect_cutoff) < 1e-40);

    // N^{-3/2} (E|g~|^5 + 2 (9/2)^{3/2} * 17/81)
    Real expect_remainder =
        (Real(289) / 72 + 2 * pow(sqrt(Real(9) / 2), 3) * Real(17) / 81) /
        pow(sqrt(Real(3)), 3);
    CHECK(abs(diag.remainder_scale - expect_remainder) < 1e-40);
    CHECK(static_cast<double>(diag.remainder_scale) ==
          doctest::Approx(1.543614).epsilon(1e-5));

    // (E|g~| / E|g~|^3) / min pq = (8/9)/(25/18)/(2/9)
    CHECK(abs(diag.abs_moment_ratio - to_real(Rat(72, 25))) < 1e-40);
    CHECK(abs(diag.sigma_abs3 - to_real(Rat(25, 81))) < 1e-40);
}

TEST_CASE("diagnostics refuse degenerate schemes") {
    auto d = derive({5, {3}});
    GMoments gm;
    CHECK_THROWS_AS(diagnostics(d, gm), DomainError);
}
