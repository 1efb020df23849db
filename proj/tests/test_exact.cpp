#include "doctest.h"

#include "occ/errors.hpp"
#include "occ/exact.hpp"

#include <boost/math/constants/constants.hpp>

using namespace occ;

namespace {

void check_equal(const ExactPmf& a, const ExactPmf& b) {
    REQUIRE(a.min_k == b.min_k);
    REQUIRE(a.prob.size() == b.prob.size());
    for (size_t i = 0; i < a.prob.size(); ++i) CHECK(a.prob[i] == b.prob[i]);
}

}  // namespace

TEST_CASE("known small distributions") {
    auto pmf = exact_pmf({3, {1, 1}});
    CHECK(pmf.min_k == 1);
    CHECK(pmf.max_k() == 2);
    CHECK(pmf.at(1) == Rat(2, 3));
    CHECK(pmf.at(2) == Rat(1, 3));
    CHECK(pmf.at(0) == 0);
    CHECK(pmf.at(3) == 0);

    pmf = exact_pmf({4, {2, 1}});
    CHECK(pmf.at(1) == Rat(1, 2));
    CHECK(pmf.at(2) == Rat(1, 2));

    pmf = exact_pmf({4, {1, 1, 1}});
    CHECK(pmf.at(1) == Rat(3, 8));
    CHECK(pmf.at(2) == Rat(9, 16));
    CHECK(pmf.at(3) == Rat(1, 16));

    pmf = exact_pmf({2, {1, 1}});
    CHECK(pmf.min_k == 0);
    CHECK(pmf.at(0) == Rat(1, 2));
    CHECK(pmf.at(1) == Rat(1, 2));

    pmf = exact_pmf({5, {3}});
    CHECK(pmf.min_k == 2);
    CHECK(pmf.max_k() == 2);
    CHECK(pmf.at(2) == 1);
}

TEST_CASE("inclusion-exclusion agrees with enumeration") {
    for (long N = 2; N <= 6; ++N) {
        for (long n1 = 1; n1 < N; ++n1) {
            check_equal(exact_pmf({N, {n1}}), enumerate_pmf({N, {n1}}));
            for (long n2 = 1; n2 < N; ++n2)
                check_equal(exact_pmf({N, {n1, n2}}), enumerate_pmf({N, {n1, n2}}));
        }
    }
    check_equal(exact_pmf({7, {3, 2, 4}}), enumerate_pmf({7, {3, 2, 4}}));
    check_equal(exact_pmf({6, {1, 5, 2}}), enumerate_pmf({6, {1, 5, 2}}));
}

TEST_CASE("support window matches the derived bounds") {
    for (auto params : {SchemeParams{6, {2, 3}}, SchemeParams{9, {4, 4, 4}},
                        SchemeParams{5, {1, 1}}}) {
        auto d = derive(params);
        auto pmf = exact_pmf(params);
        CHECK(pmf.min_k == d.support_min());
        CHECK(pmf.max_k() == d.support_max());
        CHECK(pmf.prob.front() > 0);
        CHECK(pmf.prob.back() > 0);
        Rat total = 0;
        for (const Rat& p : pmf.prob) total += p;
        CHECK(total == 1);
    }
}

TEST_CASE("moments of the exact table match the closed forms") {
    for (auto params : {SchemeParams{4, {1, 1, 1}}, SchemeParams{6, {2, 3}},
                        SchemeParams{10, {3, 5, 2}}, SchemeParams{5, {3}}}) {
        auto d = derive(params);
        auto m = pmf_moments(exact_pmf(params));
        CHECK(m.mean == d.mean_empty);
        CHECK(m.central2 == d.var_empty);
    }
    CHECK(pmf_moments(exact_pmf({4, {1, 1, 1}})).central2 == Rat(87, 256));
}

TEST_CASE("characteristic function of the exact table") {
    auto pmf = exact_pmf({4, {2, 1}});
    auto one = exact_charfun(pmf, Real(0), Real(0), Real(1));
    CHECK(one.re == 1);
    CHECK(one.im == 0);

    // scale 1/2 around the mean turns t = pi into exp(-i pi)/2 + exp(i pi)/2
    Real pi = boost::math::constants::pi<Real>();
    auto z = exact_charfun(pmf, pi, to_real(Rat(3, 2)), to_real(Rat(1, 2)));
    CHECK(abs(z.re + 1) < 1e-45);
    CHECK(abs(z.im) < 1e-45);

    // conjugate symmetry and modulus bound
    auto zp = exact_charfun(pmf, Real(7) / 10, Real(1), Real(2));
    auto zm = exact_charfun(pmf, Real(-7) / 10, Real(1), Real(2));
    CHECK(zp.re == zm.re);
    CHECK(zp.im == -zm.im);
    CHECK(abs_creal(zp) <= 1);

    CHECK_THROWS_AS(exact_charfun(pmf, Real(1), Real(0), Real(0)), DomainError);
}

TEST_CASE("size caps") {
    CHECK_THROWS_AS(exact_pmf({600, {1, 1}}), ResourceError);
    EnumerateOptions tight;
    tight.allocation_cap = 10;
    CHECK_THROWS_AS(enumerate_pmf({8, {4, 4}}, tight), ResourceError);
    ExactPmfOptions wide;
    wide.cells_cap = 600;
    CHECK_NOTHROW(exact_pmf({600, {1, 1}}, wide));
}

TEST_CASE("invalid parameters are rejected") {
    CHECK_THROWS_AS(exact_pmf({2, {3}}), DomainError);
    CHECK_THROWS_AS(enumerate_pmf({2, {3}}), DomainError);
}
