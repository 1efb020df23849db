#include "occ/bartlett.hpp"

#include <vector>

#include "doctest.h"
#include "occ/errors.hpp"
#include "occ/exact.hpp"
#include "occ/moments.hpp"
#include "occ/scheme.hpp"

using namespace occ;

TEST_CASE("pointwise factor at the origin") {
    auto d = derive(SchemeParams{6, {2, 3}});
    auto gm = g_signed_moments(d);
    CReal z = psi(Real(0), {Real(0), Real(0)}, d, gm);
    CHECK(abs(z.re - 1) < Real("1e-45"));
    CHECK(abs(z.im) < Real("1e-45"));
}

TEST_CASE("pointwise factor stays inside the unit disc") {
    auto d = derive(SchemeParams{6, {2, 3}});
    auto gm = g_signed_moments(d);
    for (double tv : {0.0, 0.7, -1.3, 2.9}) {
        for (double a : {-2.1, 0.4, 1.8}) {
            for (double b : {-0.9, 0.0, 2.5}) {
                CReal z = psi(Real(tv), {Real(a), Real(b)}, d, gm);
                CHECK(abs_creal(z) <= 1 + Real("1e-45"));
            }
        }
    }
}

TEST_CASE("single-coordinate slice matches the two-point closed form") {
    // t = 0, tau = (x, 0): |psi|^2 = 1 - 4 p q sin^2(x / (2 sqrt(N p q)))
    auto d = derive(SchemeParams{3, {1, 1}});
    auto gm = g_signed_moments(d);
    Real pq = to_real(Rat(d.p[0] * d.q[0]));
    for (double xv : {0.3, 1.1, 2.5, -4.0}) {
        Real x(xv);
        CReal z = psi(Real(0), {x, Real(0)}, d, gm);
        Real lhs = z.re * z.re + z.im * z.im;
        Real sn = sin(x / (2 * sqrt(Real(d.params.cells) * pq)));
        Real rhs = 1 - 4 * pq * sn * sn;
        CHECK(abs(lhs - rhs) < Real("1e-40"));
    }
}

TEST_CASE("pointwise factor argument validation") {
    auto d = derive(SchemeParams{6, {2, 3}});
    auto gm = g_signed_moments(d);
    CHECK_THROWS_AS(psi(Real(1), {Real(0)}, d, gm), DomainError);
    CHECK_THROWS_AS(psi(Real(1), {Real(0), Real(0), Real(0)}, d, gm), DomainError);

    auto d1 = derive(SchemeParams{5, {2}});
    auto gm1 = g_signed_moments(d1);
    CHECK_THROWS_AS(psi(Real(1), {Real(0)}, d1, gm1), DomainError);  // degenerate scheme

    std::vector<long> ones(21, 1);
    auto dwide = derive(SchemeParams{40, ones});
    auto gmwide = g_signed_moments(dwide);
    CHECK_THROWS_AS(psi(Real(1), std::vector<Real>(21, Real(0)), dwide, gmwide), DomainError);
}

TEST_CASE("integrated transform at zero frequency is real and positive") {
    auto d = derive(SchemeParams{6, {2, 3}});
    auto gm = g_signed_moments(d);
    CReal z = theta(Real(0), d, gm);
    CHECK(z.re > 0);
    CHECK(abs(z.im) < Real("1e-25"));
}

TEST_CASE("integrated transform honors the dimension cap") {
    auto d = derive(SchemeParams{11, {1, 1, 1, 1}});
    auto gm = g_signed_moments(d);
    CHECK_THROWS_AS(theta(Real(1), d, gm), DomainError);
}

TEST_CASE("refinement failure reports the achieved gap") {
    auto d = derive(SchemeParams{6, {2, 3}});
    auto gm = g_signed_moments(d);
    QuadratureSpec weak;
    weak.panels = 1;
    weak.nodes = 1;
    weak.tol = Real("1e-30");
    weak.max_doublings = 2;
    bool threw = false;
    try {
        theta(Real(1), d, gm, weak);
    } catch (const ToleranceError& e) {
        threw = true;
        CHECK(e.achieved() > 0);
    }
    CHECK(threw);
}

TEST_CASE("normalized transform equals one at zero") {
    auto d = derive(SchemeParams{6, {2, 3}});
    auto gm = g_signed_moments(d);
    CReal z = phi_via_bartlett(Real(0), d, gm);
    CHECK(z.re == 1);
    CHECK(z.im == 0);
}

TEST_CASE("normalized transform matches the exact characteristic function") {
    auto d = derive(SchemeParams{6, {2, 3}});
    auto gm = g_signed_moments(d);
    auto pmf = exact_pmf(d.params);
    Real center = to_real(d.mean_empty);
    Real scale = gm.sigma() * sqrt(Real(d.params.cells));
    for (double tv : {0.5, 1.0, 2.0}) {
        CReal got = phi_via_bartlett(Real(tv), d, gm);
        CReal want = exact_charfun(pmf, Real(tv), center, scale);
        CHECK(abs_creal(csub(got, want)) < Real("1e-6"));
    }
}

TEST_CASE("normalized transform is conjugate-symmetric") {
    auto d = derive(SchemeParams{6, {2, 3}});
    auto gm = g_signed_moments(d);
    CReal plus = phi_via_bartlett(Real("0.8"), d, gm);
    CReal minus = phi_via_bartlett(Real("-0.8"), d, gm);
    CHECK(abs(plus.re - minus.re) < Real("1e-25"));
    CHECK(abs(plus.im + minus.im) < Real("1e-25"));
    CHECK(abs_creal(plus) <= 1 + Real("1e-20"));
}
