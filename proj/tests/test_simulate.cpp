#include "occ/simulate.hpp"

#include <vector>

#include "doctest.h"
#include "occ/errors.hpp"
#include "occ/exact.hpp"
#include "occ/scheme.hpp"

using namespace occ;

namespace {

EmpiricalPmf run(long cells, std::vector<long> sets, long trials, std::uint64_t seed,
                 int threads = 1) {
    SimConfig cfg;
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.params = SchemeParams{cells, std::move(sets)};
    return empirical_pmf(cfg, threads);
}

}  // namespace

TEST_CASE("single set leaves a fixed number of empty cells") {
    auto emp = run(5, {3}, 40, 7);
    CHECK(emp.count_at(2) == 40);
    CHECK(emp.min_k == 2);
    CHECK(emp.max_k() == 2);
}

TEST_CASE("draws stay inside the support") {
    auto emp = run(2, {1, 1}, 500, 11);
    CHECK(emp.count_at(0) + emp.count_at(1) == 500);
    auto emp2 = run(5, {4, 4}, 500, 12);
    CHECK(emp2.count_at(0) + emp2.count_at(1) == 500);
}

TEST_CASE("one trial lands on exactly one value") {
    auto emp = run(6, {2, 3}, 1, 3);
    std::uint64_t total = 0;
    int nonzero = 0;
    for (auto c : emp.counts) {
        total += c;
        nonzero += c > 0;
    }
    CHECK(total == 1);
    CHECK(nonzero == 1);
}

TEST_CASE("frequencies track the exact distribution") {
    auto emp = run(3, {1, 1}, 100000, 123);
    // k = 2 iff both singletons choose the same cell
    Real f = emp.frequency(2);
    Real target = Real(1) / 3;
    CHECK(abs(f - target) <= 4 * sqrt(target * (1 - target) / 100000));

    auto big = run(20, {5, 7, 3}, 100000, 20260822, 4);
    auto pmf = exact_pmf(SchemeParams{20, {5, 7, 3}});
    Real tv = 0;
    for (long k = big.min_k; k <= big.max_k(); ++k)
        tv += abs(big.frequency(k) - to_real(pmf.at(k)));
    tv /= 2;
    CHECK(tv <= Real("0.01"));
}

TEST_CASE("identical configuration reproduces identical counts") {
    auto a = run(6, {2, 3}, 12, 42);
    CHECK(a.min_k == 1);
    CHECK(a.counts == std::vector<std::uint64_t>{1, 9, 2});

    auto b = run(6, {2, 3}, 12, 42);
    CHECK(a.counts == b.counts);

    auto c = run(6, {2, 3}, 12, 42, 4);  // thread layout must not matter
    CHECK(a.counts == c.counts);

    auto other = run(6, {2, 3}, 12, 43);
    CHECK(a.counts != other.counts);
}

TEST_CASE("sample mean interval brackets the expected value") {
    auto emp = run(3, {1, 1}, 100000, 5);
    auto ci = mc_mean_ci(emp);
    CHECK(abs(ci.mean - Real(4) / 3) <= ci.half_width);

    auto emp3 = run(4, {1, 1, 1}, 100000, 6);
    auto ci3 = mc_mean_ci(emp3);
    CHECK(abs(ci3.mean - Real(27) / 16) <= ci3.half_width);

    auto point = run(5, {3}, 100, 8);
    auto cip = mc_mean_ci(point);
    CHECK(cip.mean == 2);
    CHECK(cip.half_width == 0);
}

TEST_CASE("mean interval over a hundred seeds") {
    auto d = derive(SchemeParams{6, {2, 3}});
    Real target = to_real(d.mean_empty);
    int inside = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto ci = mc_mean_ci(run(6, {2, 3}, 2000, seed));
        if (abs(ci.mean - target) <= ci.half_width) ++inside;
    }
    CHECK(inside >= 99);
}

TEST_CASE("simulation argument validation") {
    SimConfig cfg;
    cfg.trials = 0;
    cfg.seed = 1;
    cfg.params = SchemeParams{4, {2}};
    CHECK_THROWS_AS(empirical_pmf(cfg), DomainError);

    auto one = run(4, {2}, 1, 1);
    CHECK_THROWS_AS(mc_mean_ci(one), DomainError);
}
