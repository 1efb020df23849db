#include "doctest.h"

#include "occ/errors.hpp"
#include "occ/numeric.hpp"

using namespace occ;

TEST_CASE("rational to string") {
    CHECK(rat_str(Rat(2, 3)) == "2/3");
    CHECK(rat_str(Rat(-4, 6)) == "-2/3");
    CHECK(rat_str(Rat(7, 1)) == "7");
    CHECK(rat_str(Rat(0)) == "0");
}

TEST_CASE("rational parsing") {
    CHECK(parse_rat("3/4") == Rat(3, 4));
    CHECK(parse_rat("-1/2") == Rat(-1, 2));
    CHECK(parse_rat("7") == Rat(7));
    CHECK(parse_rat("0.3") == Rat(3, 10));
    CHECK(parse_rat("0.25") == Rat(1, 4));
    CHECK(parse_rat("-1.5") == Rat(-3, 2));
    CHECK(parse_rat("2.") == Rat(2));
    CHECK_THROWS_AS(parse_rat(""), DomainError);
    CHECK_THROWS_AS(parse_rat("1/0"), DomainError);
    CHECK_THROWS_AS(parse_rat("abc"), DomainError);
}

TEST_CASE("binomial coefficients") {
    CHECK(binomial(8, 4) == 70);
    CHECK(binomial(320, 160) == BinomialTable(320).choose(320, 160));
    CHECK(binomial(5, -1) == 0);
    CHECK(binomial(5, 6) == 0);
    CHECK(binomial(0, 0) == 1);

    BinomialTable t(12);
    for (long n = 0; n <= 12; ++n)
        for (long k = 0; k <= n; ++k) CHECK(t.choose(n, k) == binomial(n, k));
    CHECK(t.choose(12, 13) == 0);
    CHECK(t.factorial(5) == 120);
}

TEST_CASE("rational powers") {
    CHECK(rat_pow(Rat(2, 3), 0) == 1);
    CHECK(rat_pow(Rat(2, 3), 3) == Rat(8, 27));
    CHECK(rat_pow(Rat(-1, 2), 5) == Rat(-1, 32));
}

TEST_CASE("real string rendering") {
    Real x = to_real(Rat(1, 4));
    CHECK(real_str(x, 5) == "0.25");
    CHECK(abs_creal(CReal{Real(3), Real(4)}) == 5);
}
