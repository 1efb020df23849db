#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <string>
#include <vector>

namespace occ {

// Scheme-level quantities are exact rationals; everything transcendental runs in
// Real, an MPFR float with ~166-bit mantissa (50 decimal digits). Doubles appear
// only at output boundaries.
using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<50>,
                                            boost::multiprecision::et_off>;

/// Complex value carried as two Reals; std::complex is not specified for
/// user-defined floats, and the few call sites only need +,*,abs.
struct CReal {
    Real re{0};
    Real im{0};
};

inline Real to_real(const Rat& q) { return Real(q); }

inline Real abs_creal(const CReal& z) { return sqrt(z.re * z.re + z.im * z.im); }

inline CReal cadd(const CReal& a, const CReal& b) { return {a.re + b.re, a.im + b.im}; }
inline CReal csub(const CReal& a, const CReal& b) { return {a.re - b.re, a.im - b.im}; }
inline CReal cmul(const CReal& a, const CReal& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline CReal cdiv(const CReal& a, const CReal& b) {
    Real n = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}

/// integer power by repeated squaring
inline CReal cpow_n(CReal z, long n) {
    CReal r{1, 0};
    while (n > 0) {
        if (n & 1) r = cmul(r, z);
        z = cmul(z, z);
        n >>= 1;
    }
    return r;
}

/// "num/den" in lowest terms; integers render without the "/1".
std::string rat_str(const Rat& q);

/// Parse "3/4", "7", "-1/2", or a plain decimal like "0.3" into an exact rational.
Rat parse_rat(const std::string& text);

/// Decimal rendering with the given number of significant digits.
std::string real_str(const Real& x, unsigned digits = 15);

/// Binomial coefficients over a cached factorial table. C(n,k) = 0 outside
/// 0 <= k <= n, which the inclusion-exclusion sums rely on.
class BinomialTable {
public:
    explicit BinomialTable(long max_n);
    const Int& factorial(long n) const;
    Int choose(long n, long k) const;
    long max_n() const { return static_cast<long>(fact_.size()) - 1; }

private:
    std::vector<Int> fact_;
};

Int binomial(long n, long k);

Rat rat_pow(const Rat& base, unsigned exp);

}  // namespace occ
