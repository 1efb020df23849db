#pragma once

#include <string>
#include <utility>
#include <vector>

#include "occ/decomp.hpp"
#include "occ/exact.hpp"
#include "occ/moments.hpp"
#include "occ/scheme.hpp"

namespace occ {

// probabilists' Hermite polynomial by the three-term recurrence; only the
// orders appearing in the expansions are accepted
Real hermite(int nu, const Real& x);

Real normal_phi(const Real& x);

struct WHatOptions {
    // 24 is the coefficient the generating expansion produces; 32 is a
    // published variant kept selectable for comparison
    int h4_denom = 24;
};

// density approximant phi(x)[1 + H3 M3/(6 sqrt N) + (H6 M3^2/72 + H4 M4/den + H2 M2/4)/N]
Real w_hat(const Real& x, const EdgeworthCoeffs& coeffs, long cells, const WHatOptions& opts = {});

struct ApproxRow {
    long k = 0;
    Real coord;         // standardized coordinate of k
    Real approx;        // density approximant at coord
    Real exact_scaled;  // sqrt(scale) * P{count = k}
    Real abs_err;
};

struct ApproxReport {
    std::string method;  // "thm2" | "thm3" | "thm4" | "gaussian"
    Real scale;          // squared scale: N sigma^2 or the exact variance
    std::vector<ApproxRow> rows;
    Real sup_error;
};

enum class Frame {
    series,  // (k - mean)/(sigma sqrt N)
    exact,   // (k - mean)/sqrt(variance)
};

// series-scale comparison over 0..support-max
ApproxReport approx_thm2(const DerivedParams& d, const EdgeworthCoeffs& coeffs, const ExactPmf& pmf,
                         const WHatOptions& opts = {});

// exact-scale comparison with the Bernoulli-sum cumulant ratios
ApproxReport approx_thm3(const BernoulliDecomposition& dec, const DerivedParams& d, const ExactPmf& pmf);

// exact-scale comparison of the density approximant plus the variance-mismatch
// correction sign*(1/2)*b_N*H2(u)phi(u); sign 0 drops the correction
ApproxReport approx_thm4(const DerivedParams& d, const EdgeworthCoeffs& coeffs, const ExactPmf& pmf,
                         int correction_sign, const WHatOptions& opts = {});

ApproxReport approx_gaussian(const DerivedParams& d, const ExactPmf& pmf, Frame frame);

// one-time choice of the correction sign: whichever of +1/-1 gives the
// smaller sup error at the fixed midsize case p=(3/10,1/2), N=160
int calibrate_correction_sign(M2Variant variant = M2Variant::pair_corrected,
                              const WHatOptions& opts = {});

// least-squares slope of log(sup_error) against log(N)
Real sup_error_slope(const std::vector<std::pair<long, Real>>& sweep);

}  // namespace occ
