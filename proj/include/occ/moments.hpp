#pragma once

#include "occ/numeric.hpp"
#include "occ/scheme.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace occ {

/// Standardized Bernoulli moments per set, exact parts kept rational.
/// For xi ~ Bernoulli(p), central moments are pq(q-p), pq(1-3pq), pq(p^4+q^4)
/// for orders 3, 4, |5|; standardization divides by (pq)^(m/2).
struct XiMoments {
    std::vector<Rat> pq;
    std::vector<Rat> third_raw;   // E(xi-p)^3
    std::vector<Rat> fourth_raw;  // E(xi-p)^4
    std::vector<Rat> abs5_raw;    // E|xi-p|^5

    Real third(size_t l) const;   // (q-p)/sqrt(pq)
    Real fourth(size_t l) const;  // (1-3pq)/(pq), always >= 1
    Real abs5(size_t l) const;    // (p^4+q^4)(pq)^{-3/2}
};

XiMoments xi_moments(const DerivedParams& d);

/// Monte Carlo stand-in for the absolute moments when the exact atom walk is
/// too large. Diagnostics only; the standard errors travel with the values.
struct McAbsMoments {
    double abs1 = 0, abs3 = 0, abs5 = 0;
    double se1 = 0, se3 = 0, se5 = 0;
    long trials = 0;
    std::uint64_t seed = 0;
};

/// Moments of the per-cell kernel
///   g = 1{cell missed by all sets} - Q(1 + sum r_l) + Q * sum (1+r_l) u_l,
/// u_l ~ Bernoulli(p_l) independent, Q = prod q_l. Signed moments and the
/// cross moments with (u_l - p_l) come from the closed form in O(s^2) exact
/// rational work; absolute moments walk the (at most 2^s) atoms of the linear
/// part, falling back to Monte Carlo beyond the cap.
struct GMoments {
    Rat sigma2;
    Rat g2_raw;  // == sigma2, kept as a cross-check
    Rat g3_raw;
    Rat g4_raw;
    std::vector<Rat> g2xi_raw;   // E[g^2 (u_l - p_l)]
    std::vector<Rat> g2xi2_raw;  // E[g^2 (u_l - p_l)^2]
    Rat cross2_sum_raw;          // sum_{l != j} E[g (u_l-p_l)(u_j-p_j)]^2 / (pq_l pq_j)
    std::vector<Rat> pq;

    std::optional<Rat> abs1_raw, abs3_raw, abs5_raw;
    std::optional<McAbsMoments> abs_mc;

    Real sigma() const;
    Real g3() const;                // E g~^3
    Real g4() const;                // E g~^4
    Real g2xi(size_t l) const;      // E g~^2 xi~_l
    Real g2xi2(size_t l) const;     // E g~^2 xi~_l^2
    bool abs_exact() const { return abs1_raw.has_value(); }
    Real abs1() const;              // E|g~|
    Real abs3() const;              // E|g~|^3
    Real abs5() const;              // E|g~|^5
};

GMoments g_signed_moments(const DerivedParams& d);

struct AbsMomentOptions {
    long exact_set_cap = 20;      // beyond this the 2^s atom walk is refused
    long mc_trials = 200000;
    std::uint64_t mc_seed = 20260822;
};

void g_abs_moments(const DerivedParams& d, GMoments& gm,
                   const AbsMomentOptions& opts = {});

GMoments g_moments(const DerivedParams& d, const AbsMomentOptions& opts = {});

/// Which t^2-coefficient the expansion uses. `series` is the series form
///   M2 = sum_l (Eg~^2 xi~_l * Exi~_l^3 - Eg~^2 xi~_l^2 + 1);
/// `pair_corrected` adds sum_{l!=j} (E g~ xi~_l xi~_j)^2 = 2 Q^2 e_2(r)/sigma^2,
/// the cross-pair term the plain series drops. See notes in edgeworth_coeffs().
enum class M2Variant { series, pair_corrected };

/// Cumulant combinations entering the order-1/sqrt(N) and 1/N corrections.
/// Exact rational cores; division by sigma powers happens in the accessors so
/// permuting the sets changes nothing, bit for bit.
struct EdgeworthCoeffs {
    long s = 0;
    Rat sigma2;
    Rat m2_series_raw;   // M2(series) = m2_series_raw/sigma^2 + s
    Rat cross2_sum_raw;  // pair correction, already sigma-free numerator
    Rat m3_raw;          // M3 = m3_raw/sigma^3
    Rat m4_series_raw;   // M4 = m4_series_raw/sigma^4 - 3
    M2Variant variant = M2Variant::pair_corrected;

    Real M2() const;
    Real M3() const;
    Real M4() const;
};

EdgeworthCoeffs edgeworth_coeffs(const DerivedParams& d, const GMoments& gm,
                                 const XiMoments& xm,
                                 M2Variant variant = M2Variant::pair_corrected);

/// Characteristic-function side of the expansion:
///   W(t) = exp(-t^2/2) (1 + G1(t)/sqrt(N) + (G2(t) - G2(0))/N),
/// G1 = (it)^3 M3/6, G2 - G2(0) = (it)^6 M3^2/72 + (it)^4 M4/24 + (it)^2 M2/4.
/// The odd G1 term makes the value complex.
CReal w_charfun(const Real& t, const EdgeworthCoeffs& c, long N);

}  // namespace occ
