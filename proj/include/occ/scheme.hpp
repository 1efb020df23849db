#pragma once

#include "occ/numeric.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace occ {

/// Allocation scheme: `sets.size()` independent rounds; round l throws
/// `sets[l]` particles into `sets[l]` distinct cells chosen uniformly among
/// the C(cells, sets[l]) subsets. The observable is the number of empty cells.
struct SchemeParams {
    long cells = 0;                // N
    std::vector<long> set_sizes;   // n_1..n_s, each in [1, N-1]

    long s() const { return static_cast<long>(set_sizes.size()); }
    long total_particles() const;
    long max_set() const;

    /// Throws DomainError unless cells >= 2, s >= 1, and 1 <= n_l <= cells-1.
    void validate() const;
};

/// Closed-form scalars of the scheme, all exact rationals.
struct DerivedParams {
    SchemeParams params;
    std::vector<Rat> p;         // n_l / N
    std::vector<Rat> q;         // 1 - p_l
    std::vector<Rat> odds;      // r_l = p_l / q_l
    Rat miss_all_prob;          // prod q_l: a fixed cell avoids every set
    Rat hit_all_prob;           // prod p_l
    Rat mean_empty;             // N * miss_all_prob
    Rat sigma2;                 // per-cell variance rate; zero exactly iff s == 1
    Rat var_empty;              // exact variance of the empty-cell count
    Rat alpha;                  // max_l min(Q^2 p/q, P^2 q/p), reporting only
    std::vector<Rat> odds_elem_sym;  // e_0..e_s of the odds vector

    long support_min() const;   // max(0, N - sum n_l)
    long support_max() const;   // N - max n_l

    bool degenerate() const { return sigma2 == 0; }

    /// var_correction b: var_empty == N * sigma2 * (1 + b) exactly.
    /// Throws DomainError when sigma2 == 0 (the factorization is meaningless).
    Rat var_correction() const;

private:
    friend DerivedParams derive(const SchemeParams&);
    std::optional<Rat> var_correction_;
};

DerivedParams derive(const SchemeParams& params);

struct GMoments;  // moments.hpp

/// Report-only condition numbers for the characteristic-function expansion.
/// Never asserted against: they inform, the acceptance thresholds decide.
struct SchemeDiagnostics {
    Real t_cutoff;         // sqrt(N) * min(1/E|g~|^3, sqrt(p_l q_l)...)
    Real remainder_scale;  // N^{-3/2} * (E|g~|^5 + sum (p q)^{-3/2} (p^4+q^4))
    Real abs_moment_ratio; // (E|g~| / E|g~|^3) / min_l p_l q_l
    Real sigma_abs3;       // sigma * E|g~|^3
};

SchemeDiagnostics diagnostics(const DerivedParams& d, const GMoments& gm);

}  // namespace occ
