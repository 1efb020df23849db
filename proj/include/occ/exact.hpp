#pragma once

#include "occ/numeric.hpp"
#include "occ/scheme.hpp"

#include <cstdint>
#include <vector>

namespace occ {

/// Exact distribution of the empty-cell count. prob[i] is P{count == min_k + i};
/// entries outside [min_k, max_k] are identically zero and not stored.
struct ExactPmf {
    long min_k = 0;
    std::vector<Rat> prob;

    long max_k() const { return min_k + static_cast<long>(prob.size()) - 1; }
    Rat at(long k) const;  // 0 outside the stored window
};

struct ExactPmfOptions {
    long cells_cap = 500;  // refuse larger N (cost grows like N^2 big-int terms)
};

/// Inclusion-exclusion evaluation of the distribution. All arithmetic is
/// integer/rational; the result is exact. Throws ResourceError over the cap,
/// ValidationError if the computed table fails its own sanity checks
/// (nonnegative entries, total mass 1, positive mass at the support edge).
ExactPmf exact_pmf(const SchemeParams& params, const ExactPmfOptions& opts = {});

struct EnumerateOptions {
    // refuse jobs with more than this many joint allocations
    Int allocation_cap = Int(10000000);
};

/// Independent oracle: walks every joint choice of subsets and tallies empty
/// cells. Exponential cost, small-case use only.
ExactPmf enumerate_pmf(const SchemeParams& params, const EnumerateOptions& opts = {});

struct PmfMoments {
    Rat mean;
    Rat central2;
    Rat central3;
    Rat central4;
};

PmfMoments pmf_moments(const ExactPmf& pmf);

/// E exp(i t (K - center) / scale) evaluated in high precision.
CReal exact_charfun(const ExactPmf& pmf, const Real& t, const Real& center,
                    const Real& scale);

}  // namespace occ
