#pragma once

#include <cstdint>
#include <vector>

#include "occ/numeric.hpp"
#include "occ/rng.hpp"
#include "occ/scheme.hpp"

namespace occ {

struct SimConfig {
    long trials = 0;
    std::uint64_t seed = 0;
    SchemeParams params;
};

struct EmpiricalPmf {
    long min_k = 0;  // support lower end; counts[i] belongs to k = min_k + i
    std::vector<std::uint64_t> counts;
    long trials = 0;

    long max_k() const { return min_k + static_cast<long>(counts.size()) - 1; }
    std::uint64_t count_at(long k) const;
    Real frequency(long k) const;
    Real std_error(long k) const;  // sqrt(f (1-f) / trials)
};

/// One draw of the empty-cell count. `rng` should be a fresh per-trial stream
/// for reproducibility across thread layouts. `perm` and `hit` are scratch
/// buffers reused across calls; they are (re)sized on demand.
long allocate_once(const SchemeParams& params, SplitMix64& rng, std::vector<long>& perm,
                   std::vector<char>& hit);

/// Runs config.trials independent draws, each on its own (seed, trial) stream,
/// so the counts are identical no matter how many workers run them.
/// threads <= 0 picks the hardware count.
EmpiricalPmf empirical_pmf(const SimConfig& config, int threads = 1);

struct MeanCi {
    Real mean;
    Real half_width;  // 4 * sample sd / sqrt(trials)
};

MeanCi mc_mean_ci(const EmpiricalPmf& emp);

}  // namespace occ
