#include "occ/simulate.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <thread>

#include "occ/errors.hpp"

namespace occ {

std::uint64_t EmpiricalPmf::count_at(long k) const {
    if (k < min_k || k > max_k()) return 0;
    return counts[static_cast<size_t>(k - min_k)];
}

Real EmpiricalPmf::frequency(long k) const {
    if (trials < 1) throw DomainError("no trials recorded");
    return Real(count_at(k)) / Real(trials);
}

Real EmpiricalPmf::std_error(long k) const {
    Real f = frequency(k);
    return sqrt(f * (1 - f) / Real(trials));
}

long allocate_once(const SchemeParams& params, SplitMix64& rng, std::vector<long>& perm,
                   std::vector<char>& hit) {
    size_t n = static_cast<size_t>(params.cells);
    if (perm.size() != n) {
        perm.resize(n);
        std::iota(perm.begin(), perm.end(), 0L);
    }
    hit.assign(n, 0);

    long swaps[64];
    for (long nl : params.set_sizes) {
        // partial Fisher-Yates: after i steps perm[0..i) is a uniform i-subset
        for (long i = 0; i < nl; ++i) {
            long j = i + static_cast<long>(rng.below(static_cast<std::uint64_t>(params.cells - i)));
            std::swap(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(j)]);
            if (i < 64) swaps[i] = j;
            hit[static_cast<size_t>(perm[static_cast<size_t>(i)])] = 1;
        }
        // undo, so every set samples from the same arrangement
        if (nl <= 64) {
            for (long i = nl - 1; i >= 0; --i)
                std::swap(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(swaps[i])]);
        } else {
            std::iota(perm.begin(), perm.end(), 0L);
        }
    }

    long empty = 0;
    for (char h : hit)
        if (!h) ++empty;
    return empty;
}

EmpiricalPmf empirical_pmf(const SimConfig& config, int threads) {
    if (config.trials < 1) throw DomainError("trials must be positive");
    DerivedParams d = derive(config.params);
    long lo = d.support_min(), hi = d.support_max();
    size_t width = static_cast<size_t>(hi - lo + 1);

    int workers = threads;
    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    if (static_cast<long>(workers) > config.trials) workers = static_cast<int>(config.trials);

    auto run_block = [&](long first, long last, std::vector<std::uint64_t>& local) {
        std::vector<long> perm;
        std::vector<char> hit;
        for (long trial = first; trial < last; ++trial) {
            SplitMix64 rng(config.seed, static_cast<std::uint64_t>(trial));
            long k = allocate_once(config.params, rng, perm, hit);
            if (k < lo || k > hi) throw ValidationError("draw fell outside the support");
            ++local[static_cast<size_t>(k - lo)];
        }
    };

    std::vector<std::vector<std::uint64_t>> partial(
        static_cast<size_t>(workers), std::vector<std::uint64_t>(width, 0));
    if (workers == 1) {
        run_block(0, config.trials, partial[0]);
    } else {
        std::vector<std::thread> pool;
        long chunk = (config.trials + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            long first = static_cast<long>(w) * chunk;
            long last = std::min(config.trials, first + chunk);
            if (first >= last) break;
            pool.emplace_back(run_block, first, last, std::ref(partial[static_cast<size_t>(w)]));
        }
        for (auto& th : pool) th.join();
    }

    EmpiricalPmf emp;
    emp.min_k = lo;
    emp.trials = config.trials;
    emp.counts.assign(width, 0);
    for (const auto& local : partial)
        for (size_t i = 0; i < width; ++i) emp.counts[i] += local[i];

    std::uint64_t total = 0;
    for (auto c : emp.counts) total += c;
    if (total != static_cast<std::uint64_t>(config.trials))
        throw ValidationError("trial counts do not add up");
    return emp;
}

MeanCi mc_mean_ci(const EmpiricalPmf& emp) {
    if (emp.trials < 2) throw DomainError("need at least two trials for a confidence interval");
    Real t(emp.trials);
    Real sum = 0, sumsq = 0;
    for (size_t i = 0; i < emp.counts.size(); ++i) {
        Real k(emp.min_k + static_cast<long>(i));
        Real c(emp.counts[i]);
        sum += c * k;
        sumsq += c * k * k;
    }
    Real mean = sum / t;
    Real var = (sumsq - t * mean * mean) / (t - 1);
    if (var < 0) var = 0;  // rounding guard for point masses
    return MeanCi{mean, 4 * sqrt(var / t)};
}

}  // namespace occ
