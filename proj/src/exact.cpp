#include "occ/exact.hpp"

#include "occ/errors.hpp"

#include <functional>

namespace occ {

Rat ExactPmf::at(long k) const {
    if (k < min_k || k > max_k()) return 0;
    return prob[static_cast<size_t>(k - min_k)];
}

ExactPmf exact_pmf(const SchemeParams& params, const ExactPmfOptions& opts) {
    params.validate();
    if (params.cells > opts.cells_cap)
        throw ResourceError("cell count " + std::to_string(params.cells) +
                            " exceeds cap " + std::to_string(opts.cells_cap));

    const long N = params.cells;
    const long n_max = params.max_set();
    const long lo = std::max(0L, N - params.total_particles());
    const long hi = N - n_max;
    BinomialTable table(N);

    // P{k empty} = C(N,k) * sum_j (-1)^j C(N-k,j) * prod_l C(N-k-j, n_l) / C(N, n_l).
    // Factoring out D = prod_l C(N, n_l) keeps the alternating sum in integers,
    // where the cancellation is exact.
    Int denom = 1;
    for (long n : params.set_sizes) denom *= table.choose(N, n);

    ExactPmf pmf;
    pmf.min_k = lo;
    pmf.prob.resize(static_cast<size_t>(hi - lo + 1));
    Rat total = 0;
    for (long k = lo; k <= hi; ++k) {
        Int acc = 0;
        // terms with N-k-j < n_max vanish
        const long j_hi = N - k - n_max;
        for (long j = 0; j <= j_hi; ++j) {
            Int term = table.choose(N - k, j);
            for (long n : params.set_sizes) {
                term *= table.choose(N - k - j, n);
                if (term == 0) break;
            }
            if (j % 2 == 0)
                acc += term;
            else
                acc -= term;
        }
        Rat p = Rat(table.choose(N, k) * acc, denom);
        if (p < 0)
            throw ValidationError("negative mass at k=" + std::to_string(k));
        total += p;
        pmf.prob[static_cast<size_t>(k - lo)] = p;
    }
    if (total != 1)
        throw ValidationError("probability mass sums to " + rat_str(total));
    if (pmf.prob.back() == 0)
        throw ValidationError("zero mass at the upper support edge");
    return pmf;
}

namespace {

struct EnumState {
    long cells;
    const std::vector<long>* set_sizes;
    std::vector<int> occupancy;       // how many sets cover each cell
    long empty_count;
    std::vector<unsigned long long>* counts;  // by empty-cell count

    void place(long cell) {
        if (occupancy[cell]++ == 0) --empty_count;
    }
    void remove(long cell) {
        if (--occupancy[cell] == 0) ++empty_count;
    }
};

// Choose the remaining cells of set `level` from [start, cells), then recurse
// into the next set.
void enum_subsets(EnumState& st, size_t level, long start, long remaining) {
    if (remaining == 0) {
        if (level + 1 == st.set_sizes->size()) {
            ++(*st.counts)[static_cast<size_t>(st.empty_count)];
        } else {
            enum_subsets(st, level + 1, 0, (*st.set_sizes)[level + 1]);
        }
        return;
    }
    for (long cell = start; cell <= st.cells - remaining; ++cell) {
        st.place(cell);
        enum_subsets(st, level, cell + 1, remaining - 1);
        st.remove(cell);
    }
}

}  // namespace

ExactPmf enumerate_pmf(const SchemeParams& params, const EnumerateOptions& opts) {
    params.validate();
    const long N = params.cells;
    BinomialTable table(N);
    Int total = 1;
    for (long n : params.set_sizes) total *= table.choose(N, n);
    if (total > opts.allocation_cap)
        throw ResourceError("enumeration would visit " + total.str() +
                            " allocations, cap is " + opts.allocation_cap.str());

    std::vector<unsigned long long> counts(static_cast<size_t>(N) + 1, 0);
    EnumState st{N, &params.set_sizes, std::vector<int>(static_cast<size_t>(N), 0), N,
                 &counts};
    enum_subsets(st, 0, 0, params.set_sizes[0]);

    long lo = 0, hi = N;
    while (lo <= hi && counts[static_cast<size_t>(lo)] == 0) ++lo;
    while (hi >= lo && counts[static_cast<size_t>(hi)] == 0) --hi;
    if (lo > hi) throw ValidationError("enumeration produced no outcomes");

    ExactPmf pmf;
    pmf.min_k = lo;
    pmf.prob.reserve(static_cast<size_t>(hi - lo + 1));
    for (long k = lo; k <= hi; ++k)
        pmf.prob.emplace_back(Int(counts[static_cast<size_t>(k)]), total);
    return pmf;
}

PmfMoments pmf_moments(const ExactPmf& pmf) {
    PmfMoments m;
    m.mean = 0;
    for (long k = pmf.min_k; k <= pmf.max_k(); ++k) m.mean += k * pmf.at(k);
    m.central2 = m.central3 = m.central4 = 0;
    for (long k = pmf.min_k; k <= pmf.max_k(); ++k) {
        Rat d = k - m.mean;
        Rat d2 = d * d;
        m.central2 += d2 * pmf.at(k);
        m.central3 += d2 * d * pmf.at(k);
        m.central4 += d2 * d2 * pmf.at(k);
    }
    return m;
}

CReal exact_charfun(const ExactPmf& pmf, const Real& t, const Real& center,
                    const Real& scale) {
    if (scale <= 0) throw DomainError("charfun scale must be positive");
    CReal z;
    for (long k = pmf.min_k; k <= pmf.max_k(); ++k) {
        Rat p = pmf.at(k);
        if (p == 0) continue;
        Real theta = t * (Real(k) - center) / scale;
        Real w = to_real(p);
        z.re += w * cos(theta);
        z.im += w * sin(theta);
    }
    return z;
}

}  // namespace occ
