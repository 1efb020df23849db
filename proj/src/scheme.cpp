#include "occ/scheme.hpp"

#include "occ/errors.hpp"
#include "occ/moments.hpp"

#include <algorithm>
#include <numeric>

namespace occ {

long SchemeParams::total_particles() const {
    return std::accumulate(set_sizes.begin(), set_sizes.end(), 0L);
}

long SchemeParams::max_set() const {
    return *std::max_element(set_sizes.begin(), set_sizes.end());
}

void SchemeParams::validate() const {
    if (cells < 2) throw DomainError("need at least 2 cells");
    if (set_sizes.empty()) throw DomainError("need at least one set");
    for (long n : set_sizes) {
        if (n < 1 || n > cells - 1)
            throw DomainError("set size " + std::to_string(n) + " outside [1, " +
                              std::to_string(cells - 1) + "]");
    }
}

long DerivedParams::support_min() const {
    return std::max(0L, params.cells - params.total_particles());
}

long DerivedParams::support_max() const {
    return params.cells - params.max_set();
}

Rat DerivedParams::var_correction() const {
    if (!var_correction_)
        throw DomainError("variance correction undefined: sigma2 == 0");
    return *var_correction_;
}

DerivedParams derive(const SchemeParams& params) {
    params.validate();
    DerivedParams d;
    d.params = params;
    const long N = params.cells;
    const long s = params.s();

    d.p.reserve(s);
    d.q.reserve(s);
    d.odds.reserve(s);
    d.miss_all_prob = 1;
    d.hit_all_prob = 1;
    Rat odds_sum = 0;
    for (long n : params.set_sizes) {
        Rat p(n, N), q = 1 - p;
        d.p.push_back(p);
        d.q.push_back(q);
        d.odds.push_back(p / q);
        d.miss_all_prob *= q;
        d.hit_all_prob *= p;
        odds_sum += p / q;
    }
    d.mean_empty = N * d.miss_all_prob;
    d.sigma2 = d.miss_all_prob * (1 - d.miss_all_prob * (1 + odds_sum));

    // e_0..e_s of the odds vector by incremental multiplication of (1 + r_l x).
    d.odds_elem_sym.assign(s + 1, Rat(0));
    d.odds_elem_sym[0] = 1;
    for (long l = 0; l < s; ++l)
        for (long v = l + 1; v >= 1; --v)
            d.odds_elem_sym[v] += d.odds[l] * d.odds_elem_sym[v - 1];

    // Exact variance. The nu >= 2 tail is the O(1/N) correction to N*sigma2;
    // keeping it rational avoids the catastrophic cancellation a float route hits.
    Rat tail = 0;
    Rat denom_pow = 1;  // (N-1)^(nu-1)
    for (long nu = 2; nu <= s; ++nu) {
        denom_pow *= (N - 1);
        Rat term = d.odds_elem_sym[nu] / denom_pow;
        tail += (nu % 2 == 0) ? term : -term;
    }
    d.var_empty = N * d.sigma2 + N * d.miss_all_prob * d.miss_all_prob * tail;
    if (d.sigma2 != 0)
        d.var_correction_ = d.var_empty / (N * d.sigma2) - 1;

    d.alpha = 0;
    Rat q2 = d.miss_all_prob * d.miss_all_prob;
    Rat p2 = d.hit_all_prob * d.hit_all_prob;
    for (long l = 0; l < s; ++l) {
        Rat a = q2 * d.p[l] / d.q[l];
        Rat b = p2 * d.q[l] / d.p[l];
        d.alpha = std::max(d.alpha, std::min(a, b));
    }
    return d;
}

SchemeDiagnostics diagnostics(const DerivedParams& d, const GMoments& gm) {
    if (d.degenerate()) throw DomainError("diagnostics undefined: sigma2 == 0");
    const long N = d.params.cells;
    const Real rootN = sqrt(Real(N));

    SchemeDiagnostics out;
    Real cutoff = 1 / gm.abs3();
    Rat min_pq = d.p[0] * d.q[0];
    for (size_t l = 1; l < d.p.size(); ++l)
        min_pq = std::min(min_pq, Rat(d.p[l] * d.q[l]));
    cutoff = std::min(cutoff, sqrt(to_real(min_pq)));
    out.t_cutoff = rootN * cutoff;

    Real sum = gm.abs5();
    for (size_t l = 0; l < d.p.size(); ++l) {
        Rat pq = d.p[l] * d.q[l];
        Rat p4q4 = rat_pow(d.p[l], 4) + rat_pow(d.q[l], 4);
        sum += to_real(p4q4) / pow(sqrt(to_real(pq)), 3);
    }
    out.remainder_scale = sum / (rootN * rootN * rootN);

    out.abs_moment_ratio = (gm.abs1() / gm.abs3()) / to_real(min_pq);
    out.sigma_abs3 = sqrt(to_real(d.sigma2)) * gm.abs3();
    return out;
}

}  // namespace occ
