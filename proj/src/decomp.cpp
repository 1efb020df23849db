#include "occ/decomp.hpp"

#include <algorithm>

#include "occ/errors.hpp"

namespace occ {

Poly pgf_coefficients(const ExactPmf& pmf) {
    Poly c(static_cast<size_t>(pmf.max_k()) + 1, Rat(0));
    for (size_t i = 0; i < pmf.prob.size(); ++i)
        c[static_cast<size_t>(pmf.min_k) + i] = pmf.prob[i];
    return c;
}

Real BernoulliDecomposition::sum_a() const {
    Real s = 0;
    for (const auto& v : a) s += v;
    return s;
}

Real BernoulliDecomposition::sum_a1a() const {
    Real s = 0;
    for (const auto& v : a) s += v * (1 - v);
    return s;
}

std::vector<Real> reconstruct_pmf(const BernoulliDecomposition& dec) {
    std::vector<Real> probs{Real(1)};
    probs.reserve(static_cast<size_t>(dec.degree) + 1);
    for (const auto& av : dec.a) {
        std::vector<Real> next(probs.size() + 1, Real(0));
        for (size_t i = 0; i < probs.size(); ++i) {
            next[i] += probs[i] * (1 - av);
            next[i + 1] += probs[i] * av;
        }
        probs = std::move(next);
    }
    return probs;
}

std::pair<Real, Real> l3_l4(const BernoulliDecomposition& dec) {
    if (!dec.l3 || !dec.l4) throw DomainError("deterministic decomposition has no cumulant ratios");
    return {*dec.l3, *dec.l4};
}

BernoulliDecomposition extract_bernoulli(const Poly& pgf, const DecompOptions& opts) {
    long deg = poly_degree(pgf);
    if (deg < 1) throw DomainError("generating polynomial must have degree at least 1");
    if (pgf[static_cast<size_t>(deg)] <= 0) throw DomainError("leading coefficient must be positive");
    if (deg > opts.degree_cap) throw ResourceError("generating polynomial degree exceeds cap");

    Rat at_one = poly_eval(pgf, 1);
    if (at_one <= 0) throw DomainError("polynomial must have positive mass");

    size_t origin_zeros = 0;
    while (pgf[origin_zeros] == 0) ++origin_zeros;

    BernoulliDecomposition dec;
    dec.degree = deg;
    for (size_t i = 0; i < origin_zeros; ++i) {
        dec.roots.push_back(Real(0));
        dec.a.push_back(Real(1));
    }

    Poly residual(pgf.begin() + static_cast<long>(origin_zeros), pgf.end());
    if (poly_degree(residual) >= 1) {
        auto roots = isolate_real_roots(residual);
        // ascending from the isolator; descending in the decomposition
        for (auto it = roots.rbegin(); it != roots.rend(); ++it) {
            if (!(it->value < 0))
                throw ValidationError("nonnegative zero found in generating polynomial");
            Real av;
            if (it->lo == it->hi)
                av = to_real(Rat(Rat(1) / Rat(1 - it->lo)));
            else
                av = 1 / (1 - it->value);
            for (int m = 0; m < it->multiplicity; ++m) {
                dec.roots.push_back(it->value);
                dec.a.push_back(av);
            }
        }
        Real s1 = dec.sum_a1a();
        Real s3 = 0, s4 = 0;
        for (const auto& av : dec.a) {
            Real v = av * (1 - av);
            s3 += v * (1 - 2 * av);
            s4 += v * (1 - 6 * v);
        }
        dec.l3 = s3 / pow(s1, Real(3) / 2);
        dec.l4 = s4 / (s1 * s1);
    }

    auto rebuilt = reconstruct_pmf(dec);
    Real norm = to_real(at_one);
    for (long k = 0; k <= deg; ++k) {
        Real want = to_real(pgf[static_cast<size_t>(k)]) / norm;
        if (abs(rebuilt[static_cast<size_t>(k)] - want) > 1e-12)
            throw ValidationError("Bernoulli factorization does not reproduce the polynomial");
    }
    return dec;
}

}  // namespace occ
