#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "occ/exact.hpp"
#include "occ/numeric.hpp"
#include "occ/polyroot.hpp"

namespace occ {

// F(z) = E z^count, exact coefficients ascending; coefficient k is P{count = k}
Poly pgf_coefficients(const ExactPmf& pmf);

struct DecompOptions {
    long degree_cap = 64;
};

// the empty-cell count written as a sum of independent Bernoulli variables:
// the PGF factors over its real nonpositive zeros -d_m, one Bernoulli success
// probability a_m = 1/(1+d_m) per zero, zeros at the origin giving a_m = 1
struct BernoulliDecomposition {
    long degree = 0;
    std::vector<Real> roots;  // descending, so origin zeros lead
    std::vector<Real> a;      // success probabilities in matching order
    std::optional<Real> l3, l4;

    Real sum_a() const;
    Real sum_a1a() const;
};

BernoulliDecomposition extract_bernoulli(const Poly& pgf, const DecompOptions& opts = {});

// third/fourth cumulant ratios of the Bernoulli sum; throws DomainError when
// the decomposition is deterministic (every a_m equal to 1)
std::pair<Real, Real> l3_l4(const BernoulliDecomposition& dec);

// Poisson-binomial convolution of the a_m, indexed 0..degree
std::vector<Real> reconstruct_pmf(const BernoulliDecomposition& dec);

}  // namespace occ
