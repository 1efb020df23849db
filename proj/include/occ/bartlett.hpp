#pragma once

#include <vector>

#include "occ/moments.hpp"
#include "occ/scheme.hpp"

namespace occ {

struct QuadratureSpec {
    int panels = 4;   // starting panels per dimension
    int nodes = 16;   // Gauss-Legendre order per panel
    Real tol = Real("1e-7");
    int max_doublings = 6;
};

// E exp(i [t gtilde(u) + sum_l tau_l xitilde_l(u)] / sqrt(N)) over the 2^s
// joint indicator outcomes
CReal psi(const Real& t, const std::vector<Real>& tau, const DerivedParams& d, const GMoments& gm);

// integral of psi^N over the box |tau_l| <= pi sqrt(N p_l q_l), tensor
// Gauss-Legendre with panel doubling until two successive estimates agree
CReal theta(const Real& t, const DerivedParams& d, const GMoments& gm,
            const QuadratureSpec& quad = {});

// characteristic-function ratio theta(t)/theta(0)
CReal phi_via_bartlett(const Real& t, const DerivedParams& d, const GMoments& gm,
                       const QuadratureSpec& quad = {});

}  // namespace occ
