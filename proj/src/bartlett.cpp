#include "occ/bartlett.hpp"

#include <array>
#include <limits>

#include <boost/math/constants/constants.hpp>

#include "occ/errors.hpp"
#include "occ/quadrature.hpp"

namespace occ {

namespace {

// outcome table for the 2^s joint indicators, arguments pre-divided by sqrt(N)
struct PsiAtoms {
    long s = 0;
    std::vector<Real> prob;
    std::vector<Real> g_scaled;
    std::vector<std::array<Real, 2>> xi_scaled;  // per set: indicator 0 / 1
};

PsiAtoms make_atoms(const DerivedParams& d, const GMoments& gm) {
    if (gm.sigma2 == 0) throw DomainError("zero series variance");
    long s = d.params.s();
    PsiAtoms a;
    a.s = s;
    Real scale = gm.sigma() * sqrt(Real(d.params.cells));
    const Rat& big_q = d.miss_all_prob;
    for (long mask = 0; mask < (1L << s); ++mask) {
        Rat prob = 1, lsum = 0;
        for (long l = 0; l < s; ++l) {
            size_t li = static_cast<size_t>(l);
            if ((mask >> l) & 1) {
                prob *= d.p[li];
                lsum += 1;  // (1 - p)/q collapses to 1
            } else {
                prob *= d.q[li];
                lsum += Rat(-d.p[li]) / d.q[li];
            }
        }
        Rat g = Rat((mask == 0 ? Rat(1) : Rat(0)) - big_q + big_q * lsum);
        a.prob.push_back(to_real(prob));
        a.g_scaled.push_back(to_real(g) / scale);
    }
    Real root_n = sqrt(Real(d.params.cells));
    for (long l = 0; l < s; ++l) {
        size_t li = static_cast<size_t>(l);
        Real spq = sqrt(to_real(Rat(d.p[li] * d.q[li])));
        a.xi_scaled.push_back({to_real(Rat(-d.p[li])) / (spq * root_n),
                               to_real(Rat(d.q[li])) / (spq * root_n)});
    }
    return a;
}

CReal psi_from_atoms(const PsiAtoms& a, const Real& t, const std::vector<Real>& tau) {
    CReal z{0, 0};
    for (size_t mask = 0; mask < a.prob.size(); ++mask) {
        Real arg = t * a.g_scaled[mask];
        for (long l = 0; l < a.s; ++l)
            arg += tau[static_cast<size_t>(l)] *
                   a.xi_scaled[static_cast<size_t>(l)][(mask >> l) & 1];
        z.re += a.prob[mask] * cos(arg);
        z.im += a.prob[mask] * sin(arg);
    }
    return z;
}

}  // namespace

CReal psi(const Real& t, const std::vector<Real>& tau, const DerivedParams& d, const GMoments& gm) {
    long s = d.params.s();
    if (s > 20) throw DomainError("outcome enumeration capped at 20 sets");
    if (static_cast<long>(tau.size()) != s) throw DomainError("tau length must match the set count");
    return psi_from_atoms(make_atoms(d, gm), t, tau);
}

CReal theta(const Real& t, const DerivedParams& d, const GMoments& gm, const QuadratureSpec& quad) {
    long s = d.params.s();
    if (s > 3) throw DomainError("quadrature dimension capped at 3 sets");
    if (quad.panels < 1 || quad.nodes < 1 || !(quad.tol > 0) || quad.max_doublings < 1)
        throw DomainError("malformed quadrature request");
    PsiAtoms atoms = make_atoms(d, gm);
    long cells = d.params.cells;

    std::vector<Real> half;
    for (long l = 0; l < s; ++l)
        half.push_back(boost::math::constants::pi<Real>() *
                       sqrt(Real(cells) * to_real(Rat(d.p[static_cast<size_t>(l)] *
                                                      d.q[static_cast<size_t>(l)]))));
    auto rule = gauss_legendre<Real>(quad.nodes);

    auto estimate = [&](int panels) {
        std::vector<std::vector<Real>> coord(static_cast<size_t>(s)), wt(static_cast<size_t>(s));
        for (size_t l = 0; l < static_cast<size_t>(s); ++l) {
            Real width = 2 * half[l] / panels;
            for (int pn = 0; pn < panels; ++pn) {
                Real mid = -half[l] + width * pn + width / 2;
                for (size_t i = 0; i < rule.node.size(); ++i) {
                    coord[l].push_back(mid + width / 2 * rule.node[i]);
                    wt[l].push_back(rule.weight[i] * width / 2);
                }
            }
        }
        size_t npts = 1;
        for (size_t l = 0; l < coord.size(); ++l) npts *= coord[l].size();
        std::vector<Real> tau(static_cast<size_t>(s));
        CReal total{0, 0};
        for (size_t flat = 0; flat < npts; ++flat) {
            size_t rest = flat;
            Real w = 1;
            for (size_t l = 0; l < coord.size(); ++l) {
                size_t i = rest % coord[l].size();
                rest /= coord[l].size();
                tau[l] = coord[l][i];
                w *= wt[l][i];
            }
            CReal val = cpow_n(psi_from_atoms(atoms, t, tau), cells);
            total.re += w * val.re;
            total.im += w * val.im;
        }
        return total;
    };

    CReal prev = estimate(quad.panels);
    int panels = quad.panels;
    double achieved = std::numeric_limits<double>::infinity();
    for (int round = 0; round < quad.max_doublings; ++round) {
        panels *= 2;
        CReal cur = estimate(panels);
        Real delta = abs_creal(csub(cur, prev));
        if (delta < quad.tol) return cur;
        prev = cur;
        achieved = static_cast<double>(delta);
    }
    throw ToleranceError("panel refinement stalled above tolerance", achieved);
}

CReal phi_via_bartlett(const Real& t, const DerivedParams& d, const GMoments& gm,
                       const QuadratureSpec& quad) {
    CReal at_t = theta(t, d, gm, quad);
    CReal at_0 = theta(Real(0), d, gm, quad);
    return cdiv(at_t, at_0);
}

}  // namespace occ
