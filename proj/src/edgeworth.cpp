#include "occ/edgeworth.hpp"

#include <functional>

#include <boost/math/constants/constants.hpp>

#include "occ/errors.hpp"

namespace occ {

Real hermite(int nu, const Real& x) {
    if (nu != 2 && nu != 3 && nu != 4 && nu != 6) throw DomainError("unsupported Hermite order");
    Real prev = 1, cur = x;
    for (int n = 1; n < nu; ++n) {
        Real next = x * cur - n * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

Real normal_phi(const Real& x) {
    return exp(-x * x / 2) / boost::math::constants::root_two_pi<Real>();
}

Real w_hat(const Real& x, const EdgeworthCoeffs& coeffs, long cells, const WHatOptions& opts) {
    if (cells < 1) throw DomainError("cell count must be positive");
    if (opts.h4_denom != 24 && opts.h4_denom != 32) throw DomainError("unsupported H4 denominator");
    Real m2 = coeffs.M2(), m3 = coeffs.M3(), m4 = coeffs.M4();
    Real bracket = 1 + hermite(3, x) * m3 / (6 * sqrt(Real(cells))) +
                   (hermite(6, x) * m3 * m3 / 72 + hermite(4, x) * m4 / opts.h4_denom +
                    hermite(2, x) * m2 / 4) /
                       cells;
    return normal_phi(x) * bracket;
}

namespace {

ApproxReport build_report(std::string method, const Rat& center, const Rat& scale2,
                          const ExactPmf& pmf, const std::function<Real(const Real&)>& approximant) {
    ApproxReport rep;
    rep.method = std::move(method);
    rep.scale = to_real(scale2);
    Real sd = sqrt(rep.scale);
    Real c = to_real(center);
    rep.sup_error = 0;
    for (long k = 0; k <= pmf.max_k(); ++k) {
        ApproxRow row;
        row.k = k;
        row.coord = (k - c) / sd;
        row.approx = approximant(row.coord);
        row.exact_scaled = sd * to_real(pmf.at(k));
        row.abs_err = abs(row.approx - row.exact_scaled);
        if (row.abs_err > rep.sup_error) rep.sup_error = row.abs_err;
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace

ApproxReport approx_thm2(const DerivedParams& d, const EdgeworthCoeffs& coeffs, const ExactPmf& pmf,
                         const WHatOptions& opts) {
    if (d.sigma2 == 0) throw DomainError("single-set scheme has zero series variance");
    long cells = d.params.cells;
    return build_report("thm2", d.mean_empty, Rat(d.sigma2 * cells), pmf,
                        [&](const Real& x) { return w_hat(x, coeffs, cells, opts); });
}

ApproxReport approx_thm3(const BernoulliDecomposition& dec, const DerivedParams& d,
                         const ExactPmf& pmf) {
    auto [l3, l4] = l3_l4(dec);
    return build_report("thm3", d.mean_empty, d.var_empty, pmf, [&](const Real& u) {
        Real bracket = 1 + hermite(3, u) * l3 / 6 + hermite(6, u) * l3 * l3 / 72 +
                       hermite(4, u) * l4 / 24;
        return normal_phi(u) * bracket;
    });
}

ApproxReport approx_thm4(const DerivedParams& d, const EdgeworthCoeffs& coeffs, const ExactPmf& pmf,
                         int correction_sign, const WHatOptions& opts) {
    if (d.sigma2 == 0) throw DomainError("single-set scheme has zero series variance");
    long cells = d.params.cells;
    Real b = to_real(d.var_correction());
    return build_report("thm4", d.mean_empty, d.var_empty, pmf, [&, b](const Real& u) {
        Real v = w_hat(u, coeffs, cells, opts);
        if (correction_sign != 0)
            v += correction_sign * b / 2 * hermite(2, u) * normal_phi(u);
        return v;
    });
}

ApproxReport approx_gaussian(const DerivedParams& d, const ExactPmf& pmf, Frame frame) {
    Rat scale2 = frame == Frame::series ? Rat(d.sigma2 * d.params.cells) : d.var_empty;
    if (scale2 == 0) throw DomainError("degenerate scale");
    return build_report("gaussian", d.mean_empty, scale2, pmf,
                        [](const Real& x) { return normal_phi(x); });
}

int calibrate_correction_sign(M2Variant variant, const WHatOptions& opts) {
    SchemeParams params{160, {48, 80}};
    auto d = derive(params);
    auto pmf = exact_pmf(params);
    auto coeffs = edgeworth_coeffs(d, g_moments(d), xi_moments(d), variant);
    Real plus = approx_thm4(d, coeffs, pmf, +1, opts).sup_error;
    Real minus = approx_thm4(d, coeffs, pmf, -1, opts).sup_error;
    return plus <= minus ? +1 : -1;
}

Real sup_error_slope(const std::vector<std::pair<long, Real>>& sweep) {
    if (sweep.size() < 3) throw DomainError("slope fit needs at least three points");
    std::vector<Real> lx, ly;
    for (const auto& [n, err] : sweep) {
        if (n < 1 || !(err > 0)) throw DomainError("slope fit needs positive sizes and errors");
        lx.push_back(log(Real(n)));
        ly.push_back(log(err));
    }
    Real mx = 0, my = 0;
    for (size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<long>(lx.size());
    my /= static_cast<long>(ly.size());
    Real num = 0, den = 0;
    for (size_t i = 0; i < lx.size(); ++i) {
        num += (lx[i] - mx) * (ly[i] - my);
        den += (lx[i] - mx) * (lx[i] - mx);
    }
    return num / den;
}

}  // namespace occ
