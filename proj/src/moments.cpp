#include "occ/moments.hpp"

#include "occ/errors.hpp"
#include "occ/rng.hpp"

#include <array>
#include <cmath>
#include <map>

namespace occ {

namespace {

Real std_pow_sigma(const Rat& raw, const Rat& sigma2, int order) {
    Real s = sqrt(to_real(sigma2));
    return to_real(raw) / pow(s, order);
}

// Raw moments 0..4 of a sum of independent variables, combined pairwise:
// E(A+B)^k = sum_i C(k,i) EA^i EB^(k-i).
using Mom4 = std::array<Rat, 5>;

Mom4 combine(const Mom4& a, const Mom4& b) {
    static const int ch[5][5] = {{1, 0, 0, 0, 0},
                                 {1, 1, 0, 0, 0},
                                 {1, 2, 1, 0, 0},
                                 {1, 3, 3, 1, 0},
                                 {1, 4, 6, 4, 1}};
    Mom4 out{};
    for (int k = 0; k <= 4; ++k) {
        Rat acc = 0;
        for (int i = 0; i <= k; ++i) acc += ch[k][i] * a[i] * b[k - i];
        out[k] = acc;
    }
    return out;
}

// X_l = u_l / q_l with u_l ~ Bernoulli(p_l): EX^i = p_l q_l^{-i}.
Mom4 one_set(const Rat& p, const Rat& q) {
    Mom4 m;
    m[0] = 1;
    Rat qi = 1;
    for (int i = 1; i <= 4; ++i) {
        qi *= q;
        m[i] = p / qi;
    }
    return m;
}

}  // namespace

XiMoments xi_moments(const DerivedParams& d) {
    XiMoments xm;
    const size_t s = d.p.size();
    xm.pq.reserve(s);
    xm.third_raw.reserve(s);
    xm.fourth_raw.reserve(s);
    xm.abs5_raw.reserve(s);
    for (size_t l = 0; l < s; ++l) {
        const Rat &p = d.p[l], &q = d.q[l];
        Rat pq = p * q;
        xm.pq.push_back(pq);
        xm.third_raw.push_back(pq * (q - p));
        xm.fourth_raw.push_back(pq * (1 - 3 * pq));
        xm.abs5_raw.push_back(pq * (rat_pow(p, 4) + rat_pow(q, 4)));
    }
    return xm;
}

Real XiMoments::third(size_t l) const {
    return to_real(third_raw[l]) / pow(sqrt(to_real(pq[l])), 3);
}

Real XiMoments::fourth(size_t l) const {
    return to_real(fourth_raw[l] / (pq[l] * pq[l]));
}

Real XiMoments::abs5(size_t l) const {
    return to_real(abs5_raw[l]) / pow(sqrt(to_real(pq[l])), 5);
}

GMoments g_signed_moments(const DerivedParams& d) {
    const long s = d.params.s();
    const Rat& Q = d.miss_all_prob;
    Rat odds_sum = 0;
    for (const Rat& r : d.odds) odds_sum += r;
    const Rat c = Q * (1 + odds_sum);  // so that g = 1{L=0} - c + Q L

    // moments of L = sum X_l and, per l, of L without X_l
    Mom4 mL;
    mL.fill(Rat(0));
    mL[0] = 1;
    std::vector<Mom4> per_set(s);
    for (long l = 0; l < s; ++l) {
        per_set[l] = one_set(d.p[l], d.q[l]);
        mL = combine(mL, per_set[l]);
    }

    GMoments gm;
    gm.sigma2 = d.sigma2;
    gm.pq = {};
    gm.pq.reserve(s);
    for (long l = 0; l < s; ++l) gm.pq.push_back(d.p[l] * d.q[l]);

    // E g^k = E(QL - c)^k + Q[(1-c)^k - (-c)^k]; the indicator collapses all
    // its powers onto the L = 0 atom, where QL - c = -c.
    auto g_power = [&](int k) {
        static const int ch[5][5] = {{1, 0, 0, 0, 0},
                                     {1, 1, 0, 0, 0},
                                     {1, 2, 1, 0, 0},
                                     {1, 3, 3, 1, 0},
                                     {1, 4, 6, 4, 1}};
        Rat acc = 0;
        Rat Qi = 1;
        for (int i = 0; i <= k; ++i) {
            Rat term = ch[k][i] * Qi * mL[i] * rat_pow(-c, k - i);
            acc += term;
            Qi *= Q;
        }
        return acc + Q * (rat_pow(1 - c, k) - rat_pow(-c, k));
    };
    gm.g2_raw = g_power(2);
    gm.g3_raw = g_power(3);
    gm.g4_raw = g_power(4);
    if (gm.g2_raw != d.sigma2)
        throw ValidationError("kernel second moment disagrees with sigma2");

    // cross moments with u_l - p_l; the split L = X_l + (rest) isolates the
    // dependent factor
    gm.g2xi_raw.resize(s);
    gm.g2xi2_raw.resize(s);
    for (long l = 0; l < s; ++l) {
        const Rat &p = d.p[l], &q = d.q[l], &r = d.odds[l];
        Rat pq = p * q;
        Rat em = mL[1] - r;  // E of L minus set l
        Rat ex2 = p / (q * q);
        Rat em2 = mL[2] - 2 * em * r - ex2;
        Rat one_minus_2c = 1 - 2 * c;
        gm.g2xi_raw[l] =
            one_minus_2c * Q * (-p) + Q * Q * (r + 2 * p * em) - 2 * c * Q * p;
        gm.g2xi2_raw[l] = one_minus_2c * Q * (p * p) +
                          Q * Q * (p + 2 * pq * em + pq * em2) -
                          2 * c * Q * pq * (1 + em) + c * c * pq;
    }

    // sum over ordered pairs l != j of E[g (u_l-p_l)(u_j-p_j)]^2 / (pq_l pq_j);
    // the pair moment is Q p_l p_j, so the sum is Q^2 * 2 e_2(odds)
    gm.cross2_sum_raw = (s >= 2) ? Rat(2 * Q * Q * d.odds_elem_sym[2]) : Rat(0);
    return gm;
}

void g_abs_moments(const DerivedParams& d, GMoments& gm,
                   const AbsMomentOptions& opts) {
    const long s = d.params.s();
    const Rat& Q = d.miss_all_prob;
    Rat odds_sum = 0;
    for (const Rat& r : d.odds) odds_sum += r;
    const Rat c = Q * (1 + odds_sum);

    if (s <= opts.exact_set_cap) {
        // distribution of L by sequential convolution, equal atoms merged
        std::map<Rat, Rat> dist;
        dist[Rat(0)] = 1;
        for (long l = 0; l < s; ++l) {
            std::map<Rat, Rat> next;
            Rat step = 1 / d.q[l];
            for (const auto& [v, w] : dist) {
                next[v] += w * d.q[l];
                next[v + step] += w * d.p[l];
            }
            dist.swap(next);
        }
        Rat a1 = 0, a3 = 0, a5 = 0;
        for (const auto& [v, w] : dist) {
            Rat gv = (v == 0) ? Rat(1 - c) : Rat(Q * v - c);
            Rat av = gv < 0 ? -gv : gv;
            Rat av2 = av * av;
            a1 += w * av;
            a3 += w * av * av2;
            a5 += w * av * av2 * av2;
        }
        gm.abs1_raw = a1;
        gm.abs3_raw = a3;
        gm.abs5_raw = a5;
        return;
    }

    // sampling fallback; reported with standard errors, diagnostics only
    McAbsMoments mc;
    mc.trials = opts.mc_trials;
    mc.seed = opts.mc_seed;
    std::vector<double> pd(s), qd(s);
    for (long l = 0; l < s; ++l) {
        pd[l] = static_cast<double>(to_real(d.p[l]));
        qd[l] = static_cast<double>(to_real(d.q[l]));
    }
    double Qd = static_cast<double>(to_real(Q));
    double cd = static_cast<double>(to_real(c));
    double sig = static_cast<double>(sqrt(to_real(d.sigma2)));
    double s1 = 0, s3 = 0, s5 = 0, v1 = 0, v3 = 0, v5 = 0;
    SplitMix64 rng(opts.mc_seed, 0x6d6f6d31ULL);
    for (long i = 0; i < opts.mc_trials; ++i) {
        double L = 0;
        bool all_zero = true;
        for (long l = 0; l < s; ++l) {
            if (rng.next01() < pd[l]) {
                L += 1.0 / qd[l];
                all_zero = false;
            }
        }
        double g = (all_zero ? 1.0 - cd : Qd * L - cd) / sig;
        double a = std::fabs(g), a3t = a * a * a, a5t = a3t * a * a;
        s1 += a;
        s3 += a3t;
        s5 += a5t;
        v1 += a * a;
        v3 += a3t * a3t;
        v5 += a5t * a5t;
    }
    double n = static_cast<double>(opts.mc_trials);
    mc.abs1 = s1 / n;
    mc.abs3 = s3 / n;
    mc.abs5 = s5 / n;
    mc.se1 = std::sqrt(std::max(0.0, v1 / n - mc.abs1 * mc.abs1) / n);
    mc.se3 = std::sqrt(std::max(0.0, v3 / n - mc.abs3 * mc.abs3) / n);
    mc.se5 = std::sqrt(std::max(0.0, v5 / n - mc.abs5 * mc.abs5) / n);
    gm.abs_mc = mc;
}

GMoments g_moments(const DerivedParams& d, const AbsMomentOptions& opts) {
    GMoments gm = g_signed_moments(d);
    g_abs_moments(d, gm, opts);
    return gm;
}

Real GMoments::sigma() const { return sqrt(to_real(sigma2)); }

Real GMoments::g3() const { return std_pow_sigma(g3_raw, sigma2, 3); }

Real GMoments::g4() const { return std_pow_sigma(g4_raw, sigma2, 4); }

Real GMoments::g2xi(size_t l) const {
    return to_real(g2xi_raw[l]) / (to_real(sigma2) * sqrt(to_real(pq[l])));
}

Real GMoments::g2xi2(size_t l) const {
    return to_real(g2xi2_raw[l] / (sigma2 * pq[l]));
}

Real GMoments::abs1() const {
    if (abs1_raw) return std_pow_sigma(*abs1_raw, sigma2, 1);
    if (abs_mc) return Real(abs_mc->abs1);
    throw DomainError("absolute moments not computed");
}

Real GMoments::abs3() const {
    if (abs3_raw) return std_pow_sigma(*abs3_raw, sigma2, 3);
    if (abs_mc) return Real(abs_mc->abs3);
    throw DomainError("absolute moments not computed");
}

Real GMoments::abs5() const {
    if (abs5_raw) return std_pow_sigma(*abs5_raw, sigma2, 5);
    if (abs_mc) return Real(abs_mc->abs5);
    throw DomainError("absolute moments not computed");
}

EdgeworthCoeffs edgeworth_coeffs(const DerivedParams& d, const GMoments& gm,
                                 const XiMoments& xm, M2Variant variant) {
    if (d.degenerate())
        throw DomainError("expansion coefficients undefined: sigma2 == 0");
    EdgeworthCoeffs c;
    c.s = d.params.s();
    c.sigma2 = d.sigma2;
    c.variant = variant;
    c.m3_raw = gm.g3_raw;
    c.cross2_sum_raw = gm.cross2_sum_raw;

    Rat m2 = 0, m4 = gm.g4_raw;
    for (long l = 0; l < c.s; ++l) {
        const Rat& pq = xm.pq[l];
        // Eg~^2 xi~ * Exi~^3 = (q-p) * g2xi_raw / (pq sigma^2): xi third
        // central moment is pq(q-p)
        m2 += (gm.g2xi_raw[l] * (d.q[l] - d.p[l]) - gm.g2xi2_raw[l]) / pq;
        m4 -= 3 * gm.g2xi_raw[l] * gm.g2xi_raw[l] / pq;
    }
    c.m2_series_raw = m2;
    c.m4_series_raw = m4;
    return c;
}

Real EdgeworthCoeffs::M2() const {
    Rat raw = m2_series_raw;
    if (variant == M2Variant::pair_corrected) raw += cross2_sum_raw;
    return to_real(raw / sigma2) + s;
}

Real EdgeworthCoeffs::M3() const { return std_pow_sigma(m3_raw, sigma2, 3); }

Real EdgeworthCoeffs::M4() const { return std_pow_sigma(m4_series_raw, sigma2, 4) - 3; }

CReal w_charfun(const Real& t, const EdgeworthCoeffs& c, long N) {
    if (N < 1) throw DomainError("N must be positive");
    const Real t2 = t * t;
    const Real t3 = t2 * t;
    const Real t4 = t2 * t2;
    const Real t6 = t4 * t2;
    const Real env = exp(-t2 / 2);
    const Real M2v = c.M2(), M3v = c.M3(), M4v = c.M4();
    const Real Nr(N);
    // (it)^3 -> -i t^3; (it)^6 -> -t^6; (it)^4 -> t^4; (it)^2 -> -t^2
    CReal z;
    z.re = env * (1 + (-t6 * M3v * M3v / 72 + t4 * M4v / 24 - t2 * M2v / 4) / Nr);
    z.im = env * (-t3 * M3v / (6 * sqrt(Nr)));
    return z;
}

}  // namespace occ
