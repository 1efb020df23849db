#include "occ/polyroot.hpp"

#include <algorithm>
#include <utility>

#include "occ/errors.hpp"

namespace occ {

long poly_degree(const Poly& p) {
    long d = static_cast<long>(p.size()) - 1;
    while (d >= 0 && p[static_cast<size_t>(d)] == 0) --d;
    return d;
}

Rat poly_eval(const Poly& p, const Rat& x) {
    Rat acc = 0;
    for (size_t i = p.size(); i-- > 0;) acc = Rat(acc * x + p[i]);
    return acc;
}

Real poly_eval_real(const Poly& p, const Real& x) {
    Real acc = 0;
    for (size_t i = p.size(); i-- > 0;) acc = acc * x + to_real(p[i]);
    return acc;
}

Poly poly_derivative(const Poly& p) {
    Poly d;
    for (size_t i = 1; i < p.size(); ++i) d.push_back(Rat(p[i] * Int(i)));
    if (d.empty()) d.push_back(0);
    return d;
}

namespace {

// integer polynomial, ascending powers, no leading zeros
using ZPoly = std::vector<Int>;

long zdeg(const ZPoly& p) { return static_cast<long>(p.size()) - 1; }

void ztrim(ZPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

bool zis_zero(const ZPoly& p) { return p.empty(); }

ZPoly zderiv(const ZPoly& p) {
    ZPoly d;
    for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Int(i));
    ztrim(d);
    return d;
}

Int zcontent(const ZPoly& p) {
    Int g = 0;
    for (const auto& c : p) g = gcd(g, c);
    return g;  // nonnegative
}

// divide by content, force positive leading coefficient
ZPoly zprimitive(ZPoly p) {
    ztrim(p);
    if (p.empty()) return p;
    Int g = zcontent(p);
    if (p.back() < 0) g = -g;
    for (auto& c : p) c /= g;
    return p;
}

// divide by positive content only; sign-preserving, as Sturm sequences need
ZPoly zreduce(ZPoly p) {
    ztrim(p);
    if (p.empty()) return p;
    Int g = zcontent(p);
    for (auto& c : p) c /= g;
    return p;
}

// remainder of f modulo g up to a positive scalar, negated (Sturm successor);
// positivity of the implicit scaling keeps sign sequences valid
ZPoly sturm_next(ZPoly f, const ZPoly& g) {
    const Int& lead = g.back();
    int scale_sign = 1;
    while (!zis_zero(f) && zdeg(f) >= zdeg(g)) {
        Int top = f.back();
        size_t shift = static_cast<size_t>(zdeg(f) - zdeg(g));
        for (auto& c : f) c *= lead;
        for (size_t i = 0; i < g.size(); ++i) f[i + shift] -= top * g[i];
        ztrim(f);
        if (lead < 0) scale_sign = -scale_sign;
    }
    if (scale_sign > 0)
        for (auto& c : f) c = -c;
    return f;
}

ZPoly zgcd(ZPoly a, ZPoly b) {
    a = zprimitive(std::move(a));
    b = zprimitive(std::move(b));
    while (!zis_zero(b)) {
        ZPoly r = zprimitive(sturm_next(a, b));
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

ZPoly zdiv_exact(ZPoly f, const ZPoly& g) {
    ztrim(f);
    if (zis_zero(f)) return f;
    if (zdeg(g) == 0) {
        for (auto& c : f) {
            if (c % g[0] != 0) throw ValidationError("inexact polynomial division");
            c /= g[0];
        }
        return f;
    }
    ZPoly q(static_cast<size_t>(zdeg(f) - zdeg(g)) + 1, Int(0));
    while (!zis_zero(f) && zdeg(f) >= zdeg(g)) {
        if (f.back() % g.back() != 0) throw ValidationError("inexact polynomial division");
        Int c = f.back() / g.back();
        size_t shift = static_cast<size_t>(zdeg(f) - zdeg(g));
        q[shift] = c;
        for (size_t i = 0; i < g.size(); ++i) f[i + shift] -= c * g[i];
        ztrim(f);
    }
    if (!zis_zero(f)) throw ValidationError("inexact polynomial division");
    return q;
}

// squarefree factorization p = prod f_i^i over primitive integer polynomials
std::vector<std::pair<ZPoly, int>> yun_squarefree(const ZPoly& p) {
    std::vector<std::pair<ZPoly, int>> out;
    ZPoly d = zderiv(p);
    ZPoly a0 = zgcd(p, d);
    if (zdeg(a0) == 0) {
        out.emplace_back(p, 1);
        return out;
    }
    ZPoly w = zdiv_exact(p, a0);
    ZPoly z = zdiv_exact(d, a0);
    {
        ZPoly wd = zderiv(w);
        ZPoly nz;
        nz.resize(std::max(z.size(), wd.size()), Int(0));
        for (size_t i = 0; i < z.size(); ++i) nz[i] += z[i];
        for (size_t i = 0; i < wd.size(); ++i) nz[i] -= wd[i];
        ztrim(nz);
        z = std::move(nz);
    }
    int mult = 1;
    while (zdeg(w) > 0) {
        ZPoly fi = zis_zero(z) ? zprimitive(w) : zgcd(w, z);
        if (zdeg(fi) > 0) out.emplace_back(fi, mult);
        w = zdiv_exact(w, fi);
        ZPoly y = zis_zero(z) ? ZPoly{} : zdiv_exact(z, fi);
        ZPoly wd = zderiv(w);
        ZPoly nz;
        nz.resize(std::max(y.size(), wd.size()), Int(0));
        for (size_t i = 0; i < y.size(); ++i) nz[i] += y[i];
        for (size_t i = 0; i < wd.size(); ++i) nz[i] -= wd[i];
        ztrim(nz);
        z = std::move(nz);
        ++mult;
    }
    return out;
}

// sign of p at the rational a/b (b > 0), decided in integers
int sign_at(const ZPoly& p, const Int& a, const Int& b) {
    Int acc = 0, bp = 1;
    for (size_t i = p.size(); i-- > 0;) {
        acc = acc * a + p[i] * bp;
        if (i > 0) bp *= b;
    }
    return acc.sign();
}

int sign_at(const ZPoly& p, const Rat& x) {
    return sign_at(p, Int(numerator(x)), Int(denominator(x)));
}

int variations(const std::vector<ZPoly>& chain, const Rat& x) {
    int prev = 0, v = 0;
    for (const auto& p : chain) {
        int s = sign_at(p, x);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

std::vector<ZPoly> sturm_chain(const ZPoly& f) {
    std::vector<ZPoly> chain{f, zderiv(f)};
    while (zdeg(chain.back()) > 0) {
        ZPoly next = zreduce(sturm_next(chain[chain.size() - 2], chain.back()));
        if (zis_zero(next)) throw ValidationError("Sturm chain collapsed on non-squarefree input");
        chain.push_back(std::move(next));
    }
    return chain;
}

Rat cauchy_bound(const ZPoly& p) {
    Int lead = abs(p.back());
    Int top = 0;
    for (size_t i = 0; i + 1 < p.size(); ++i) top = std::max(top, Int(abs(p[i])));
    return Rat(1) + Rat(top, lead);
}

// bracket with exactly one simple root and opposite end signs
std::pair<Rat, Rat> bisect_refine(const ZPoly& f, Rat lo, Rat hi) {
    int slo = sign_at(f, lo);
    Rat scale = std::max(Rat(abs(lo)), Rat(abs(hi))) + 1;
    Rat target = Rat(numerator(scale), denominator(scale) * (Int(1) << 64));
    while (Rat(hi - lo) > target) {
        Rat m = Rat((lo + hi) / 2);
        int s = sign_at(f, m);
        if (s == 0) return {m, m};
        if (s == slo)
            lo = m;
        else
            hi = m;
    }
    return {lo, hi};
}

Real newton_polish(const ZPoly& f, const Rat& lo, const Rat& hi) {
    std::vector<Real> c, dc;
    for (const auto& v : f) c.push_back(Real(v));
    for (size_t i = 1; i < f.size(); ++i) dc.push_back(Real(f[i] * Int(i)));
    auto horner = [](const std::vector<Real>& p, const Real& x) {
        Real acc = 0;
        for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
        return acc;
    };
    Real rlo = to_real(lo), rhi = to_real(hi);
    Real x = (rlo + rhi) / 2;
    for (int it = 0; it < 6; ++it) {
        Real fx = horner(c, x);
        Real dfx = horner(dc, x);
        if (dfx == 0) break;
        Real nx = x - fx / dfx;
        if (nx < rlo || nx > rhi) break;
        x = nx;
    }
    return x;
}

struct Bracket {
    Rat lo, hi;
    int cnt;
};

void isolate_factor(const ZPoly& f, int multiplicity, std::vector<IsolatedRoot>& out) {
    if (zdeg(f) == 1) {
        Rat r(-f[0], f[1]);
        out.push_back({r, r, multiplicity, to_real(r)});
        return;
    }
    auto chain = sturm_chain(f);
    Rat bound = cauchy_bound(f);
    std::vector<Bracket> stack;
    {
        int total = variations(chain, Rat(-bound)) - variations(chain, bound);
        if (total > 0) stack.push_back({Rat(-bound), bound, total});
    }
    while (!stack.empty()) {
        Bracket br = stack.back();
        stack.pop_back();
        if (br.cnt == 1) {
            auto [lo, hi] = bisect_refine(f, br.lo, br.hi);
            if (lo == hi)
                out.push_back({lo, hi, multiplicity, to_real(lo)});
            else
                out.push_back({lo, hi, multiplicity, newton_polish(f, lo, hi)});
            continue;
        }
        Rat m = Rat((br.lo + br.hi) / 2);
        if (sign_at(f, m) == 0) {
            out.push_back({m, m, multiplicity, to_real(m)});
            Rat eps = Rat((br.hi - br.lo) / 4);
            for (int guard = 0;; ++guard) {
                if (guard > 200) throw ValidationError("root isolation failed to separate an exact hit");
                Rat ml = Rat(m - eps), mr = Rat(m + eps);
                if (sign_at(f, ml) != 0 && sign_at(f, mr) != 0) {
                    int cl = variations(chain, br.lo) - variations(chain, ml);
                    int cr = variations(chain, mr) - variations(chain, br.hi);
                    if (cl + cr == br.cnt - 1) {
                        if (cl > 0) stack.push_back({br.lo, ml, cl});
                        if (cr > 0) stack.push_back({mr, br.hi, cr});
                        break;
                    }
                }
                eps = Rat(eps / 2);
            }
        } else {
            int cl = variations(chain, br.lo) - variations(chain, m);
            int cr = br.cnt - cl;
            if (cl > 0) stack.push_back({br.lo, m, cl});
            if (cr > 0) stack.push_back({m, br.hi, cr});
        }
    }
}

}  // namespace

std::vector<IsolatedRoot> isolate_real_roots(const Poly& p) {
    long deg = poly_degree(p);
    if (deg < 1) throw DomainError("root isolation needs degree at least 1");

    Int den_lcm = 1;
    for (long i = 0; i <= deg; ++i)
        den_lcm = lcm(den_lcm, Int(denominator(p[static_cast<size_t>(i)])));
    ZPoly zp;
    for (long i = 0; i <= deg; ++i) {
        Rat c = Rat(p[static_cast<size_t>(i)] * den_lcm);
        zp.push_back(Int(numerator(c)));
    }
    zp = zprimitive(std::move(zp));

    std::vector<IsolatedRoot> roots;
    for (const auto& [factor, mult] : yun_squarefree(zp))
        isolate_factor(factor, mult, roots);

    long found = 0;
    for (const auto& r : roots) found += r.multiplicity;
    if (found != deg) throw ValidationError("polynomial is not real-rooted");

    std::sort(roots.begin(), roots.end(), [](const IsolatedRoot& x, const IsolatedRoot& y) {
        return Rat(x.lo + x.hi) < Rat(y.lo + y.hi);
    });
    return roots;
}

}  // namespace occ
