#pragma once

#include <cstddef>
#include <vector>

#include <boost/math/constants/constants.hpp>

#include "occ/errors.hpp"

namespace occ {

template <class T>
struct QuadRule {
    std::vector<T> node, weight;  // reference interval [-1, 1]
};

// Gauss-Legendre rule: Chebyshev seeds polished by Newton on the three-term
// recurrence, at the precision of T
template <class T>
QuadRule<T> gauss_legendre(int n) {
    if (n < 1) throw DomainError("quadrature order must be positive");
    QuadRule<T> rule;
    rule.node.assign(static_cast<size_t>(n), T(0));
    rule.weight.assign(static_cast<size_t>(n), T(0));
    const T eps = std::numeric_limits<T>::epsilon();
    for (int i = 0; i < (n + 1) / 2; ++i) {
        T x = cos(boost::math::constants::pi<T>() * (4 * i + 3) / (4 * n + 2));
        T deriv(0);
        for (int iter = 0; iter < 100; ++iter) {
            T p0(1), p1(0);
            for (int j = 0; j < n; ++j) {
                T p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) * x * p1 - j * p2) / (j + 1);
            }
            deriv = n * (x * p0 - p1) / (x * x - 1);
            T dx = p0 / deriv;
            x -= dx;
            if (abs(dx) <= 4 * eps * (abs(x) + 1)) break;
        }
        size_t a = static_cast<size_t>(i), b = static_cast<size_t>(n - 1 - i);
        rule.node[a] = -x;
        rule.node[b] = x;
        T w = 2 / ((1 - x * x) * deriv * deriv);
        rule.weight[a] = w;
        rule.weight[b] = w;
    }
    return rule;
}

// integrate f over [lo, hi] split into `panels` equal panels
template <class T, class F>
T integrate_panels(const F& f, const T& lo, const T& hi, int panels, const QuadRule<T>& rule) {
    T total(0);
    T width = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
        T a = lo + width * p;
        T mid = a + width / 2, half = width / 2;
        T acc(0);
        for (size_t i = 0; i < rule.node.size(); ++i) acc += rule.weight[i] * f(mid + half * rule.node[i]);
        total += acc * half;
    }
    return total;
}

}  // namespace occ
