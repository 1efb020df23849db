#pragma once

#include <vector>

#include "occ/numeric.hpp"

namespace occ {

// polynomial with rational coefficients, ascending powers
using Poly = std::vector<Rat>;

long poly_degree(const Poly& p);
Rat poly_eval(const Poly& p, const Rat& x);
Real poly_eval_real(const Poly& p, const Real& x);
Poly poly_derivative(const Poly& p);

struct IsolatedRoot {
    Rat lo, hi;  // bracket containing the root; lo == hi for an exact rational hit
    int multiplicity = 1;
    Real value;  // refined to working precision
};

// All real roots of p with multiplicities, sorted ascending.  p must be
// real-rooted: the multiplicities must sum to the degree, anything less
// throws ValidationError.  Roots are located by Sturm-count bisection on
// the squarefree part (Yun factorization supplies multiplicities), with
// every sign decided in exact integer arithmetic, then polished by Newton
// steps inside the isolating bracket.
std::vector<IsolatedRoot> isolate_real_roots(const Poly& p);

}  // namespace occ
