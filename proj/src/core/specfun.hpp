#pragma once

#include "core/common.hpp"

namespace ssops {

// Order mu + i*nu of a Bessel function of the first kind.
struct bessel_order {
    double mu = 0.0;
    double nu = 0.0;
};

enum class bessel_method { quadrature, recurrence, closed_form, asymptotic };

struct bessel_value {
    cplx value;
    bessel_method method;
    double est_abs_error;
};

// log Gamma(z), Lanczos (g = 607/128, 15 terms) with reflection for
// Re z < 1/2. Relative accuracy of exp(lgamma) is ~1e-13 on |z| <= 50.
// The imaginary part is not reduced to a principal branch; callers only
// exponentiate it.
cplx lgamma_complex(cplx z);

// Gamma(z). Throws pole_error at z = 0, -1, -2, ...
cplx gamma_complex(cplx z);

// 1/Gamma(z), entire; returns 0 at the poles of Gamma.
cplx gamma_reciprocal(cplx z);

// J_{mu+i nu}(rho) for rho > 0. Orders with mu > -1/2 use the oscillation-
// resolving panel quadrature of the cosine integral representation, or the
// large-argument asymptotic series once it converges below tolerance; orders
// with mu <= -1/2 come from the three-term recurrence run in decreasing order
// from two seed orders with real part in (-1/2, 3/2]. Throws domain_error for
// rho <= 0 and accuracy_error (carrying the achieved bound) when the error
// estimate exceeds 1e-9 * max(1, |J|).
bessel_value bessel_j(bessel_order order, double rho);

// rho^{-(mu+i nu)} J_{mu+i nu}(rho) for rho >= 0; the removable singularity
// at rho = 0 evaluates to 2^{-w}/Gamma(w+1).
cplx normalized_bessel(bessel_order order, double rho);

// Leading asymptotic term sqrt(2/(pi rho)) cos(rho - pi w/2 - pi/4),
// for mu > -1/2, rho > 0.
cplx bessel_asymptotic(bessel_order order, double rho);

// Elementary closed forms for twice_mu in {-1, 1, 3} (real order). These are
// comparators for the quadrature path, so bessel_j never dispatches to them.
bessel_value bessel_half_integer(int twice_mu, double rho);

}  // namespace ssops
