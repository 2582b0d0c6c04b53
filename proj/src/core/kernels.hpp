#pragma once

#include <span>
#include <vector>

#include "core/common.hpp"
#include "core/specfun.hpp"

namespace ssops {

enum class kernel_family { standard, natural, flat, s_weighted, bessel_potential, theta };

// Order parameters shared by the kernel families. lambda and delta are always
// recomputed from (alpha, n); lambda(n) = 0 and lambda(0) = (n+1)/2 hold by
// construction.
struct alpha_params {
    cplx alpha;
    int n = 2;

    cplx lambda() const { return 0.5 * (n + 1.0) * (1.0 - alpha / static_cast<double>(n)); }
    cplx delta() const { return 1.0 - (n + 1.0) / (2.0 * n) * alpha; }
};

struct kernel_spec {
    kernel_family family = kernel_family::standard;
    alpha_params params;
    double s = 0.0;  // smoothness weight (s_weighted, bessel_potential, theta)
    cplx z = 0.0;    // interpolation variable (theta only)

    // Throws domain_error when the spec cannot be used at all (n < 2, bad s,
    // family-specific alpha/z ranges).
    void validate() const;
    // Additionally checks the physical-space evaluation conditions
    // (Re lambda < 1 etc.); bessel_potential and theta always fail here.
    void validate_physical() const;
};

// Closed-form kernel value at x; exactly 0 for |x| >= 1.
cplx kernel_value(const kernel_spec& spec, std::span<const double> x);

// Radial Fourier multiplier profile. For the Bessel-type families
// profile(rho) = rho^{-index} J_index(2 pi rho) (times a constant for the
// unnormalized natural kernel); for bessel_potential it is (1+rho^2)^{-s/2}.
class radial_multiplier {
  public:
    enum class kind { bessel_profile, potential };

    cplx operator()(double rho) const;
    double decay_exponent() const { return decay_exponent_; }
    kind profile_kind() const { return kind_; }
    cplx index() const { return index_; }

    static radial_multiplier bessel_type(cplx index, cplx prefactor, double decay);
    static radial_multiplier potential_type(double s);

  private:
    kind kind_ = kind::bessel_profile;
    cplx index_ = 0.0;
    cplx prefactor_ = 1.0;
    double s_ = 0.0;
    double decay_exponent_ = 0.0;
};

radial_multiplier multiplier(const kernel_spec& spec);

// Numerical verification of the analytic-family endpoint identities: the
// theta profile coincides with the s-weighted profile at z = 0, with the flat
// profile at z = 1 and with the standard profile at z = 2s/(n-1+2s)
// (the pairing the index formula forces).
struct theta_endpoint_report {
    double z_star;
    double max_abs_z0_vs_sweighted;
    double max_abs_z1_vs_flat;
    double max_abs_zstar_vs_standard;
};

theta_endpoint_report theta_endpoint_check(cplx alpha, double s, int n, int grid_points = 100);

// Empirical kernel domination: |flat^alpha| against the natural kernel of
// order ((n+1)/2) Re alpha, and |standard^alpha| against the natural kernel of
// order ((n+1)/2) Re alpha - ((n-1)/2) n. Both ratios are constant in x; the
// sampled supremum and the analytic constant are reported, plus the growth of
// the constant along Im alpha in [0, 4].
struct domination_report {
    double sup_ratio;
    double analytic_constant;
    std::vector<std::pair<double, double>> im_growth;  // (Im alpha, sup ratio)
};

domination_report domination_flat_vs_natural(cplx alpha, int n, int samples, std::uint64_t seed);
domination_report domination_standard_vs_natural(cplx alpha, int n, int samples, std::uint64_t seed);

}  // namespace ssops
