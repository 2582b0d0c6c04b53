#include "core/kernels.hpp"

#include <cmath>
#include <string>

namespace ssops {

namespace {

double norm2(std::span<const double> x) {
    double r2 = 0.0;
    for (double c : x) r2 += c * c;
    return r2;
}

// coeff * (1 - |x|^2)^{-expo} on the unit ball
cplx ball_power(cplx coeff, cplx expo, double r2) {
    if (r2 >= 1.0) return 0.0;
    return coeff * std::exp(-expo * std::log1p(-r2));
}

std::string family_name(kernel_family f) {
    switch (f) {
        case kernel_family::standard: return "standard";
        case kernel_family::natural: return "natural";
        case kernel_family::flat: return "flat";
        case kernel_family::s_weighted: return "s_weighted";
        case kernel_family::bessel_potential: return "bessel_potential";
        case kernel_family::theta: return "theta";
    }
    return "?";
}

// standard multiplier index ((n+1)/(2n)) alpha - 1/2
cplx base_index(const alpha_params& p) {
    return (p.n + 1.0) / (2.0 * p.n) * p.alpha - 0.5;
}

}  // namespace

void kernel_spec::validate() const {
    if (params.n < 2) {
        throw domain_error("kernel_spec: dimension n must be >= 2");
    }
    if (s < 0.0) {
        throw domain_error("kernel_spec: smoothness weight s must be >= 0");
    }
    const double re_a = params.alpha.real();
    const double upper_flat = 2.0 * params.n / (params.n + 1.0);
    switch (family) {
        case kernel_family::natural:
            if (!(re_a > 0.0 && re_a < params.n)) {
                throw domain_error("kernel_spec: natural family requires 0 < Re alpha < n");
            }
            break;
        case kernel_family::flat:
            if (!(re_a > 0.0 && re_a < upper_flat)) {
                throw domain_error(
                    "kernel_spec: flat family requires 0 < Re alpha < 2n/(n+1)");
            }
            break;
        case kernel_family::theta: {
            const double rz = z.real();
            const bool endpoint = (z == cplx(0.0) || z == cplx(1.0));
            if (!endpoint && !(rz > 0.0 && rz < 1.0)) {
                throw domain_error("kernel_spec: theta requires 0 < Re z < 1 or z in {0,1}");
            }
            break;
        }
        default:
            break;
    }
}

void kernel_spec::validate_physical() const {
    validate();
    const cplx lam = params.lambda();
    switch (family) {
        case kernel_family::standard:
            if (!(lam.real() < 1.0)) {
                throw domain_error(
                    "kernel_spec: standard kernel has a non-integrable singularity for "
                    "Re lambda(alpha) >= 1; use the multiplier path");
            }
            break;
        case kernel_family::natural:
        case kernel_family::flat:
            break;  // validate() already pins the exponent into (0, 1)
        case kernel_family::s_weighted:
            if (!(lam.real() + s < 1.0)) {
                throw domain_error(
                    "kernel_spec: s-weighted kernel requires Re lambda(alpha) + s < 1; "
                    "use the multiplier path");
            }
            break;
        case kernel_family::bessel_potential:
        case kernel_family::theta:
            throw domain_error("kernel_spec: family " + family_name(family) +
                               " is defined by its Fourier transform only; use the "
                               "multiplier path");
    }
}

cplx kernel_value(const kernel_spec& spec, std::span<const double> x) {
    spec.validate_physical();
    if (static_cast<int>(x.size()) != spec.params.n) {
        throw domain_error("kernel_value: point dimension does not match spec");
    }
    const double r2 = norm2(x);
    if (r2 >= 1.0) return 0.0;
    const alpha_params& p = spec.params;
    switch (spec.family) {
        case kernel_family::standard: {
            const cplx lam = p.lambda();
            const cplx coeff = std::exp(-lam * std::log(kPi)) * gamma_reciprocal(1.0 - lam);
            return ball_power(coeff, lam, r2);
        }
        case kernel_family::natural:
            return ball_power(1.0, 1.0 - p.alpha / static_cast<double>(p.n), r2);
        case kernel_family::flat: {
            const cplx del = p.delta();
            const cplx coeff = std::exp(-del * std::log(kPi)) * gamma_reciprocal(1.0 - del);
            return ball_power(coeff, del, r2);
        }
        case kernel_family::s_weighted: {
            const cplx expo = p.lambda() + spec.s;
            const cplx coeff = std::exp(-expo * std::log(kPi)) * gamma_reciprocal(1.0 - expo);
            return ball_power(coeff, expo, r2);
        }
        default:
            break;  // unreachable: validate_physical() threw
    }
    return 0.0;
}

cplx radial_multiplier::operator()(double rho) const {
    if (rho < 0.0) {
        throw domain_error("radial_multiplier: rho must be >= 0");
    }
    if (kind_ == kind::potential) {
        return std::pow(1.0 + rho * rho, -s_ / 2.0);
    }
    // rho^{-index} J_index(2 pi rho) = (2 pi)^{index} nb(index, 2 pi rho)
    const cplx scale = std::exp(index_ * std::log(kTwoPi));
    return prefactor_ * scale *
           normalized_bessel({index_.real(), index_.imag()}, kTwoPi * rho);
}

radial_multiplier radial_multiplier::bessel_type(cplx index, cplx prefactor, double decay) {
    radial_multiplier m;
    m.kind_ = kind::bessel_profile;
    m.index_ = index;
    m.prefactor_ = prefactor;
    m.decay_exponent_ = decay;
    return m;
}

radial_multiplier radial_multiplier::potential_type(double s) {
    radial_multiplier m;
    m.kind_ = kind::potential;
    m.s_ = s;
    m.decay_exponent_ = s;
    return m;
}

radial_multiplier multiplier(const kernel_spec& spec) {
    spec.validate();
    const alpha_params& p = spec.params;
    const cplx base = base_index(p);
    switch (spec.family) {
        case kernel_family::standard:
            return radial_multiplier::bessel_type(base, 1.0, base.real() + 0.5);
        case kernel_family::natural: {
            // the unnormalized kernel carries pi^{1-alpha/n} Gamma(alpha/n)
            const cplx e = 1.0 - p.alpha / static_cast<double>(p.n);
            const cplx pref = std::exp(e * std::log(kPi)) *
                              gamma_complex(p.alpha / static_cast<double>(p.n));
            const cplx index = p.n / 2.0 - e;
            return radial_multiplier::bessel_type(index, pref, index.real() + 0.5);
        }
        case kernel_family::flat: {
            const cplx index = base + (p.n - 1.0) / 2.0;
            return radial_multiplier::bessel_type(index, 1.0, index.real() + 0.5);
        }
        case kernel_family::s_weighted: {
            const cplx index = base - spec.s;
            return radial_multiplier::bessel_type(index, 1.0, index.real() + 0.5);
        }
        case kernel_family::bessel_potential:
            return radial_multiplier::potential_type(spec.s);
        case kernel_family::theta: {
            const cplx index = base + (p.n - 1.0) / 2.0 * spec.z - spec.s * (1.0 - spec.z);
            return radial_multiplier::bessel_type(index, 1.0, index.real() + 0.5);
        }
    }
    throw domain_error("multiplier: unknown family");
}

theta_endpoint_report theta_endpoint_check(cplx alpha, double s, int n, int grid_points) {
    if (!(s > 0.0)) {
        throw domain_error("theta_endpoint_check: requires s > 0");
    }
    kernel_spec theta{kernel_family::theta, {alpha, n}, s, 0.0};
    theta.validate();
    kernel_spec flat{kernel_family::flat, {alpha, n}, 0.0, 0.0};
    kernel_spec sw{kernel_family::s_weighted, {alpha, n}, s, 0.0};
    kernel_spec std_spec{kernel_family::standard, {alpha, n}, 0.0, 0.0};

    theta_endpoint_report rep{};
    rep.z_star = 2.0 * s / (n - 1.0 + 2.0 * s);

    auto max_dev = [&](cplx z, const kernel_spec& other) {
        kernel_spec th = theta;
        th.z = z;
        const radial_multiplier a = multiplier(th);
        const radial_multiplier b = multiplier(other);
        double worst = 0.0;
        for (int i = 0; i <= grid_points; ++i) {
            // log-spaced in (1e-3, 50], plus the removable singularity at 0
            const double rho =
                i == 0 ? 0.0
                       : std::pow(10.0, -3.0 + (std::log10(50.0) + 3.0) * (i - 1.0) /
                                             (grid_points - 1.0));
            worst = std::max(worst, std::abs(a(rho) - b(rho)));
        }
        return worst;
    };

    rep.max_abs_z0_vs_sweighted = max_dev(0.0, sw);
    rep.max_abs_z1_vs_flat = max_dev(1.0, flat);
    rep.max_abs_zstar_vs_standard = max_dev(rep.z_star, std_spec);
    return rep;
}

namespace {

domination_report dominate(const kernel_spec& spec, double natural_alpha, int samples,
                           std::uint64_t seed, cplx analytic_expo) {
    kernel_spec nat{kernel_family::natural, {natural_alpha, spec.params.n}, 0.0, 0.0};
    rng gen(seed);
    const int n = spec.params.n;
    std::vector<double> x(n);
    double sup = 0.0;
    for (int i = 0; i < samples; ++i) {
        // uniform radius in (0,1), random direction
        const double r = gen.uniform(1e-12, 1.0);
        double norm = 0.0;
        for (int d = 0; d < n; ++d) {
            x[d] = gen.normal();
            norm += x[d] * x[d];
        }
        norm = std::sqrt(norm);
        for (int d = 0; d < n; ++d) x[d] *= r / norm;
        const double num = std::abs(kernel_value(spec, x));
        const double den = std::abs(kernel_value(nat, x));
        if (den > 0.0) sup = std::max(sup, num / den);
    }
    domination_report rep{};
    rep.sup_ratio = sup;
    rep.analytic_constant =
        std::abs(std::exp(-analytic_expo * std::log(kPi)) * gamma_reciprocal(1.0 - analytic_expo));
    for (int k = 0; k <= 8; ++k) {
        const double im = 0.5 * k;
        kernel_spec shifted = spec;
        shifted.params.alpha = cplx(spec.params.alpha.real(), im);
        cplx expo;
        switch (spec.family) {
            case kernel_family::flat: expo = shifted.params.delta(); break;
            default: expo = shifted.params.lambda(); break;
        }
        const double c =
            std::abs(std::exp(-expo * std::log(kPi)) * gamma_reciprocal(1.0 - expo));
        rep.im_growth.emplace_back(im, c);
    }
    return rep;
}

}  // namespace

domination_report domination_flat_vs_natural(cplx alpha, int n, int samples,
                                             std::uint64_t seed) {
    kernel_spec flat{kernel_family::flat, {alpha, n}, 0.0, 0.0};
    flat.validate_physical();
    const double beta = (n + 1.0) / 2.0 * alpha.real();
    return dominate(flat, beta, samples, seed, flat.params.delta());
}

domination_report domination_standard_vs_natural(cplx alpha, int n, int samples,
                                                 std::uint64_t seed) {
    kernel_spec std_spec{kernel_family::standard, {alpha, n}, 0.0, 0.0};
    std_spec.validate_physical();
    const double re_a = alpha.real();
    const double lower = (n - 1.0) / (n + 1.0) * n;
    if (!(re_a > lower && re_a < n)) {
        throw domain_error(
            "domination_standard_vs_natural: requires ((n-1)/(n+1)) n < Re alpha < n");
    }
    const double beta = (n + 1.0) / 2.0 * re_a - (n - 1.0) / 2.0 * n;
    return dominate(std_spec, beta, samples, seed, std_spec.params.lambda());
}

}  // namespace ssops
