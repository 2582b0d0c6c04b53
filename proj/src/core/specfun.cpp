#include "core/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

namespace ssops {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kLogSqrt2Pi = 0.91893853320467274178;

// Lanczos coefficients (Godfrey), g = 607/128.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

bool is_nonpositive_integer(cplx z) {
    if (z.imag() != 0.0) return false;
    const double r = z.real();
    return r <= 0.0 && r == std::floor(r);
}

// log(sin(pi z)), switching to the single-exponential form when e^{|Im pi z|}
// would overflow.
cplx log_sin_pi(cplx z) {
    const cplx w = kPi * z;
    if (std::abs(w.imag()) > 30.0) {
        const double sgn = w.imag() > 0 ? 1.0 : -1.0;
        // sin w ~ (i/2) e^{-i w} for Im w -> +inf, (1/(2i)) e^{i w} otherwise
        return -std::log(2.0) + cplx(0.0, sgn * kPi / 2.0) - cplx(0.0, sgn) * w;
    }
    return std::log(std::sin(w));
}

cplx lgamma_right_half(cplx z) {
    const cplx zm = z - 1.0;
    cplx s = kLanczos[0];
    for (int k = 1; k < 15; ++k) s += kLanczos[k] / (zm + static_cast<double>(k));
    const cplx t = zm + kLanczosG + 0.5;
    return kLogSqrt2Pi + (zm + 0.5) * std::log(t) - t + std::log(s);
}

// --- Gauss-Legendre rules, computed once by Newton iteration ---------------

struct gauss_rule {
    std::vector<double> x, w;
};

gauss_rule make_gauss(int n) {
    gauss_rule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.x[i] = -x;
        r.x[n - 1 - i] = x;
        r.w[i] = r.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
    return r;
}

const gauss_rule& gauss16() { static const gauss_rule r = make_gauss(16); return r; }
const gauss_rule& gauss32() { static const gauss_rule r = make_gauss(32); return r; }
const gauss_rule& gauss48() { static const gauss_rule r = make_gauss(48); return r; }

// --- Quadrature of the integral representation ------------------------------
//
// After s = sin(phi) the representation reads
//   J_w(rho) = P * I,  P = (rho/2)^w / (sqrt(pi) Gamma(w + 1/2)),
//   I = 2 Int_0^{pi/2} cos(rho sin phi) cos^{2w}(phi) dphi.
// Interior panels resolve the rho-oscillation; the endpoint panel at
// phi = pi/2 is split geometrically down to a stub that is integrated from
// the series of cos(rho cos t) (sin t)^{2w} around t = 0, where the factor
// t^{2w} integrates in closed form.

struct quad_result {
    cplx integral;
    double abs_sum;  // sum of |panel| contributions, for the roundoff model
};

quad_result integrate_I(cplx w, double rho, const gauss_rule& rule, int panel_scale) {
    const int m0 = static_cast<int>(std::ceil(std::max(8.0, 2.0 * rho / kPi))) * panel_scale;
    const int mhalf = std::max(4, (m0 + 1) / 2);
    const double hpan = (kPi / 2.0) / mhalf;

    cplx total = 0.0;
    double abs_sum = 0.0;
    auto add_panel = [&](cplx v) {
        total += v;
        abs_sum += std::abs(v);
    };

    // integrand in phi on [0, pi/2 - hpan]
    auto g_phi = [&](double phi) -> cplx {
        const double c = std::cos(phi);
        return std::cos(rho * std::sin(phi)) * std::exp(2.0 * w * std::log(c));
    };
    for (int j = 0; j + 1 < mhalf; ++j) {
        const double a = j * hpan, b = (j + 1) * hpan;
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        cplx acc = 0.0;
        for (std::size_t i = 0; i < rule.x.size(); ++i)
            acc += rule.w[i] * g_phi(mid + half * rule.x[i]);
        add_panel(half * acc);
    }

    // endpoint panel in t = pi/2 - phi
    auto g_t = [&](double t) -> cplx {
        return std::cos(rho * std::cos(t)) * std::exp(2.0 * w * std::log(std::sin(t)));
    };
    const double scale = std::abs(w) + rho + 1.0;
    const double eps_stub = std::min(hpan, std::sqrt(1e-4 / scale));
    double t_hi = hpan;
    while (t_hi > eps_stub * 1.0000001) {
        const double t_lo = std::max(eps_stub, 0.5 * t_hi);
        const double mid = 0.5 * (t_lo + t_hi), half = 0.5 * (t_hi - t_lo);
        cplx acc = 0.0;
        for (std::size_t i = 0; i < rule.x.size(); ++i)
            acc += rule.w[i] * g_t(mid + half * rule.x[i]);
        add_panel(half * acc);
        t_hi = t_lo;
    }

    // stub [0, eps]: cos(rho cos t) (sin t)^{2w} = t^{2w} (c0 + c2 t^2 + c4 t^4 + ...)
    const double cr = std::cos(rho), sr = std::sin(rho);
    const double a2 = sr * rho / 2.0;
    const double a4 = -cr * rho * rho / 8.0 - sr * rho / 24.0;
    const cplx b2 = -2.0 * w / 6.0;
    const cplx b4 = -2.0 * w / 180.0 + b2 * b2 / 2.0;
    const cplx c0 = cr;
    const cplx c2 = a2 + cr * b2;
    const cplx c4 = a4 + a2 * b2 + cr * b4;
    const cplx e = 2.0 * w + 1.0;
    auto pow_eps = [&](cplx expo) { return std::exp(expo * std::log(eps_stub)); };
    const cplx stub = c0 * pow_eps(e) / e + c2 * pow_eps(e + 2.0) / (e + 2.0) +
                      c4 * pow_eps(e + 4.0) / (e + 4.0);
    add_panel(stub);

    return {2.0 * total, 2.0 * abs_sum};
}

bessel_value bessel_quadrature(cplx w, double rho) {
    const cplx log_pref =
        w * std::log(rho / 2.0) - 0.5 * std::log(kPi) - lgamma_complex(w + 0.5);
    const cplx pref = std::exp(log_pref);
    const double apref = std::abs(pref);

    bessel_value best{};
    best.method = bessel_method::quadrature;
    best.est_abs_error = std::numeric_limits<double>::infinity();
    // one refinement ladder step: (GL16 vs GL32), then (GL32 vs GL48, 2x panels)
    const struct {
        const gauss_rule *lo, *hi;
        int panel_scale;
    } ladder[] = {{&gauss16(), &gauss32(), 1}, {&gauss32(), &gauss48(), 2}};
    for (const auto& step : ladder) {
        const quad_result coarse = integrate_I(w, rho, *step.lo, step.panel_scale);
        const quad_result fine = integrate_I(w, rho, *step.hi, step.panel_scale);
        const cplx value = pref * fine.integral;
        const double est = apref * std::abs(fine.integral - coarse.integral) +
                           50.0 * kEps * apref * fine.abs_sum;
        if (est < best.est_abs_error) {
            best.value = value;
            best.est_abs_error = est;
        }
        if (best.est_abs_error <= 1e-10 * std::max(1.0, std::abs(best.value))) break;
    }
    return best;
}

// Large-argument (Hankel) series. Returns nullopt-style flag via est < 0 when
// the series does not reach tolerance before its terms start growing.
bool bessel_hankel(cplx w, double rho, bessel_value& out) {
    const cplx z2 = 4.0 * w * w;
    cplx p_sum = 1.0, q_sum = 0.0, ak = 1.0;
    double best = std::numeric_limits<double>::infinity();
    const double tol = 1e-13;
    for (int k = 1; k <= 60; ++k) {
        const double odd = 2.0 * k - 1.0;
        ak *= (z2 - odd * odd) / (8.0 * k * rho);
        const double mag = std::abs(ak);
        const int phase = (k % 4);
        // (-1)^{k/2} on even k into P, (-1)^{(k-1)/2} on odd k into Q
        if (k % 2 == 1) {
            q_sum += (phase == 1 ? ak : -ak);
        } else {
            p_sum += (phase == 2 ? -ak : ak);
        }
        if (mag < best) best = mag; else break;
        if (mag < tol) break;
    }
    if (best > 10.0 * tol) return false;
    const cplx chi = rho - (kPi / 2.0) * w - kPi / 4.0;
    const cplx amp = std::sqrt(cplx(2.0 / (kPi * rho)));
    out.value = amp * (std::cos(chi) * p_sum - std::sin(chi) * q_sum);
    out.method = bessel_method::asymptotic;
    out.est_abs_error =
        2.0 * best * std::abs(amp) * std::exp(std::abs(w.imag()) * kPi / 2.0);
    return true;
}

bessel_value bessel_mu_above_half(bessel_order order, double rho) {
    const cplx w(order.mu, order.nu);
    if (rho >= 25.0) {
        bessel_value h{};
        if (bessel_hankel(w, rho, h)) return h;
    }
    return bessel_quadrature(w, rho);
}

void check_accuracy(const bessel_value& v, bessel_order order, double rho) {
    const double gate = 1e-9 * std::max(1.0, std::abs(v.value));
    if (!(v.est_abs_error <= gate) || !std::isfinite(std::abs(v.value))) {
        throw accuracy_error("bessel_j: requested accuracy unreachable at order (" +
                                 std::to_string(order.mu) + ", " + std::to_string(order.nu) +
                                 "), rho = " + std::to_string(rho),
                             v.est_abs_error);
    }
}

}  // namespace

cplx lgamma_complex(cplx z) {
    if (z.real() < 0.5) {
        return std::log(kPi) - log_sin_pi(z) - lgamma_right_half(1.0 - z);
    }
    return lgamma_right_half(z);
}

cplx gamma_complex(cplx z) {
    if (is_nonpositive_integer(z)) {
        throw pole_error("gamma_complex: pole at z = " + std::to_string(z.real()));
    }
    return std::exp(lgamma_complex(z));
}

cplx gamma_reciprocal(cplx z) {
    if (is_nonpositive_integer(z)) return 0.0;
    return std::exp(-lgamma_complex(z));
}

bessel_value bessel_j(bessel_order order, double rho) {
    if (!(rho > 0.0)) {
        throw domain_error("bessel_j: requires rho > 0, got " + std::to_string(rho));
    }
    if (order.mu > -0.5) {
        bessel_value v = bessel_mu_above_half(order, rho);
        check_accuracy(v, order, rho);
        return v;
    }

    // negative integer real order: J_{-m} = (-1)^m J_m
    if (order.nu == 0.0 && order.mu == std::floor(order.mu)) {
        const double m = -order.mu;
        bessel_value v = bessel_mu_above_half({m, 0.0}, rho);
        if (static_cast<long long>(m) % 2 != 0) v.value = -v.value;
        v.method = bessel_method::recurrence;
        check_accuracy(v, order, rho);
        return v;
    }

    // downward three-term recurrence from seed orders in (-1/2, 3/2]
    const int k_shift = static_cast<int>(std::floor(1.5 - order.mu));
    const bessel_value seed_hi = bessel_mu_above_half({order.mu + k_shift, order.nu}, rho);
    const bessel_value seed_lo =
        bessel_mu_above_half({order.mu + k_shift - 1, order.nu}, rho);
    cplx j_up = seed_hi.value;   // J_{v+1}
    cplx j_cur = seed_lo.value;  // J_v
    double e_up = seed_hi.est_abs_error, e_cur = seed_lo.est_abs_error;
    cplx v_ord(order.mu + k_shift - 1, order.nu);
    for (int step = 0; step < k_shift - 1; ++step) {
        const cplx coef = 2.0 * v_ord / rho;
        const cplx j_dn = coef * j_cur - j_up;
        const double e_dn = std::abs(coef) * e_cur + e_up + kEps * std::abs(j_dn);
        j_up = j_cur;
        j_cur = j_dn;
        e_up = e_cur;
        e_cur = e_dn;
        v_ord -= 1.0;
    }
    bessel_value v{j_cur, bessel_method::recurrence, e_cur};
    check_accuracy(v, order, rho);
    return v;
}

cplx normalized_bessel(bessel_order order, double rho) {
    if (rho < 0.0) {
        throw domain_error("normalized_bessel: requires rho >= 0");
    }
    const cplx w(order.mu, order.nu);
    if (rho == 0.0) {
        return std::exp(-w * std::log(2.0)) * gamma_reciprocal(w + 1.0);
    }
    return std::exp(-w * std::log(rho)) * bessel_j(order, rho).value;
}

cplx bessel_asymptotic(bessel_order order, double rho) {
    if (!(order.mu > -0.5)) {
        throw domain_error("bessel_asymptotic: requires mu > -1/2");
    }
    if (!(rho > 0.0)) {
        throw domain_error("bessel_asymptotic: requires rho > 0");
    }
    const cplx w(order.mu, order.nu);
    const cplx chi = rho - (kPi / 2.0) * w - kPi / 4.0;
    return std::sqrt(cplx(2.0 / (kPi * rho))) * std::cos(chi);
}

bessel_value bessel_half_integer(int twice_mu, double rho) {
    if (!(rho > 0.0)) {
        throw domain_error("bessel_half_integer: requires rho > 0");
    }
    const double amp = std::sqrt(2.0 / (kPi * rho));
    double v;
    switch (twice_mu) {
        case -1: v = amp * std::cos(rho); break;
        case 1: v = amp * std::sin(rho); break;
        case 3: v = amp * (std::sin(rho) / rho - std::cos(rho)); break;
        default:
            throw domain_error("bessel_half_integer: twice_mu must be -1, 1 or 3");
    }
    return {cplx(v, 0.0), bessel_method::closed_form, 8.0 * kEps * std::abs(v)};
}

}  // namespace ssops
