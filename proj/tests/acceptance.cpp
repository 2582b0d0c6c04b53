// Acceptance suite: one line per criterion, nonzero exit if any fail.
// Criteria A1-A10 pin the quantitative contracts of the toolkit: special
// functions, kernel/multiplier consistency, region algebra, the sphere
// geometry, the maximal-operator machinery, the wave solver, and the
// norm-ratio scans, each with its tolerance and a wall-clock budget.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "core/fields.hpp"
#include "core/kernels.hpp"
#include "core/maximal.hpp"
#include "core/regions.hpp"
#include "core/scan.hpp"
#include "core/specfun.hpp"
#include "core/wave.hpp"

using namespace ssops;

namespace {

struct BesselRef {
    double mu, nu, rho, re, im;
};
#include "data/bessel_reference.inc"

int g_failures = 0;

struct criterion {
    std::string id;
    double started;
    std::vector<std::string> notes;
    bool ok = true;

    explicit criterion(std::string name)
        : id(std::move(name)),
          started(std::chrono::duration<double>(
                      std::chrono::steady_clock::now().time_since_epoch())
                      .count()) {}

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            notes.push_back(what);
        }
    }

    double elapsed() const {
        return std::chrono::duration<double>(
                   std::chrono::steady_clock::now().time_since_epoch())
                   .count() -
               started;
    }

    void finish(double runtime_budget) {
        const double t = elapsed();
        if (t > runtime_budget) {
            ok = false;
            notes.push_back("runtime " + std::to_string(t) + " s over budget " +
                            std::to_string(runtime_budget) + " s");
        }
        std::printf("%-4s %s  (%.1f s)", id.c_str(), ok ? "PASS" : "FAIL", t);
        for (const auto& n : notes) std::printf("  [%s]", n.c_str());
        std::printf("\n");
        std::fflush(stdout);
        if (!ok) ++g_failures;
    }
};

double logspace(double lo, double hi, int i, int count) {
    return std::pow(10.0, std::log10(lo) + (std::log10(hi) - std::log10(lo)) * i / (count - 1.0));
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

// ---- A1: bessel against the fixed high-precision reference -----------------

void a1_bessel() {
    criterion c("A1");
    double worst = 0.0;
    for (const BesselRef& ref : kBesselReference) {
        const bessel_value got = bessel_j({ref.mu, ref.nu}, ref.rho);
        worst = std::max(worst, std::abs(got.value - cplx(ref.re, ref.im)));
    }
    c.require(worst <= 1e-9, "reference-table error " + fmt(worst));

    double worst_cf = 0.0;
    for (int twice_mu : {-1, 1, 3}) {
        for (int i = 0; i < 60; ++i) {
            const double rho = logspace(0.01, 100.0, i, 60);
            const cplx got = bessel_j({twice_mu / 2.0, 0.0}, rho).value;
            const cplx want = bessel_half_integer(twice_mu, rho).value;
            worst_cf = std::max(worst_cf, std::abs(got - want));
        }
    }
    c.require(worst_cf <= 1e-9, "closed-form error " + fmt(worst_cf));
    c.finish(10.0);
}

// ---- A2: kernel <-> multiplier consistency -----------------------------------

void a2_transform() {
    criterion c("A2");
    for (double alpha : {1.0, 1.2}) {
        const kernel_spec spec{kernel_family::standard, {alpha, 2}, 0.0, 0.0};
        const transform_check_report rep =
            transform_check(spec, grid_spec{2, 512, 2.0}, 32.0);
        c.require(rep.sup_rel <= 0.03,
                  "alpha " + fmt(alpha) + " sup-relative mismatch " + fmt(rep.sup_rel));
    }
    c.finish(30.0);
}

// ---- A3: multiplier envelope decay slope --------------------------------------

void a3_envelope() {
    criterion c("A3");
    const std::pair<int, double> cases[] = {{2, 1.0}, {3, 1.5}, {3, 2.0}};
    for (const auto& [n, alpha] : cases) {
        const radial_multiplier m =
            multiplier(kernel_spec{kernel_family::standard, {alpha, n}, 0.0, 0.0});
        std::vector<double> lr, lv;
        const double step = 0.02;
        double prev2 = std::abs(m(10.0)), prev1 = std::abs(m(10.0 + step));
        for (double rho = 10.0 + 2 * step; rho < 1e4; rho += step) {
            const double cur = std::abs(m(rho));
            if (prev1 > prev2 && prev1 >= cur) {
                lr.push_back(std::log(rho - step));
                lv.push_back(std::log(prev1));
            }
            prev2 = prev1;
            prev1 = cur;
        }
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < lr.size(); ++i) {
            sx += lr[i];
            sy += lv[i];
            sxx += lr[i] * lr[i];
            sxy += lr[i] * lv[i];
        }
        const double cnt = static_cast<double>(lr.size());
        const double slope = (sxy - sx * sy / cnt) / (sxx - sx * sx / cnt);
        const double want = -(n + 1.0) / (2.0 * n) * alpha;
        c.require(std::abs(slope - want) <= 0.05,
                  "(n, alpha) = (" + std::to_string(n) + ", " + fmt(alpha) + ") slope " +
                      fmt(slope) + " vs " + fmt(want));
    }
    c.finish(5.0);
}

// ---- A4: special values ---------------------------------------------------------

void a4_special_values() {
    criterion c("A4");
    {
        const radial_multiplier m =
            multiplier(kernel_spec{kernel_family::standard, {1.5, 3}, 0.0, 0.0});
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double rho = 0.02 + 0.37 * i;
            const double want = std::sin(kTwoPi * rho) / (kPi * rho);
            worst = std::max(worst, std::abs(m(rho) - cplx(want)));
        }
        c.require(worst <= 1e-9, "sinc profile error " + fmt(worst));
    }
    {
        const radial_multiplier m2 =
            multiplier(kernel_spec{kernel_family::standard, {2.0, 2}, 0.0, 0.0});
        const radial_multiplier m3 =
            multiplier(kernel_spec{kernel_family::standard, {3.0, 3}, 0.0, 0.0});
        c.require(std::abs(m2(0.0) - cplx(kPi)) <= 1e-6,
                  "disk volume " + fmt(std::abs(m2(0.0))));
        c.require(std::abs(m3(0.0) - cplx(4.0 * kPi / 3.0)) <= 1e-6,
                  "ball volume " + fmt(std::abs(m3(0.0))));
    }
    for (const auto& [alpha, s, n] :
         {std::tuple<double, double, int>{1.0, 0.5, 2}, {1.0, 1.0, 3}, {0.8, 0.25, 3}}) {
        const theta_endpoint_report rep = theta_endpoint_check(alpha, s, n);
        c.require(rep.max_abs_z0_vs_sweighted <= 1e-9 && rep.max_abs_z1_vs_flat <= 1e-9 &&
                      rep.max_abs_zstar_vs_standard <= 1e-9,
                  "theta endpoints at (alpha, s, n) = (" + fmt(alpha) + ", " + fmt(s) +
                      ", " + std::to_string(n) + ")");
    }
    c.finish(10.0);
}

// ---- A5: region algebra, exact ----------------------------------------------------

void a5_regions() {
    criterion c("A5");
    // theorem one at s = 1/2 reproduces the displayed bounds exactly
    for (int n : {2, 3}) {
        for (double tau : {0.25, 0.5, 0.75}) {
            const region_verdict v = theorem_one({n, 0.5, tau * n, 2.0, -1.0});
            const double lo_want = (n - 1.0) / (2.0 * n) + (n + 1.0) / (2.0 * n) * tau;
            const double hi_want = (n + 1.0) / (2.0 * n) + (n - 1.0) / (2.0 * n) * tau;
            c.require(v.binding.at(1).lo == lo_want && v.binding.at(1).hi == hi_want,
                      "s = 1/2 bounds mismatch at n " + std::to_string(n));
        }
    }
    // lemma two branch agreement at s = 1/2, exact
    for (double tau : {0.25, 0.5}) {
        const double eq_lo = (1.0 - 0.5) * tau, eq_hi = tau / 2.0;
        const double lo_lo = 0.5 + tau * (0.5 - 0.5);
        c.require(eq_lo == eq_hi && lo_lo == 0.5, "lemma-two branch mismatch");
    }
    // duality reflection on dyadic queries, exact verdict equality
    for (int n : {2, 3}) {
        for (double s : {0.25, 0.5, 1.0}) {
            for (double tau : {0.125, 0.25, 0.5}) {
                for (double invp : {0.5, 0.625, 0.75, 0.875}) {
                    const double invq = invp - tau;
                    if (invq <= 0.0 || invq >= 1.0) continue;
                    const region_verdict fwd =
                        theorem_one({n, s, tau * n, 1.0 / invp, 1.0 / invq});
                    const region_verdict rfl = theorem_one(
                        {n, s, tau * n, 1.0 / (1.0 - invq), 1.0 / (1.0 - invp)});
                    c.require(fwd.admissible == rfl.admissible,
                              "duality mismatch at invp " + fmt(invp));
                }
            }
        }
    }
    // corollary-one coefficients at alpha = 2n/(n+1), exact
    for (int n : {2, 3}) {
        const double tau = 2.0 / (n + 1.0);
        const double d = 2.0 * n - 2.0 + 4.0 * 0.5;
        const region_verdict v = theorem_one({n, 0.5, tau * n, 1.0 / 0.9, -1.0});
        c.require(v.binding.at(1).lo == (n - 1.0) / d + (2.0 + n - 1.0) / d * tau,
                  "corollary lower coefficient");
        c.require(v.binding.at(1).hi == (n - 1.0 + 2.0) / d + (n - 1.0) / d * tau,
                  "corollary upper coefficient");
    }
    c.finish(5.0);
}

// ---- A6: sphere geometry ------------------------------------------------------------

void a6_geometry() {
    criterion c("A6");
    for (int rho = 0; rho <= 6; ++rho) {
        const int v = shell_cone_inclusion_check(2, rho, 100000, 1000 + rho);
        c.require(v == 0, "n = 2 rho " + std::to_string(rho) + ": " + std::to_string(v) +
                              " violations");
    }
    for (int rho = 0; rho <= 4; ++rho) {
        const int v = shell_cone_inclusion_check(3, rho, 100000, 2000 + rho);
        c.require(v == 0, "n = 3 rho " + std::to_string(rho) + ": " + std::to_string(v) +
                              " violations");
    }
    for (int n : {2, 3}) {
        for (int rho = 0; rho <= 4; ++rho) {
            for (int ell = 0; ell <= rho; ++ell) {
                const cone_rectangle cr{n, rho, ell, {1.0, 0.0, 0.0}};
                const double want =
                    std::pow(5.0, n) * std::ldexp(1.0, -ell) * std::ldexp(1.0, -rho * (n - 1));
                c.require(cr.rect_measure() == want, "rectangle measure mismatch");
            }
        }
    }
    c.finish(60.0);
}

// ---- A7 + A8: Hedberg constants and maximal norm stability ---------------------------

void a7_a8_maximal() {
    criterion c7("A7");
    const grid_spec g{2, 512, 2.0};
    const double alpha = 1.0, p = 4.0 / 3.0, q = 4.0;
    const std::uint64_t seed = 2024;

    std::vector<sampled_field> members;
    std::vector<std::string> names{"gaussian", "ball"};
    members.push_back(make_family_member(family_kind::gaussian_dilates, 0.5, seed, 0, g));
    members.push_back(make_family_member(family_kind::ball_indicators, 0.5, seed, 0, g));
    for (int i = 0; i < 5; ++i) {
        members.push_back(make_family_member(family_kind::random_bumps, 0.5, seed, i, g));
        names.push_back("bump" + std::to_string(i));
    }

    double c_min = HUGE_VAL, c_max = 0.0;
    // per member and p: norm ratios indexed by rho
    std::vector<std::vector<std::vector<double>>> ratios(
        members.size(), std::vector<std::vector<double>>(3));
    const double p_list[3] = {4.0 / 3.0, 2.0, 4.0};

    for (int rho : {3, 4, 5}) {
        const sphere_grid sph = build_sphere_grid(2, rho);
        const auto maximal = averaged_maximal_batch(members, sph, 0);
        for (std::size_t mi = 0; mi < members.size(); ++mi) {
            const sampled_field integral = partial_operator(members[mi], alpha, rho);
            const double norm_p = lp_norm(members[mi], p);
            double m_max = 0.0;
            for (const auto& v : maximal[mi].values()) m_max = std::max(m_max, v.real());
            const double floor_val = 1e-12 * m_max;
            const double tail = std::pow(norm_p, 1.0 - p / q);
            double cc = 0.0;
            for (std::size_t i = 0; i < maximal[mi].size(); ++i) {
                const double m = maximal[mi][i].real();
                if (m <= floor_val) continue;
                cc = std::max(cc, integral[i].real() / (std::pow(m, p / q) * tail));
            }
            c_min = std::min(c_min, cc);
            c_max = std::max(c_max, cc);
            for (int pi = 0; pi < 3; ++pi) {
                ratios[mi][pi].push_back(lp_norm(maximal[mi], p_list[pi]) /
                                         lp_norm(members[mi], p_list[pi]));
            }
        }
    }
    c7.require(std::isfinite(c_max) && c_max > 0.0, "constants not finite");
    c7.require(c_max / c_min < 2.0,
               "constant spread " + fmt(c_max / c_min) + " (min " + fmt(c_min) + ", max " +
                   fmt(c_max) + ")");
    c7.finish(300.0);

    criterion c8("A8");
    for (std::size_t mi = 0; mi < members.size(); ++mi) {
        for (int pi = 0; pi < 3; ++pi) {
            const auto& row = ratios[mi][pi];
            const double lo = *std::min_element(row.begin(), row.end());
            const double hi = *std::max_element(row.begin(), row.end());
            c8.require(hi / lo < 2.0, names[mi] + " p " + fmt(p_list[pi]) +
                                          " across-rho spread " + fmt(hi / lo));
        }
    }
    c8.finish(300.0);
}

// ---- A9: wave solver --------------------------------------------------------------

void a9_wave() {
    criterion c("A9");
    // closed form at n = 2, 128^2, dt = t/256
    {
        const grid_spec g{2, 128, 4.0};
        const double t = 1.0, dt = t / 256.0;
        wave_forcing forcing;
        forcing.grid = g;
        forcing.dt = dt;
        const sampled_field spatial = field_from_function(g, [](std::span<const double> x) {
            return cplx(std::exp(-kPi * (x[0] * x[0] + x[1] * x[1]) / 0.25), 0.0);
        });
        forcing.frames.assign(257, spatial);
        const wave_solver solver(forcing);
        const sampled_field uhat = solver.solve_hat(t);
        const sampled_field ghat = forward_transform(spatial);
        double sup_err = 0.0, sup_ref = 0.0;
        const int n_ax = g.points_per_axis;
        std::size_t idx = 0;
        for (int a = 0; a < n_ax; ++a) {
            const double xa = g.freq_coord(a);
            for (int b = 0; b < n_ax; ++b, ++idx) {
                const double rho = std::hypot(xa, g.freq_coord(b));
                const cplx want = rho > 0.0
                                      ? ghat[idx] * (1.0 - std::cos(t * rho)) / (rho * rho)
                                      : ghat[idx] * t * t / 2.0;
                sup_err = std::max(sup_err, std::abs(uhat[idx] - want));
                sup_ref = std::max(sup_ref, std::abs(want));
            }
        }
        c.require(sup_err <= 1e-3 * sup_ref,
                  "closed-form relative error " + fmt(sup_err / sup_ref));

        // energy conservation after switch-off
        const wave_forcing bump = gaussian_bump_forcing(g, dt, 257, 0.5, 0.25);
        const wave_solver bsolver(bump);
        auto energy = [&](double tt) {
            const sampled_field up = bsolver.solve(tt + dt);
            const sampled_field um = bsolver.solve(tt - dt);
            sampled_field du(g);
            for (std::size_t i = 0; i < du.size(); ++i)
                du[i] = (up[i] - um[i]) / (2.0 * dt);
            const double kin = lp_norm(du, 2.0);
            const sampled_field hat = bsolver.solve_hat(tt);
            double grad_sq = 0.0;
            std::size_t k = 0;
            for (int a = 0; a < n_ax; ++a) {
                const double xa = g.freq_coord(a);
                for (int b = 0; b < n_ax; ++b, ++k) {
                    const double rho2 = xa * xa + g.freq_coord(b) * g.freq_coord(b);
                    grad_sq += rho2 * std::norm(hat[k]);
                }
            }
            grad_sq *= std::pow(1.0 / (2.0 * g.half_width), 2);
            return kin * kin + grad_sq;
        };
        const double e0 = energy(0.375);
        double drift = 0.0;
        for (double tt : {0.5, 0.625, 0.75, 0.875}) {
            drift = std::max(drift, std::abs(energy(tt) / e0 - 1.0));
        }
        c.require(drift <= 0.005, "energy drift " + fmt(drift));
    }
    // duhamel ratio, n = 3, stable under dt halving
    {
        const grid_spec g{3, 64, 2.0};
        const double t = 1.0, p = 4.0 / 3.0, q = 4.0, s = 0.5;
        const wave_forcing f1 = gaussian_bump_forcing(g, t / 128.0, 129, 0.5, 0.4);
        const double r1 = duhamel_estimate_check(f1, t, p, q, s);
        const wave_forcing f2 = gaussian_bump_forcing(g, t / 256.0, 257, 0.5, 0.4);
        const double r2 = duhamel_estimate_check(f2, t, p, q, s);
        c.require(std::isfinite(r1) && r1 > 0.0, "ratio not finite");
        c.require(r2 / r1 < 2.0 && r1 / r2 < 2.0,
                  "dt-halving instability " + fmt(r1) + " -> " + fmt(r2));
    }
    c.finish(120.0);
}

// ---- A10: inside-region scan stability ------------------------------------------------

void a10_scan() {
    criterion c("A10");
    const grid_spec g{3, 128, 2.0};
    const scan_params params{3, 1.5, 0.5, 4.0 / 3.0, 4.0, false};
    const std::vector<double> scales{1.0, 0.5, 0.25, 0.125, 0.0625};
    for (family_kind kind : {family_kind::gaussian_dilates, family_kind::knapp_caps}) {
        const test_family family{kind, scales, 7};
        const scan_report rep = run_scan(params, family, g, 0);
        const char* label =
            kind == family_kind::gaussian_dilates ? "gaussian_dilates" : "knapp_caps";
        c.require(std::isfinite(rep.max_ratio) && rep.max_ratio > 0.0,
                  std::string(label) + " ratios not finite");
        c.require(rep.max_ratio / rep.min_ratio < 2.0,
                  std::string(label) + " max/min " + fmt(rep.max_ratio / rep.min_ratio));
        c.require(std::abs(rep.trend_slope) <= 0.1,
                  std::string(label) + " |slope| " + fmt(std::abs(rep.trend_slope)));
    }
    c.finish(300.0);
}

}  // namespace

int main() {
    a1_bessel();
    a2_transform();
    a3_envelope();
    a4_special_values();
    a5_regions();
    a6_geometry();
    a7_a8_maximal();
    a9_wave();
    a10_scan();
    if (g_failures) {
        std::printf("%d criterion(s) failed\n", g_failures);
    } else {
        std::printf("all criteria passed\n");
    }
    return g_failures == 0 ? 0 : 1;
}
