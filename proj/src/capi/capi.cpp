#include "ssops/ssops.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "core/fields.hpp"
#include "core/kernels.hpp"
#include "core/maximal.hpp"
#include "core/regions.hpp"
#include "core/scan.hpp"
#include "core/specfun.hpp"
#include "core/wave.hpp"

namespace {

thread_local std::string g_last_error;

ssops_status fail(ssops_status code, const char* what) {
    g_last_error = what;
    return code;
}

// runs fn, translating core exceptions into status codes
template <typename Fn>
ssops_status guarded(Fn&& fn) {
    try {
        fn();
        return SSOPS_OK;
    } catch (const ssops::pole_error& e) {
        return fail(SSOPS_ERR_POLE, e.what());
    } catch (const ssops::accuracy_error& e) {
        return fail(SSOPS_ERR_ACCURACY, e.what());
    } catch (const ssops::resolution_error& e) {
        return fail(SSOPS_ERR_RESOLUTION, e.what());
    } catch (const ssops::domain_error& e) {
        return fail(SSOPS_ERR_DOMAIN, e.what());
    } catch (const ssops::io_error& e) {
        return fail(SSOPS_ERR_IO, e.what());
    } catch (const std::exception& e) {
        return fail(SSOPS_ERR_INVALID, e.what());
    }
}

ssops::kernel_spec to_spec(const ssops_kernel_spec& c) {
    ssops::kernel_spec spec;
    switch (c.family) {
        case SSOPS_KERNEL_STANDARD: spec.family = ssops::kernel_family::standard; break;
        case SSOPS_KERNEL_NATURAL: spec.family = ssops::kernel_family::natural; break;
        case SSOPS_KERNEL_FLAT: spec.family = ssops::kernel_family::flat; break;
        case SSOPS_KERNEL_S_WEIGHTED: spec.family = ssops::kernel_family::s_weighted; break;
        case SSOPS_KERNEL_BESSEL_POTENTIAL:
            spec.family = ssops::kernel_family::bessel_potential;
            break;
        case SSOPS_KERNEL_THETA: spec.family = ssops::kernel_family::theta; break;
        default: throw ssops::domain_error("unknown kernel family code");
    }
    spec.params.alpha = ssops::cplx(c.alpha_re, c.alpha_im);
    spec.params.n = c.n;
    spec.s = c.s;
    spec.z = ssops::cplx(c.z_re, c.z_im);
    return spec;
}

void write_cplx(ssops::cplx v, double* out_re, double* out_im) {
    if (out_re) *out_re = v.real();
    if (out_im) *out_im = v.imag();
}

}  // namespace

struct ssops_multiplier {
    ssops::radial_multiplier m;
};

struct ssops_field {
    ssops::sampled_field f;
};

struct ssops_report {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<std::string, double>> scalars;
};

extern "C" {

const char* ssops_last_error(void) { return g_last_error.c_str(); }

const char* ssops_version(void) { return "0.1.0"; }

int ssops_resolve_threads(int requested) { return ssops::resolve_thread_count(requested); }

/* ---- special functions -------------------------------------------------- */

ssops_status ssops_gamma(double re, double im, double* out_re, double* out_im) {
    return guarded([&] { write_cplx(ssops::gamma_complex({re, im}), out_re, out_im); });
}

ssops_status ssops_gamma_reciprocal(double re, double im, double* out_re, double* out_im) {
    return guarded([&] { write_cplx(ssops::gamma_reciprocal({re, im}), out_re, out_im); });
}

ssops_status ssops_bessel_j(double mu, double nu, double rho, ssops_bessel_result* out) {
    if (!out) return fail(SSOPS_ERR_INVALID, "null output pointer");
    return guarded([&] {
        const ssops::bessel_value v = ssops::bessel_j({mu, nu}, rho);
        out->re = v.value.real();
        out->im = v.value.imag();
        out->method = static_cast<int>(v.method);
        out->est_abs_error = v.est_abs_error;
    });
}

ssops_status ssops_normalized_bessel(double mu, double nu, double rho, double* out_re,
                                     double* out_im) {
    return guarded(
        [&] { write_cplx(ssops::normalized_bessel({mu, nu}, rho), out_re, out_im); });
}

ssops_status ssops_bessel_asymptotic(double mu, double nu, double rho, double* out_re,
                                     double* out_im) {
    return guarded(
        [&] { write_cplx(ssops::bessel_asymptotic({mu, nu}, rho), out_re, out_im); });
}

/* ---- kernels -------------------------------------------------------------- */

ssops_status ssops_kernel_value(const ssops_kernel_spec* spec, const double* x, int dim,
                                double* out_re, double* out_im) {
    if (!spec || !x) return fail(SSOPS_ERR_INVALID, "null pointer");
    return guarded([&] {
        const ssops::cplx v = ssops::kernel_value(
            to_spec(*spec), std::span<const double>(x, static_cast<std::size_t>(dim)));
        write_cplx(v, out_re, out_im);
    });
}

ssops_status ssops_multiplier_create(const ssops_kernel_spec* spec, ssops_multiplier** out) {
    if (!spec || !out) return fail(SSOPS_ERR_INVALID, "null pointer");
    return guarded([&] { *out = new ssops_multiplier{ssops::multiplier(to_spec(*spec))}; });
}

void ssops_multiplier_destroy(ssops_multiplier* m) { delete m; }

ssops_status ssops_multiplier_eval(const ssops_multiplier* m, double rho, double* out_re,
                                   double* out_im) {
    if (!m) return fail(SSOPS_ERR_INVALID, "null multiplier");
    return guarded([&] { write_cplx(m->m(rho), out_re, out_im); });
}

double ssops_multiplier_decay_exponent(const ssops_multiplier* m) {
    return m ? m->m.decay_exponent() : 0.0;
}

/* ---- fields ---------------------------------------------------------------- */

ssops_status ssops_field_create(int n, int points_per_axis, double half_width,
                                ssops_field** out) {
    if (!out) return fail(SSOPS_ERR_INVALID, "null output pointer");
    return guarded([&] {
        *out = new ssops_field{
            ssops::sampled_field(ssops::grid_spec{n, points_per_axis, half_width})};
    });
}

void ssops_field_destroy(ssops_field* f) { delete f; }

int ssops_field_dim(const ssops_field* f) { return f ? f->f.grid().n : 0; }

int ssops_field_points_per_axis(const ssops_field* f) {
    return f ? f->f.grid().points_per_axis : 0;
}

double ssops_field_half_width(const ssops_field* f) {
    return f ? f->f.grid().half_width : 0.0;
}

size_t ssops_field_count(const ssops_field* f) { return f ? f->f.size() : 0; }

ssops_status ssops_field_set_values(ssops_field* f, const double* interleaved,
                                    size_t count) {
    if (!f || !interleaved) return fail(SSOPS_ERR_INVALID, "null pointer");
    if (count != f->f.size()) return fail(SSOPS_ERR_INVALID, "value count mismatch");
    std::memcpy(f->f.values().data(), interleaved, count * sizeof(ssops::cplx));
    return SSOPS_OK;
}

ssops_status ssops_field_get_values(const ssops_field* f, double* interleaved,
                                    size_t count) {
    if (!f || !interleaved) return fail(SSOPS_ERR_INVALID, "null pointer");
    if (count != f->f.size()) return fail(SSOPS_ERR_INVALID, "value count mismatch");
    std::memcpy(interleaved, f->f.values().data(), count * sizeof(ssops::cplx));
    return SSOPS_OK;
}

ssops_status ssops_field_save(const ssops_field* f, const char* path) {
    if (!f || !path) return fail(SSOPS_ERR_INVALID, "null pointer");
    return guarded([&] { ssops::save_field(f->f, path); });
}

ssops_status ssops_field_load(const char* path, ssops_field** out) {
    if (!path || !out) return fail(SSOPS_ERR_INVALID, "null pointer");
    return guarded([&] { *out = new ssops_field{ssops::load_field(path)}; });
}

ssops_status ssops_field_lp_norm(const ssops_field* f, double p, double* out) {
    if (!f || !out) return fail(SSOPS_ERR_INVALID, "null pointer");
    return guarded([&] { *out = ssops::lp_norm(f->f, p); });
}

ssops_status ssops_field_apply_multiplier(const ssops_field* f, const ssops_multiplier* m,
                                          ssops_field** out) {
    if (!f || !m || !out) return fail(SSOPS_ERR_INVALID, "null pointer");
    return guarded([&] { *out = new ssops_field{ssops::apply_multiplier(f->f, m->m)}; });
}

ssops_status ssops_field_sobolev_lift(const ssops_field* f, double s, ssops_field** out) {
    if (!f || !out) return fail(SSOPS_ERR_INVALID, "null pointer");
    return guarded([&] { *out = new ssops_field{ssops::sobolev_lift(f->f, s)}; });
}

ssops_status ssops_field_sobolev_norm(const ssops_field* f, double p, double s,
                                      double* out) {
    if (!f || !out) return fail(SSOPS_ERR_INVALID, "null pointer");
    return guarded([&] { *out = ssops::sobolev_norm(f->f, p, s); });
}

/* ---- regions ---------------------------------------------------------------- */

ssops_status ssops_region_check(int predicate, int n, double s, double alpha, double p,
                                double q, ssops_region_verdict* out) {
    if (!out) return fail(SSOPS_ERR_INVALID, "null output pointer");
    return guarded([&] {
        ssops::region_predicate which;
        switch (predicate) {
            case SSOPS_REGION_THEOREM_ONE: which = ssops::region_predicate::theorem_one; break;
            case SSOPS_REGION_THEOREM_TWO: which = ssops::region_predicate::theorem_two; break;
            case SSOPS_REGION_REMARK_ONE: which = ssops::region_predicate::remark_one; break;
            case SSOPS_REGION_LEMMA_ONE: which = ssops::region_predicate::lemma_one; break;
            case SSOPS_REGION_LEMMA_TWO: which = ssops::region_predicate::lemma_two; break;
            default: throw ssops::domain_error("unknown region predicate code");
        }
        const ssops::region_verdict v =
            ssops::region_check(which, ssops::region_query{n, s, alpha, p, q});
        out->admissible = v.admissible ? 1 : 0;
        out->boundary = v.boundary ? 1 : 0;
        out->n_constraints = static_cast<int>(
            std::min<std::size_t>(v.binding.size(), std::size(out->constraints)));
        for (int i = 0; i < out->n_constraints; ++i) {
            const auto& c = v.binding[i];
            auto& oc = out->constraints[i];
            std::snprintf(oc.name, sizeof(oc.name), "%s", c.name.c_str());
            oc.lo = c.lo;
            oc.mid = c.mid;
            oc.hi = c.hi;
            oc.strict = c.strict ? 1 : 0;
            oc.satisfied = c.satisfied ? 1 : 0;
            oc.boundary = c.boundary ? 1 : 0;
        }
    });
}

/* ---- reports ----------------------------------------------------------------- */

void ssops_report_destroy(ssops_report* r) { delete r; }

int ssops_report_ncols(const ssops_report* r) {
    return r ? static_cast<int>(r->columns.size()) : 0;
}

const char* ssops_report_col_name(const ssops_report* r, int col) {
    if (!r || col < 0 || col >= static_cast<int>(r->columns.size())) return "";
    return r->columns[col].c_str();
}

long ssops_report_nrows(const ssops_report* r) {
    return r ? static_cast<long>(r->rows.size()) : 0;
}

double ssops_report_cell(const ssops_report* r, long row, int col) {
    if (!r || row < 0 || row >= static_cast<long>(r->rows.size())) return 0.0;
    const auto& rr = r->rows[row];
    if (col < 0 || col >= static_cast<int>(rr.size())) return 0.0;
    return rr[col];
}

int ssops_report_nscalars(const ssops_report* r) {
    return r ? static_cast<int>(r->scalars.size()) : 0;
}

const char* ssops_report_scalar_name(const ssops_report* r, int i) {
    if (!r || i < 0 || i >= static_cast<int>(r->scalars.size())) return "";
    return r->scalars[i].first.c_str();
}

double ssops_report_scalar(const ssops_report* r, int i) {
    if (!r || i < 0 || i >= static_cast<int>(r->scalars.size())) return 0.0;
    return r->scalars[i].second;
}

/* ---- runners ------------------------------------------------------------------ */

ssops_status ssops_run_region_polygon(int n, double s, int alpha_steps,
                                      ssops_report** out) {
    if (!out) return fail(SSOPS_ERR_INVALID, "null output pointer");
    return guarded([&] {
        const auto rows = ssops::region_polygon(n, s, alpha_steps);
        auto* rep = new ssops_report;
        rep->columns = {"alpha_over_n", "inv_p_lower", "inv_p_upper", "s", "n"};
        for (const auto& r : rows) {
            rep->rows.push_back(
                {r.alpha_over_n, r.inv_p_lower, r.inv_p_upper, s, static_cast<double>(n)});
        }
        *out = rep;
    });
}

ssops_status ssops_run_multiplier_profile(const ssops_kernel_spec* spec, double rho_min,
                                          double rho_max, int samples, int log_spaced,
                                          ssops_report** out) {
    if (!spec || !out) return fail(SSOPS_ERR_INVALID, "null pointer");
    return guarded([&] {
        if (samples < 2) throw ssops::domain_error("profile: need at least 2 samples");
        if (!(rho_min >= 0.0) || !(rho_max > rho_min)) {
            throw ssops::domain_error("profile: need 0 <= rho_min < rho_max");
        }
        if (log_spaced && rho_min <= 0.0) {
            throw ssops::domain_error("profile: log spacing requires rho_min > 0");
        }
        const ssops::radial_multiplier m = ssops::multiplier(to_spec(*spec));
        auto* rep = new ssops_report;
        rep->columns = {"rho", "re", "im", "abs"};
        for (int i = 0; i < samples; ++i) {
            const double t = static_cast<double>(i) / (samples - 1);
            const double rho = log_spaced
                                   ? rho_min * std::pow(rho_max / rho_min, t)
                                   : rho_min + (rho_max - rho_min) * t;
            const ssops::cplx v = m(rho);
            rep->rows.push_back({rho, v.real(), v.imag(), std::abs(v)});
        }
        rep->scalars.emplace_back("decay_exponent", m.decay_exponent());
        *out = rep;
    });
}

ssops_status ssops_run_theta_check(double alpha_re, double alpha_im, double s, int n,
                                   int grid_points, ssops_report** out) {
    if (!out) return fail(SSOPS_ERR_INVALID, "null output pointer");
    return guarded([&] {
        const ssops::theta_endpoint_report r =
            ssops::theta_endpoint_check({alpha_re, alpha_im}, s, n, grid_points);
        auto* rep = new ssops_report;
        rep->scalars = {{"z_star", r.z_star},
                        {"max_abs_z0_vs_sweighted", r.max_abs_z0_vs_sweighted},
                        {"max_abs_z1_vs_flat", r.max_abs_z1_vs_flat},
                        {"max_abs_zstar_vs_standard", r.max_abs_zstar_vs_standard}};
        *out = rep;
    });
}

ssops_status ssops_run_domination_check(double alpha_re, double alpha_im, int n,
                                        int samples, uint64_t seed, ssops_report** out) {
    if (!out) return fail(SSOPS_ERR_INVALID, "null output pointer");
    return guarded([&] {
        const ssops::cplx alpha(alpha_re, alpha_im);
        const double upper_flat = 2.0 * n / (n + 1.0);
        const double lower_std = (n - 1.0) / (n + 1.0) * n;
        const bool flat_ok = alpha_re > 0.0 && alpha_re < upper_flat;
        const bool std_ok = alpha_re > lower_std && alpha_re < static_cast<double>(n);
        if (!flat_ok && !std_ok) {
            throw ssops::domain_error(
                "domination: Re alpha outside both the flat and the standard ranges");
        }
        auto* rep = new ssops_report;
        rep->columns = {"im_alpha", "flat_constant", "standard_constant"};
        std::vector<std::vector<double>> growth;
        if (flat_ok) {
            const ssops::domination_report r =
                ssops::domination_flat_vs_natural(alpha, n, samples, seed);
            rep->scalars.emplace_back("flat_sup_ratio", r.sup_ratio);
            rep->scalars.emplace_back("flat_analytic_constant", r.analytic_constant);
            for (std::size_t i = 0; i < r.im_growth.size(); ++i) {
                growth.push_back({r.im_growth[i].first, r.im_growth[i].second, NAN});
            }
        }
        if (std_ok) {
            const ssops::domination_report r =
                ssops::domination_standard_vs_natural(alpha, n, samples, seed);
            rep->scalars.emplace_back("standard_sup_ratio", r.sup_ratio);
            rep->scalars.emplace_back("standard_analytic_constant", r.analytic_constant);
            for (std::size_t i = 0; i < r.im_growth.size(); ++i) {
                if (i < growth.size()) {
                    growth[i][2] = r.im_growth[i].second;
                } else {
                    growth.push_back({r.im_growth[i].first, NAN, r.im_growth[i].second});
                }
            }
        }
        rep->rows = std::move(growth);
        *out = rep;
    });
}

ssops_status ssops_run_transform_check(int n, double alpha_re, double alpha_im, int grid,
                                       double half_width, double max_freq,
                                       ssops_report** out) {
    if (!out) return fail(SSOPS_ERR_INVALID, "null output pointer");
    return guarded([&] {
        ssops::kernel_spec spec{
            ssops::kernel_family::standard, {{alpha_re, alpha_im}, n}, 0.0, 0.0};
        const ssops::transform_check_report r =
            ssops::transform_check(spec, ssops::grid_spec{n, grid, half_width}, max_freq);
        auto* rep = new ssops_report;
        rep->scalars = {{"sup_rel", r.sup_rel},
                        {"max_abs", r.max_abs},
                        {"envelope_rel", r.envelope_rel},
                        {"compared_modes", static_cast<double>(r.compared_modes)}};
        *out = rep;
    });
}

ssops_status ssops_run_scan(int n, double alpha, double s, double p, double q,
                            int family_kind, const double* scales, int n_scales,
                            uint64_t seed, int grid, double half_width,
                            int diagnostic_outside, int threads, ssops_report** out) {
    if (!out || !scales) return fail(SSOPS_ERR_INVALID, "null pointer");
    return guarded([&] {
        ssops::family_kind kind;
        switch (family_kind) {
            case SSOPS_FAMILY_GAUSSIAN_DILATES:
                kind = ssops::family_kind::gaussian_dilates;
                break;
            case SSOPS_FAMILY_BALL_INDICATORS:
                kind = ssops::family_kind::ball_indicators;
                break;
            case SSOPS_FAMILY_KNAPP_CAPS: kind = ssops::family_kind::knapp_caps; break;
            case SSOPS_FAMILY_RANDOM_BUMPS: kind = ssops::family_kind::random_bumps; break;
            default: throw ssops::domain_error("unknown family kind code");
        }
        ssops::test_family family{kind,
                                  std::vector<double>(scales, scales + n_scales), seed};
        const ssops::scan_params params{n, alpha, s, p, q, diagnostic_outside != 0};
        const ssops::scan_report r =
            ssops::run_scan(params, family, ssops::grid_spec{n, grid, half_width}, threads);
        auto* rep = new ssops_report;
        rep->columns = {"scale", "norm_q", "norm_ps", "ratio"};
        for (const auto& row : r.rows) {
            rep->rows.push_back({row.scale, row.norm_q, row.norm_ps, row.ratio});
        }
        rep->scalars = {{"max_ratio", r.max_ratio},
                        {"min_ratio", r.min_ratio},
                        {"trend_slope", r.trend_slope}};
        *out = rep;
    });
}

ssops_status ssops_run_inclusion_check(int n, int rho, int samples, uint64_t seed,
                                       ssops_report** out) {
    if (!out) return fail(SSOPS_ERR_INVALID, "null output pointer");
    return guarded([&] {
        auto* rep = new ssops_report;
        rep->columns = {"rho", "violations", "directions", "covering_radius"};
        long total = 0;
        for (int r = 0; r <= rho; ++r) {
            const ssops::sphere_grid g = ssops::build_sphere_grid(n, r);
            const int v = ssops::shell_cone_inclusion_check(n, r, samples, seed + r);
            total += v;
            rep->rows.push_back({static_cast<double>(r), static_cast<double>(v),
                                 static_cast<double>(g.directions.size()),
                                 g.covering_radius});
        }
        rep->scalars.emplace_back("total_violations", static_cast<double>(total));
        *out = rep;
    });
}

ssops_status ssops_run_hedberg(int n, double alpha, double p, double q, const int* rhos,
                               int n_rhos, uint64_t seed, int grid, double half_width,
                               int threads, ssops_report** out) {
    if (!out || !rhos) return fail(SSOPS_ERR_INVALID, "null pointer");
    return guarded([&] {
        if (!(p > 1.0 && q > p)) throw ssops::domain_error("hedberg: requires 1 < p < q");
        if (std::abs(alpha / n - (1.0 / p - 1.0 / q)) > 1e-12) {
            throw ssops::domain_error("hedberg: requires alpha/n = 1/p - 1/q");
        }
        const ssops::grid_spec g{n, grid, half_width};
        std::vector<ssops::sampled_field> members;
        members.push_back(ssops::make_family_member(ssops::family_kind::gaussian_dilates,
                                                    0.5, seed, 0, g));
        members.push_back(ssops::make_family_member(ssops::family_kind::ball_indicators,
                                                    0.5, seed, 0, g));
        for (int i = 0; i < 5; ++i) {
            members.push_back(ssops::make_family_member(ssops::family_kind::random_bumps,
                                                        0.5, seed, i, g));
        }

        auto* rep = new ssops_report;
        rep->columns = {"member", "rho", "hedberg_constant", "mnorm_p43", "mnorm_p2",
                        "mnorm_p4"};
        double c_min = HUGE_VAL, c_max = 0.0;
        for (int ri = 0; ri < n_rhos; ++ri) {
            const int rho = rhos[ri];
            const ssops::sphere_grid sph = ssops::build_sphere_grid(n, rho);
            const auto maximal = ssops::averaged_maximal_batch(members, sph, threads);
            for (std::size_t mi = 0; mi < members.size(); ++mi) {
                const ssops::sampled_field& f = members[mi];
                const ssops::sampled_field& mf = maximal[mi];
                const ssops::sampled_field integral =
                    ssops::partial_operator(f, alpha, rho);
                const double norm_p = ssops::lp_norm(f, p);
                double m_max = 0.0;
                for (const auto& v : mf.values()) m_max = std::max(m_max, v.real());
                const double floor_val = 1e-12 * m_max;
                const double tail = std::pow(norm_p, 1.0 - p / q);
                double c = 0.0;
                for (std::size_t i = 0; i < mf.size(); ++i) {
                    const double m = mf[i].real();
                    if (m <= floor_val) continue;
                    c = std::max(c, integral[i].real() / (std::pow(m, p / q) * tail));
                }
                c_min = std::min(c_min, c);
                c_max = std::max(c_max, c);
                std::vector<double> row{static_cast<double>(mi), static_cast<double>(rho),
                                        c};
                for (double pp : {4.0 / 3.0, 2.0, 4.0}) {
                    row.push_back(ssops::lp_norm(mf, pp) / ssops::lp_norm(f, pp));
                }
                rep->rows.push_back(std::move(row));
            }
        }
        rep->scalars.emplace_back("hedberg_max_over_min",
                                  c_min > 0.0 ? c_max / c_min : HUGE_VAL);
        *out = rep;
    });
}

ssops_status ssops_run_wave_check(int n, int grid, double half_width, double t, int steps,
                                  double p, double q, double s, ssops_report** out) {
    if (!out) return fail(SSOPS_ERR_INVALID, "null output pointer");
    return guarded([&] {
        const ssops::grid_spec g{n, grid, half_width};
        const double dt = t / steps;

        // closed form for time-independent forcing
        double closed_rel;
        {
            ssops::wave_forcing forcing;
            forcing.grid = g;
            forcing.dt = dt;
            const ssops::sampled_field spatial =
                ssops::field_from_function(g, [&](std::span<const double> x) {
                    double r2 = 0.0;
                    for (double c : x) r2 += c * c;
                    return ssops::cplx(std::exp(-ssops::kPi * r2 / 0.25), 0.0);
                });
            forcing.frames.assign(steps + 1, spatial);
            const ssops::wave_solver solver(forcing);
            const ssops::sampled_field uhat = solver.solve_hat(t);
            const ssops::sampled_field ghat = ssops::forward_transform(spatial);
            double sup_err = 0.0, sup_ref = 0.0;
            std::size_t idx = 0;
            const int n_ax = g.points_per_axis;
            auto visit = [&](double rho) {
                const ssops::cplx want =
                    rho > 0.0 ? ghat[idx] * (1.0 - std::cos(t * rho)) / (rho * rho)
                              : ghat[idx] * t * t / 2.0;
                sup_err = std::max(sup_err, std::abs(uhat[idx] - want));
                sup_ref = std::max(sup_ref, std::abs(want));
                ++idx;
            };
            if (n == 2) {
                for (int a = 0; a < n_ax; ++a)
                    for (int b = 0; b < n_ax; ++b)
                        visit(std::hypot(g.freq_coord(a), g.freq_coord(b)));
            } else {
                for (int a = 0; a < n_ax; ++a)
                    for (int b = 0; b < n_ax; ++b)
                        for (int c = 0; c < n_ax; ++c)
                            visit(std::hypot(g.freq_coord(a), g.freq_coord(b),
                                             g.freq_coord(c)));
            }
            closed_rel = sup_err / sup_ref;
        }

        // energy drift after switch-off, and the Duhamel ratio
        const ssops::wave_forcing bump =
            ssops::gaussian_bump_forcing(g, dt, steps + 1, 0.5, t / 4.0);
        const ssops::wave_solver solver(bump);
        auto energy = [&](double tt) {
            const ssops::sampled_field up = solver.solve(tt + dt);
            const ssops::sampled_field um = solver.solve(tt - dt);
            ssops::sampled_field du(g);
            for (std::size_t i = 0; i < du.size(); ++i)
                du[i] = (up[i] - um[i]) / (2.0 * dt);
            const double kin = ssops::lp_norm(du, 2.0);
            const ssops::sampled_field uhat = solver.solve_hat(tt);
            double grad_sq = 0.0;
            std::size_t idx = 0;
            const int n_ax = g.points_per_axis;
            auto visit = [&](double rho) {
                grad_sq += rho * rho * std::norm(uhat[idx]);
                ++idx;
            };
            if (n == 2) {
                for (int a = 0; a < n_ax; ++a)
                    for (int b = 0; b < n_ax; ++b)
                        visit(std::hypot(g.freq_coord(a), g.freq_coord(b)));
            } else {
                for (int a = 0; a < n_ax; ++a)
                    for (int b = 0; b < n_ax; ++b)
                        for (int c = 0; c < n_ax; ++c)
                            visit(std::hypot(g.freq_coord(a), g.freq_coord(b),
                                             g.freq_coord(c)));
            }
            grad_sq *= std::pow(1.0 / (2.0 * g.half_width), g.n);
            return kin * kin + grad_sq;
        };
        // probe on lattice times strictly after switch-off
        const double t0 = t / 4.0;
        const double probe_base = std::ceil((t0 * 1.5) / dt) * dt;
        const double e0 = energy(probe_base);
        double drift = 0.0;
        for (int k = 1; k <= 4; ++k) {
            const double tt = probe_base + std::round((t - dt - probe_base) / dt * k / 4.0) * dt;
            drift = std::max(drift, std::abs(energy(tt) / e0 - 1.0));
        }

        const double ratio = ssops::duhamel_estimate_check(bump, t, p, q, s);

        auto* rep = new ssops_report;
        rep->scalars = {{"closed_form_rel_err", closed_rel},
                        {"energy_drift", drift},
                        {"duhamel_ratio", ratio}};
        *out = rep;
    });
}

ssops_status ssops_wave_solve_file(const char* manifest_path, double t,
                                   const char* out_path) {
    if (!manifest_path || !out_path) return fail(SSOPS_ERR_INVALID, "null pointer");
    return guarded([&] {
        const ssops::wave_forcing forcing = ssops::load_forcing(manifest_path);
        ssops::save_field(ssops::solve_wave(forcing, t), out_path);
    });
}

} /* extern "C" */
