#include "core/scan.hpp"

#include <algorithm>
#include <cmath>

#include "core/regions.hpp"

namespace ssops {

namespace {

double feature_size(family_kind kind, double scale) {
    switch (kind) {
        case family_kind::gaussian_dilates: return 4.0 * scale;  // +-2 sigma extent
        case family_kind::ball_indicators: return 2.0 * scale;   // diameter
        case family_kind::knapp_caps: return std::sqrt(scale);   // transverse tube width
        case family_kind::random_bumps: return 2.0 * scale;      // smallest bump extent
    }
    return scale;
}

sampled_field make_knapp_cap(double scale, const grid_spec& g) {
    // frequency cap around |xi| = 1/scale along the diagonal
    const double center = 1.0 / scale;
    const double radial_w = scale / 2.0;
    const double angular_w = std::sqrt(scale) / 2.0;
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(g.n));

    sampled_field fhat(g);
    const int n_ax = g.points_per_axis;
    std::size_t idx = 0;
    auto cap = [&](double x0, double x1, double x2) {
        const double rho = std::hypot(x0, x1, x2);
        if (rho == 0.0) return 0.0;
        const double cosang =
            std::clamp((x0 + x1 + x2) * inv_sqrt_n / rho, -1.0, 1.0);
        const double ang = std::acos(cosang);
        const double ra = (rho - center) / radial_w;
        const double aa = ang / angular_w;
        return std::exp(-kPi * (ra * ra + aa * aa));
    };
    if (g.n == 2) {
        for (int a = 0; a < n_ax; ++a) {
            const double xa = g.freq_coord(a);
            for (int b = 0; b < n_ax; ++b) fhat[idx++] = cap(xa, g.freq_coord(b), 0.0);
        }
    } else {
        for (int a = 0; a < n_ax; ++a) {
            const double xa = g.freq_coord(a);
            for (int b = 0; b < n_ax; ++b) {
                const double xb = g.freq_coord(b);
                for (int c = 0; c < n_ax; ++c)
                    fhat[idx++] = cap(xa, xb, g.freq_coord(c));
            }
        }
    }
    return inverse_transform(fhat);
}

}  // namespace

void check_family_resolution(family_kind kind, double scale, const grid_spec& g) {
    if (!(scale > 0.0)) throw domain_error("test_family: scales must be positive");
    if (feature_size(kind, scale) < 8.0 * g.spacing() * (1.0 - 1e-12)) {
        throw resolution_error("grid too coarse: fewer than 8 cells across the feature "
                               "at scale " +
                               std::to_string(scale));
    }
}

sampled_field make_family_member(family_kind kind, double scale, std::uint64_t seed,
                                 int member_index, const grid_spec& g) {
    check_family_resolution(kind, scale, g);
    switch (kind) {
        case family_kind::gaussian_dilates:
            return field_from_function(g, [&](std::span<const double> x) {
                double r2 = 0.0;
                for (double c : x) r2 += c * c;
                return cplx(std::exp(-kPi * r2 / (scale * scale)), 0.0);
            });
        case family_kind::ball_indicators:
            return field_from_function(g, [&](std::span<const double> x) {
                double r2 = 0.0;
                for (double c : x) r2 += c * c;
                return cplx(r2 <= scale * scale ? 1.0 : 0.0, 0.0);
            });
        case family_kind::knapp_caps:
            return make_knapp_cap(scale, g);
        case family_kind::random_bumps: {
            rng gen(seed * 0x9e37u + static_cast<std::uint64_t>(member_index));
            struct bump {
                double c[3];
                double w;
                double a;
            };
            std::vector<bump> bumps(3);
            const double reach = std::max(0.0, g.half_width - 1.0 - scale);
            for (auto& b : bumps) {
                for (int d = 0; d < 3; ++d)
                    b.c[d] = d < g.n ? gen.uniform(-reach, reach) : 0.0;
                b.w = gen.uniform(0.5 * scale, scale);
                b.a = gen.uniform(0.5, 2.0);
            }
            return field_from_function(g, [&](std::span<const double> x) {
                double v = 0.0;
                for (const auto& b : bumps) {
                    double r2 = 0.0;
                    for (std::size_t d = 0; d < x.size(); ++d) {
                        const double dx = x[d] - b.c[d];
                        r2 += dx * dx;
                    }
                    v += b.a * std::exp(-kPi * r2 / (b.w * b.w));
                }
                return cplx(v, 0.0);
            });
        }
    }
    throw domain_error("make_family_member: unknown kind");
}

scan_report run_scan(const scan_params& params, const test_family& family,
                     const grid_spec& grid, int threads) {
    grid.validate();
    if (grid.n != params.n) throw domain_error("run_scan: grid dimension mismatch");
    if (family.scales.empty()) throw domain_error("run_scan: empty scale list");

    if (!params.diagnostic_outside) {
        // gate on the theorem hypotheses for the requested exponents
        if (params.p == params.q) {
            const double cut = (params.n - 1.0) / (params.n + 1.0) * params.n;
            region_query rq{params.n, params.s, params.alpha, params.p, params.q};
            const region_verdict v =
                params.alpha >= cut ? remark_one(rq) : theorem_two(rq);
            if (!v.admissible) {
                throw domain_error(
                    "run_scan: exponents outside the p = q region; pass diagnostic to "
                    "scan anyway");
            }
        } else {
            const region_verdict v =
                theorem_one({params.n, params.s, params.alpha, params.p, params.q});
            if (!v.admissible) {
                throw domain_error(
                    "run_scan: exponents outside the theorem-one region; pass diagnostic "
                    "to scan anyway");
            }
        }
    }
    for (double scale : family.scales) {
        check_family_resolution(family.kind, scale, grid);
    }

    const kernel_spec spec{kernel_family::standard, {params.alpha, params.n}, 0.0, 0.0};
    const radial_multiplier mult = multiplier(spec);
    const std::vector<cplx> table = multiplier_on_lattice(grid, mult);

    scan_report report;
    report.rows.resize(family.scales.size());
    parallel_for(family.scales.size(), threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const double scale = family.scales[i];
            const sampled_field f = make_family_member(family.kind, scale, family.seed,
                                                       static_cast<int>(i), grid);
            const double den = sobolev_norm(f, params.p, params.s);
            if (den == 0.0) {
                throw domain_error("run_scan: family member at scale " +
                                   std::to_string(scale) + " is identically zero");
            }
            sampled_field fhat = forward_transform(f);
            {
                // apply the precomputed lattice table
                const grid_spec& g = grid;
                std::size_t idx = 0;
                const int n_ax = g.points_per_axis;
                if (g.n == 2) {
                    for (int a = 0; a < n_ax; ++a) {
                        const long ka = g.freq_int(a);
                        for (int b = 0; b < n_ax; ++b) {
                            const long kb = g.freq_int(b);
                            fhat[idx++] *= table[ka * ka + kb * kb];
                        }
                    }
                } else {
                    for (int a = 0; a < n_ax; ++a) {
                        const long ka = g.freq_int(a);
                        for (int b = 0; b < n_ax; ++b) {
                            const long kb = g.freq_int(b);
                            for (int c = 0; c < n_ax; ++c) {
                                const long kc = g.freq_int(c);
                                fhat[idx++] *= table[ka * ka + kb * kb + kc * kc];
                            }
                        }
                    }
                }
            }
            const double num = lp_norm(inverse_transform(fhat), params.q);
            report.rows[i] = {scale, num, den, num / den};
        }
    });

    report.max_ratio = report.rows.front().ratio;
    report.min_ratio = report.rows.front().ratio;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& r : report.rows) {
        report.max_ratio = std::max(report.max_ratio, r.ratio);
        report.min_ratio = std::min(report.min_ratio, r.ratio);
        const double x = std::log(r.scale), y = std::log(r.ratio);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n_rows = static_cast<double>(report.rows.size());
    const double var = sxx - sx * sx / n_rows;
    report.trend_slope = var > 0.0 ? (sxy - sx * sy / n_rows) / var : 0.0;
    return report;
}

}  // namespace ssops
