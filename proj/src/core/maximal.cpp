#include "core/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

namespace ssops {

namespace {

double pow2(int e) { return std::ldexp(1.0, e); }

// orthonormal frame with e0 = dir
void transverse_frame(const std::array<double, 3>& dir, int n,
                      std::array<double, 3>& e1, std::array<double, 3>& e2) {
    if (n == 2) {
        e1 = {-dir[1], dir[0], 0.0};
        e2 = {0.0, 0.0, 1.0};
        return;
    }
    // pick the axis least aligned with dir
    int least = 0;
    for (int a = 1; a < 3; ++a)
        if (std::abs(dir[a]) < std::abs(dir[least])) least = a;
    std::array<double, 3> axis{0.0, 0.0, 0.0};
    axis[least] = 1.0;
    // e1 = normalize(dir x axis)
    e1 = {dir[1] * axis[2] - dir[2] * axis[1], dir[2] * axis[0] - dir[0] * axis[2],
          dir[0] * axis[1] - dir[1] * axis[0]};
    const double inv = 1.0 / std::hypot(e1[0], e1[1], e1[2]);
    for (double& c : e1) c *= inv;
    e2 = {dir[1] * e1[2] - dir[2] * e1[1], dir[2] * e1[0] - dir[0] * e1[2],
          dir[0] * e1[1] - dir[1] * e1[0]};
}

void require_nonnegative(const sampled_field& f) {
    double scale = 0.0;
    for (const cplx& v : f.values()) scale = std::max(scale, std::abs(v));
    const double tol = 1e-12 * std::max(scale, 1.0);
    for (const cplx& v : f.values()) {
        if (v.real() < -tol || std::abs(v.imag()) > tol) {
            throw domain_error("maximal operators require a nonnegative real field");
        }
    }
}

void require_resolution(const grid_spec& g, int rho) {
    if (g.spacing() > pow2(-rho - 2) * (1.0 + 1e-12)) {
        throw resolution_error(
            "grid spacing must be <= 2^{-rho-2}; shells at ell = rho are unresolved "
            "otherwise (spacing " +
            std::to_string(g.spacing()) + ", rho " + std::to_string(rho) + ")");
    }
}

// integer-lattice point u = (i,j,k) * h for the cyclic convolution kernels;
// indices are in FFT storage order, i.e. signed via freq_int.
template <typename Fn>
void for_each_lattice_offset(const grid_spec& g, Fn&& fn) {
    const int n_ax = g.points_per_axis;
    const double h = g.spacing();
    double u[3] = {0, 0, 0};
    std::size_t idx = 0;
    if (g.n == 2) {
        for (int a = 0; a < n_ax; ++a) {
            u[0] = g.freq_int(a) * h;
            for (int b = 0; b < n_ax; ++b) {
                u[1] = g.freq_int(b) * h;
                fn(idx++, std::span<const double>(u, 2));
            }
        }
    } else {
        for (int a = 0; a < n_ax; ++a) {
            u[0] = g.freq_int(a) * h;
            for (int b = 0; b < n_ax; ++b) {
                u[1] = g.freq_int(b) * h;
                for (int c = 0; c < n_ax; ++c) {
                    u[2] = g.freq_int(c) * h;
                    fn(idx++, std::span<const double>(u, 3));
                }
            }
        }
    }
}

std::array<double, 3> sample_cap_direction(const std::array<double, 3>& center, int n,
                                           double chord, rng& gen) {
    if (n == 2) {
        const double theta_max = 2.0 * std::asin(chord / 2.0);
        const double t = gen.uniform(-theta_max, theta_max);
        const double c = std::cos(t), s = std::sin(t);
        return {center[0] * c - center[1] * s, center[0] * s + center[1] * c, 0.0};
    }
    const double cos_max = 1.0 - chord * chord / 2.0;
    const double z = gen.uniform(cos_max, 1.0);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = gen.uniform(0.0, kTwoPi);
    std::array<double, 3> e1, e2;
    transverse_frame(center, 3, e1, e2);
    std::array<double, 3> out;
    for (int a = 0; a < 3; ++a)
        out[a] = z * center[a] + r * (std::cos(phi) * e1[a] + std::sin(phi) * e2[a]);
    return out;
}

}  // namespace

int shell_index(double u_norm) {
    const double t = 1.0 - u_norm;
    if (!(t > 0.0) || t >= 1.0) return -1;
    int ell = static_cast<int>(std::floor(-std::log2(t)));
    // settle half-open boundaries explicitly
    for (int cand = std::max(0, ell - 1); cand <= ell + 1; ++cand) {
        if (pow2(-cand - 1) <= t && t < pow2(-cand)) return cand;
    }
    return -1;
}

bool shell_contains(int ell, double u_norm) {
    if (ell < 0) return false;
    const double t = 1.0 - u_norm;
    return pow2(-ell - 1) <= t && t < pow2(-ell);
}

sphere_grid build_sphere_grid(int n, int rho, int verify_samples, std::uint64_t seed) {
    if (n != 2 && n != 3) {
        throw domain_error("build_sphere_grid: n must be 2 or 3");
    }
    if (rho < 0 || rho > 8) {
        throw domain_error("build_sphere_grid: rho must be in [0, 8]");
    }
    sphere_grid g;
    g.n = n;
    g.rho = rho;
    const double target = pow2(-rho);

    if (n == 2) {
        const int m = static_cast<int>(std::ceil(kTwoPi / target));
        g.directions.reserve(m);
        for (int k = 0; k < m; ++k) {
            const double th = kTwoPi * k / m;
            g.directions.push_back({std::cos(th), std::sin(th), 0.0});
        }
        g.covering_radius = 2.0 * std::sin(kPi / (2.0 * m));
        g.cardinality_constant = m / pow2(rho * (n - 1));
        return g;
    }

    // n = 3: Fibonacci point set, grown until sampled covering succeeds
    const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
    int m = static_cast<int>(std::ceil(12.0 * pow2(2 * rho)));
    for (int attempt = 0; attempt < 8; ++attempt) {
        g.directions.clear();
        g.directions.reserve(m);
        for (int k = 0; k < m; ++k) {
            const double z = 1.0 - (2.0 * k + 1.0) / m;
            const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            const double phi = kTwoPi * std::fmod(k * golden, 1.0);
            g.directions.push_back({r * std::cos(phi), r * std::sin(phi), z});
        }
        rng gen(seed + attempt);
        double worst = 0.0;
        std::array<double, 3> worst_dir{};
        for (int i = 0; i < verify_samples; ++i) {
            std::array<double, 3> d;
            double nn = 0.0;
            do {
                for (double& c : d) c = gen.normal();
                nn = std::hypot(d[0], d[1], d[2]);
            } while (nn < 1e-8);
            for (double& c : d) c /= nn;
            double best = 4.0;
            for (const auto& u : g.directions) {
                const double dx = d[0] - u[0], dy = d[1] - u[1], dz = d[2] - u[2];
                const double c2 = dx * dx + dy * dy + dz * dz;
                if (c2 < best) best = c2;
                if (best <= target * target * 0.25) break;
            }
            if (best > worst) {
                worst = best;
                worst_dir = d;
            }
        }
        worst = std::sqrt(worst);
        if (worst <= target) {
            g.covering_radius = worst;
            g.cardinality_constant = m / pow2(rho * (n - 1));
            return g;
        }
        m = static_cast<int>(std::ceil(m * 1.4));
        if (attempt == 7) {
            throw accuracy_error(
                "build_sphere_grid: covering radius " + std::to_string(worst) +
                    " > 2^-rho near direction (" + std::to_string(worst_dir[0]) + ", " +
                    std::to_string(worst_dir[1]) + ", " + std::to_string(worst_dir[2]) + ")",
                worst);
        }
    }
    throw accuracy_error("build_sphere_grid: unreachable", 0.0);
}

bool cone_rectangle::cone_contains(std::span<const double> u) const {
    double nn = 0.0;
    for (double c : u) nn += c * c;
    if (nn <= 0.0) return false;
    nn = std::sqrt(nn);
    double c2 = 0.0;
    for (std::size_t a = 0; a < u.size(); ++a) {
        const double d = u[a] / nn - dir[a];
        c2 += d * d;
    }
    return c2 <= pow2(-2 * rho);
}

bool cone_rectangle::rect_contains(std::span<const double> u) const {
    double rel[3] = {0, 0, 0};
    for (std::size_t a = 0; a < u.size(); ++a) rel[a] = u[a] - dir[a];
    double axial = 0.0;
    for (int a = 0; a < 3; ++a) axial += rel[a] * dir[a];
    if (std::abs(axial) > 2.5 * pow2(-ell)) return false;
    std::array<double, 3> e1, e2;
    transverse_frame(dir, n, e1, e2);
    const double half_t = 2.5 * pow2(-rho);
    double t1 = 0.0;
    for (int a = 0; a < 3; ++a) t1 += rel[a] * e1[a];
    if (std::abs(t1) > half_t) return false;
    if (n == 3) {
        double t2 = 0.0;
        for (int a = 0; a < 3; ++a) t2 += rel[a] * e2[a];
        if (std::abs(t2) > half_t) return false;
    }
    return true;
}

double cone_rectangle::rect_measure() const {
    return std::pow(5.0, n) * pow2(-ell) * pow2(-rho * (n - 1));
}

int shell_cone_inclusion_check(int n, int rho, int samples, std::uint64_t seed) {
    const sphere_grid grid = build_sphere_grid(n, rho);
    rng gen(seed);
    int violations = 0;
    for (int ell = 0; ell <= rho; ++ell) {
        cone_rectangle cr{n, rho, ell, {1, 0, 0}};
        for (int i = 0; i < samples; ++i) {
            const std::size_t v = gen.next() % grid.directions.size();
            cr.dir = grid.directions[v];
            const std::array<double, 3> d =
                sample_cap_direction(cr.dir, n, pow2(-rho), gen);
            const double t = gen.uniform(pow2(-ell - 1), pow2(-ell));
            const double r = 1.0 - t;
            double u[3] = {r * d[0], r * d[1], r * d[2]};
            std::span<const double> us(u, static_cast<std::size_t>(n));
            if (!shell_contains(ell, r) || !cr.cone_contains(us)) {
                --i;  // numerical edge of the sampler, not a claim violation
                continue;
            }
            if (!cr.rect_contains(us)) ++violations;
        }
    }
    return violations;
}

double directional_maximal(const sampled_field& f, const sphere_grid& grid, int v,
                           std::array<int, 3> x_index) {
    require_nonnegative(f);
    require_resolution(f.grid(), grid.rho);
    const grid_spec& g = f.grid();
    if (g.n != grid.n) throw domain_error("directional_maximal: dimension mismatch");
    const int n_ax = g.points_per_axis;
    const double h = g.spacing();
    const double hn = std::pow(h, g.n);
    cone_rectangle cone{g.n, grid.rho, 0, grid.directions.at(v)};

    std::vector<double> sums(grid.rho + 1, 0.0);
    const int reach = static_cast<int>(std::ceil(1.0 / h)) + 1;
    double u[3] = {0, 0, 0};
    const int cmin = g.n == 3 ? -reach : 0;
    const int cmax = g.n == 3 ? reach : 0;
    for (int a = -reach; a <= reach; ++a) {
        u[0] = a * h;
        for (int b = -reach; b <= reach; ++b) {
            u[1] = b * h;
            for (int c = cmin; c <= cmax; ++c) {
                u[2] = c * h;
                const double nn = std::hypot(u[0], u[1], u[2]);
                const int ell = shell_index(nn);
                if (ell < 0 || ell > grid.rho) continue;
                if (!cone.cone_contains(std::span<const double>(u, g.n))) continue;
                // f(x - u), cyclic
                int idx[3] = {((x_index[0] - a) % n_ax + n_ax) % n_ax,
                              ((x_index[1] - b) % n_ax + n_ax) % n_ax,
                              ((x_index[2] - c) % n_ax + n_ax) % n_ax};
                std::size_t flat = static_cast<std::size_t>(idx[0]) * n_ax + idx[1];
                if (g.n == 3) flat = flat * n_ax + idx[2];
                sums[ell] += f[flat].real() * hn;
            }
        }
    }
    double sup = 0.0;
    for (int ell = 0; ell <= grid.rho; ++ell) {
        const double normalizer = pow2(-ell) * pow2(-grid.rho * (g.n - 1));
        sup = std::max(sup, std::max(0.0, sums[ell]) / normalizer);
    }
    return sup;
}

std::vector<sampled_field> averaged_maximal_batch(std::span<const sampled_field> fs,
                                                  const sphere_grid& grid, int threads) {
    if (fs.empty()) return {};
    const grid_spec& g = fs.front().grid();
    for (const auto& f : fs) {
        if (!(f.grid() == g)) throw domain_error("averaged_maximal: mixed grids");
        require_nonnegative(f);
    }
    require_resolution(g, grid.rho);
    if (g.n != grid.n) throw domain_error("averaged_maximal: dimension mismatch");

    const std::size_t count = g.size();
    const double hn = std::pow(g.spacing(), g.n);
    const std::size_t n_members = fs.size();
    const int rho = grid.rho;

    // geometry per lattice offset, computed once
    std::vector<signed char> ell_of(count);
    std::vector<float> ux(count), uy(count), uz(g.n == 3 ? count : 0);
    for_each_lattice_offset(g, [&](std::size_t idx, std::span<const double> u) {
        double nn = 0.0;
        for (double c : u) nn += c * c;
        nn = std::sqrt(nn);
        const int ell = shell_index(nn);
        ell_of[idx] = static_cast<signed char>(ell >= 0 && ell <= rho ? ell : -1);
        if (nn > 0.0) {
            ux[idx] = static_cast<float>(u[0] / nn);
            uy[idx] = static_cast<float>(u[1] / nn);
            if (g.n == 3) uz[idx] = static_cast<float>(u[2] / nn);
        } else {
            ux[idx] = 2.0f;  // unreachable direction: never inside a cone
            uy[idx] = 0.0f;
            if (g.n == 3) uz[idx] = 0.0f;
        }
    });

    // forward transforms of the members, once
    std::vector<std::vector<cplx>> fhat(n_members, std::vector<cplx>(count));
    for (std::size_t m = 0; m < n_members; ++m)
        fft_raw(g, fs[m].values(), fhat[m], true);

    const std::size_t n_dirs = grid.directions.size();
    const std::size_t n_workers =
        std::min<std::size_t>(resolve_thread_count(threads), std::max<std::size_t>(1, n_dirs));
    const double cone_r2 = pow2(-2 * rho);
    const double conv_scale = hn / static_cast<double>(count);

    // per-worker running sums of sup_ell averages over its share of directions
    std::vector<std::vector<std::vector<double>>> partial(
        n_workers,
        std::vector<std::vector<double>>(n_members, std::vector<double>(count, 0.0)));

    auto work = [&](std::size_t worker, std::size_t lo, std::size_t hi) {
        auto& acc = partial[worker];
        std::vector<cplx> mask(count), mask_hat(count), prod(count), conv(count);
        std::vector<std::vector<double>> mv(n_members, std::vector<double>(count));
        for (std::size_t v = lo; v < hi; ++v) {
            const auto& d = grid.directions[v];
            for (auto& m : mv) std::fill(m.begin(), m.end(), 0.0);
            for (int ell = 0; ell <= rho; ++ell) {
                bool nonempty = false;
                for (std::size_t i = 0; i < count; ++i) {
                    bool in = ell_of[i] == ell;
                    if (in) {
                        const double dx = ux[i] - d[0], dy = uy[i] - d[1];
                        double c2 = dx * dx + dy * dy;
                        if (g.n == 3) {
                            const double dz = uz[i] - d[2];
                            c2 += dz * dz;
                        }
                        in = c2 <= cone_r2;
                    }
                    mask[i] = in ? 1.0 : 0.0;
                    nonempty = nonempty || in;
                }
                if (!nonempty) continue;
                fft_raw(g, mask, mask_hat, true);
                const double normalizer = pow2(-ell) * pow2(-rho * (g.n - 1));
                for (std::size_t m = 0; m < n_members; ++m) {
                    for (std::size_t i = 0; i < count; ++i)
                        prod[i] = fhat[m][i] * mask_hat[i];
                    fft_raw(g, prod, conv, false);
                    double* mvm = mv[m].data();
                    for (std::size_t i = 0; i < count; ++i) {
                        const double avg =
                            std::max(0.0, conv[i].real() * conv_scale) / normalizer;
                        if (avg > mvm[i]) mvm[i] = avg;
                    }
                }
            }
            for (std::size_t m = 0; m < n_members; ++m) {
                const double* mvm = mv[m].data();
                double* am = acc[m].data();
                for (std::size_t i = 0; i < count; ++i) am[i] += mvm[i];
            }
        }
    };

    if (n_workers <= 1) {
        work(0, 0, n_dirs);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (n_dirs + n_workers - 1) / n_workers;
        for (std::size_t w = 0; w < n_workers; ++w) {
            const std::size_t lo = w * chunk, hi = std::min(n_dirs, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(work, w, lo, hi);
        }
        for (auto& t : pool) t.join();
    }

    // deterministic reduction in worker order
    const double weight = pow2(-rho * (g.n - 1));
    std::vector<sampled_field> out;
    out.reserve(n_members);
    for (std::size_t m = 0; m < n_members; ++m) {
        sampled_field acc(g);
        for (std::size_t w = 0; w < n_workers; ++w) {
            const double* src = partial[w][m].data();
            for (std::size_t i = 0; i < count; ++i) acc[i] += src[i];
        }
        for (cplx& v : acc.values()) v = cplx(v.real() * weight, 0.0);
        out.push_back(std::move(acc));
    }
    return out;
}

sampled_field averaged_maximal(const sampled_field& f, const sphere_grid& grid,
                               int threads) {
    const sampled_field* one = &f;
    auto out = averaged_maximal_batch(std::span<const sampled_field>(one, 1), grid, threads);
    return std::move(out.front());
}

sampled_field partial_operator(const sampled_field& f, double alpha, int rho) {
    require_nonnegative(f);
    const grid_spec& g = f.grid();
    require_resolution(g, rho);
    if (!(alpha > 0.0 && alpha < g.n)) {
        throw domain_error("partial_operator: requires 0 < alpha < n");
    }
    const std::size_t count = g.size();
    std::vector<cplx> kernel(count, cplx(0.0));
    const double expo = 1.0 - alpha / g.n;
    for_each_lattice_offset(g, [&](std::size_t idx, std::span<const double> u) {
        double nn = 0.0;
        for (double c : u) nn += c * c;
        const double r = std::sqrt(nn);
        const int ell = shell_index(r);
        if (ell < 0 || ell > rho) return;
        kernel[idx] = std::exp(-expo * std::log1p(-nn));
    });
    std::vector<cplx> khat(count), fh(count), prod(count);
    fft_raw(g, kernel, khat, true);
    fft_raw(g, f.values(), fh, true);
    for (std::size_t i = 0; i < count; ++i) prod[i] = fh[i] * khat[i];
    sampled_field out(g);
    fft_raw(g, prod, out.values(), false);
    const double scale = std::pow(g.spacing(), g.n) / static_cast<double>(count);
    for (cplx& v : out.values()) v = cplx(std::max(0.0, v.real() * scale), 0.0);
    return out;
}

std::vector<sampled_field> shell_integrals(const sampled_field& f, double alpha, int rho) {
    require_nonnegative(f);
    const grid_spec& g = f.grid();
    require_resolution(g, rho);
    if (!(alpha > 0.0 && alpha < g.n)) {
        throw domain_error("shell_integrals: requires 0 < alpha < n");
    }
    const std::size_t count = g.size();
    std::vector<cplx> fh(count);
    fft_raw(g, f.values(), fh, true);
    const double expo = 1.0 - alpha / g.n;
    const double scale = std::pow(g.spacing(), g.n) / static_cast<double>(count);

    std::vector<sampled_field> out;
    out.reserve(rho + 1);
    std::vector<cplx> kernel(count), khat(count), prod(count);
    for (int ell = 0; ell <= rho; ++ell) {
        std::fill(kernel.begin(), kernel.end(), cplx(0.0));
        for_each_lattice_offset(g, [&](std::size_t idx, std::span<const double> u) {
            double nn = 0.0;
            for (double c : u) nn += c * c;
            if (!shell_contains(ell, std::sqrt(nn))) return;
            kernel[idx] = std::exp(-expo * std::log1p(-nn));
        });
        fft_raw(g, kernel, khat, true);
        for (std::size_t i = 0; i < count; ++i) prod[i] = fh[i] * khat[i];
        sampled_field shell_field(g);
        fft_raw(g, prod, shell_field.values(), false);
        for (cplx& v : shell_field.values())
            v = cplx(std::max(0.0, v.real() * scale), 0.0);
        out.push_back(std::move(shell_field));
    }
    return out;
}

double hedberg_sigma(double maximal_value, double norm_p, double p) {
    if (!(maximal_value > 0.0)) return -std::numeric_limits<double>::infinity();
    return p * std::log2(maximal_value / norm_p);
}

double hedberg_check(const sampled_field& f, double alpha, double p, double q, int rho,
                     int threads) {
    const grid_spec& g = f.grid();
    if (!(p > 1.0 && q > p && std::isfinite(q))) {
        throw domain_error("hedberg_check: requires 1 < p < q < inf");
    }
    if (std::abs(alpha / g.n - (1.0 / p - 1.0 / q)) > 1e-12) {
        throw domain_error("hedberg_check: requires alpha/n = 1/p - 1/q");
    }
    require_nonnegative(f);
    const double norm_p = lp_norm(f, p);
    if (norm_p == 0.0) return 0.0;

    const sampled_field integral = partial_operator(f, alpha, rho);
    const sphere_grid grid = build_sphere_grid(g.n, rho);
    const sampled_field maximal = averaged_maximal(f, grid, threads);

    double m_max = 0.0;
    for (const cplx& v : maximal.values()) m_max = std::max(m_max, v.real());
    const double floor = 1e-12 * m_max;
    const double tail = std::pow(norm_p, 1.0 - p / q);
    double sup = 0.0;
    for (std::size_t i = 0; i < maximal.size(); ++i) {
        const double m = maximal[i].real();
        if (m <= floor) continue;
        const double denom = std::pow(m, p / q) * tail;
        sup = std::max(sup, integral[i].real() / denom);
    }
    return sup;
}

}  // namespace ssops
