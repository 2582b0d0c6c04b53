#include "core/wave.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "core/regions.hpp"

namespace ssops {

namespace {

double max_lattice_rho(const grid_spec& g) {
    const double per_axis = g.points_per_axis / 2 / (2.0 * g.half_width);
    return std::sqrt(static_cast<double>(g.n)) * per_axis;
}

}  // namespace

void wave_forcing::validate() const {
    grid.validate();
    if (!(dt > 0.0)) throw domain_error("wave_forcing: dt must be > 0");
    if (frames.empty()) throw domain_error("wave_forcing: no frames");
    for (const auto& f : frames) {
        if (!(f.grid() == grid)) {
            throw domain_error("wave_forcing: all frames must share the grid");
        }
    }
    const double dt_max = kPi / (4.0 * max_lattice_rho(grid));
    if (dt > dt_max * (1.0 + 1e-12)) {
        throw domain_error(
            "wave_forcing: dt > pi/(4 rho_max); the Duhamel kernel sin((t-s)|xi|) "
            "would be unresolved at the highest lattice frequency (dt " +
            std::to_string(dt) + ", limit " + std::to_string(dt_max) + ")");
    }
}

wave_solver::wave_solver(wave_forcing forcing) : forcing_(std::move(forcing)) {
    forcing_.validate();
    frame_hats_.reserve(forcing_.frames.size());
    for (const auto& f : forcing_.frames) frame_hats_.push_back(forward_transform(f));
    const grid_spec& g = forcing_.grid;
    mode_rho_.resize(g.size());
    const int n_ax = g.points_per_axis;
    std::size_t idx = 0;
    if (g.n == 2) {
        for (int a = 0; a < n_ax; ++a) {
            const double xa = g.freq_coord(a);
            for (int b = 0; b < n_ax; ++b) {
                const double xb = g.freq_coord(b);
                mode_rho_[idx++] = std::hypot(xa, xb);
            }
        }
    } else {
        for (int a = 0; a < n_ax; ++a) {
            const double xa = g.freq_coord(a);
            for (int b = 0; b < n_ax; ++b) {
                const double xb = g.freq_coord(b);
                for (int c = 0; c < n_ax; ++c) {
                    mode_rho_[idx++] = std::hypot(xa, xb, g.freq_coord(c));
                }
            }
        }
    }
}

std::size_t wave_solver::lattice_index(double t) const {
    const double k = t / forcing_.dt;
    const double rounded = std::round(k);
    if (std::abs(k - rounded) > 1e-9 * std::max(1.0, std::abs(k))) {
        throw domain_error(
            "wave_solver: t is off the forcing time lattice; interpolation is refused");
    }
    if (rounded < 0 || rounded > static_cast<double>(forcing_.frames.size() - 1)) {
        throw domain_error("wave_solver: t outside the forcing window");
    }
    return static_cast<std::size_t>(rounded);
}

sampled_field wave_solver::solve_hat(double t) const {
    const std::size_t k = lattice_index(t);
    const grid_spec& g = forcing_.grid;
    sampled_field uhat(g);
    if (k == 0) return uhat;  // zero initial data, exactly
    const double dt = forcing_.dt;
    for (std::size_t j = 0; j <= k; ++j) {
        const double weight = (j == 0 || j == k) ? 0.5 * dt : dt;
        const double tau = (k - j) * dt;
        const auto& fj = frame_hats_[j];
        for (std::size_t i = 0; i < uhat.size(); ++i) {
            const double rho = mode_rho_[i];
            const double green = rho > 0.0 ? std::sin(tau * rho) / rho : tau;
            uhat[i] += weight * green * fj[i];
        }
    }
    return uhat;
}

sampled_field wave_solver::solve(double t) const { return inverse_transform(solve_hat(t)); }

sampled_field solve_wave(const wave_forcing& forcing, double t) {
    return wave_solver(forcing).solve(t);
}

double duhamel_estimate_check(const wave_forcing& forcing, double t, double p, double q,
                              double s) {
    const int n = forcing.grid.n;
    const double alpha = 2.0 * n / (n + 1.0);
    const region_verdict verdict = theorem_one({n, s, alpha, p, q});
    if (!verdict.admissible) {
        for (const auto& c : verdict.binding) {
            if (!c.satisfied) {
                throw domain_error("duhamel_estimate_check: (p, q, s) fails \"" + c.name +
                                   "\" of theorem_one at alpha = 2n/(n+1)");
            }
        }
    }

    wave_solver solver(forcing);
    const sampled_field u = solver.solve(t);
    const double num = lp_norm(u, q);

    // frame norms ||f(., t_j)||_{L^p_s}
    const std::size_t k = static_cast<std::size_t>(std::round(t / forcing.dt));
    std::vector<double> g_norm(k + 1);
    for (std::size_t j = 0; j <= k; ++j) g_norm[j] = sobolev_norm(forcing.frames[j], p, s);
    auto g_at = [&](double time) {
        const double x = std::clamp(time / forcing.dt, 0.0, static_cast<double>(k));
        const std::size_t j0 = std::min(k - (k > 0 ? 1 : 0), static_cast<std::size_t>(x));
        const double w = x - j0;
        return (1.0 - w) * g_norm[j0] + w * g_norm[std::min(k, j0 + 1)];
    };

    // Int_0^t g(t - r) r^{-gamma} dr with r = tau^m, m = (n+1)/2: the Jacobian
    // cancels the singularity and the integrand becomes m tau^{m(1-gamma)-1}
    // g(t - tau^m) = m g(t - tau^m).
    const double m = (n + 1.0) / 2.0;
    const std::size_t steps = std::max<std::size_t>(512, 4 * k);
    const double tau_end = std::pow(t, 1.0 / m);
    const double dtau = tau_end / steps;
    double den = 0.0;
    for (std::size_t i = 0; i <= steps; ++i) {
        const double tau = i * dtau;
        const double r = std::pow(tau, m);
        const double w = (i == 0 || i == steps) ? 0.5 : 1.0;
        den += w * m * g_at(t - r);
    }
    den *= dtau;

    if (den == 0.0) return 0.0;
    return num / den;
}

wave_forcing load_forcing(const std::string& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) throw io_error("load_forcing: cannot open " + manifest_path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw io_error("load_forcing: bad manifest: " + std::string(e.what()));
    }
    if (!j.contains("dt") || !j.contains("count")) {
        throw io_error("load_forcing: manifest must contain dt and count");
    }
    const double dt = j["dt"].get<double>();
    const int count = j["count"].get<int>();
    const std::string pattern = j.value("pattern", std::string("frame_%04d.fld"));
    std::string dir = manifest_path;
    const auto slash = dir.find_last_of('/');
    dir = slash == std::string::npos ? std::string(".") : dir.substr(0, slash);

    wave_forcing forcing;
    forcing.dt = dt;
    char name[256];
    for (int i = 0; i < count; ++i) {
        std::snprintf(name, sizeof(name), pattern.c_str(), i);
        forcing.frames.push_back(load_field(dir + "/" + name));
    }
    if (!forcing.frames.empty()) forcing.grid = forcing.frames.front().grid();
    forcing.validate();
    return forcing;
}

wave_forcing gaussian_bump_forcing(const grid_spec& g, double dt, int count, double width,
                                   double t_off) {
    wave_forcing forcing;
    forcing.grid = g;
    forcing.dt = dt;
    const sampled_field spatial = field_from_function(g, [&](std::span<const double> x) {
        double r2 = 0.0;
        for (double c : x) r2 += c * c;
        return cplx(std::exp(-kPi * r2 / (width * width)), 0.0);
    });
    forcing.frames.reserve(count);
    for (int k = 0; k < count; ++k) {
        const double time = k * dt;
        double amp = 0.0;
        if (time < t_off) {
            const double u = std::sin(kPi * time / t_off);
            amp = u * u;
        }
        sampled_field frame = spatial;
        for (cplx& v : frame.values()) v *= amp;
        forcing.frames.push_back(std::move(frame));
    }
    forcing.validate();
    return forcing;
}

}  // namespace ssops
