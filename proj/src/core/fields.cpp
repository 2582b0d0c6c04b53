#include "core/fields.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <map>
#include <mutex>

namespace ssops {

static_assert(std::endian::native == std::endian::little,
              "field files are little-endian; big-endian hosts are unsupported");

namespace {

std::mutex g_fftw_mutex;  // FFTW planning is not thread-safe

struct plan_key {
    int n;
    int size;
    int sign;
    auto operator<=>(const plan_key&) const = default;
};

fftw_plan acquire_plan(const grid_spec& g, int sign) {
    static std::map<plan_key, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(g_fftw_mutex);
    const plan_key key{g.n, g.points_per_axis, sign};
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    const std::size_t count = g.size();
    fftw_complex* in = fftw_alloc_complex(count);
    fftw_complex* out = fftw_alloc_complex(count);
    std::memset(in, 0, count * sizeof(fftw_complex));
    int dims[3] = {g.points_per_axis, g.points_per_axis, g.points_per_axis};
    // FFTW_UNALIGNED so the plan can run on any caller buffers via
    // fftw_execute_dft; FFTW_PRESERVE_INPUT keeps the source intact.
    fftw_plan p = fftw_plan_dft(g.n, dims, in, out, sign,
                                FFTW_ESTIMATE | FFTW_UNALIGNED | FFTW_PRESERVE_INPUT);
    fftw_free(in);
    fftw_free(out);
    cache.emplace(key, p);
    return p;
}

inline fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

// per-axis phase e^{i pi k} e^{-i pi k / N} carried by the half-offset grid
std::vector<cplx> offset_phases(const grid_spec& g, bool forward) {
    const int n_ax = g.points_per_axis;
    std::vector<cplx> ph(n_ax);
    for (int j = 0; j < n_ax; ++j) {
        const int k = g.freq_int(j);
        const double ang = kPi * k - kPi * k / static_cast<double>(n_ax);
        ph[j] = std::polar(1.0, forward ? ang : -ang);
    }
    return ph;
}

void apply_axis_phases(const grid_spec& g, std::span<cplx> data, bool forward,
                       double scale) {
    const std::vector<cplx> ph = offset_phases(g, forward);
    const int n_ax = g.points_per_axis;
    if (g.n == 2) {
        std::size_t idx = 0;
        for (int a = 0; a < n_ax; ++a) {
            const cplx pa = scale * ph[a];
            for (int b = 0; b < n_ax; ++b) data[idx++] *= pa * ph[b];
        }
    } else {
        std::size_t idx = 0;
        for (int a = 0; a < n_ax; ++a)
            for (int b = 0; b < n_ax; ++b) {
                const cplx pab = scale * ph[a] * ph[b];
                for (int c = 0; c < n_ax; ++c) data[idx++] *= pab * ph[c];
            }
    }
}

// integer squared frequency |k|^2 for every lattice point, plus its maximum
void for_each_freq_sq(const grid_spec& g, const std::function<void(std::size_t, long)>& fn) {
    const int n_ax = g.points_per_axis;
    if (g.n == 2) {
        std::size_t idx = 0;
        for (int a = 0; a < n_ax; ++a) {
            const long ka = g.freq_int(a);
            for (int b = 0; b < n_ax; ++b) {
                const long kb = g.freq_int(b);
                fn(idx++, ka * ka + kb * kb);
            }
        }
    } else {
        std::size_t idx = 0;
        for (int a = 0; a < n_ax; ++a) {
            const long ka = g.freq_int(a);
            for (int b = 0; b < n_ax; ++b) {
                const long kb = g.freq_int(b);
                for (int c = 0; c < n_ax; ++c) {
                    const long kc = g.freq_int(c);
                    fn(idx++, ka * ka + kb * kb + kc * kc);
                }
            }
        }
    }
}

long max_freq_sq(const grid_spec& g) {
    const long half = g.points_per_axis / 2;
    return g.n * half * half;
}

}  // namespace

std::size_t grid_spec::size() const {
    std::size_t s = 1;
    for (int i = 0; i < n; ++i) s *= static_cast<std::size_t>(points_per_axis);
    return s;
}

void grid_spec::validate() const {
    if (n != 2 && n != 3) {
        throw domain_error("grid_spec: dimension must be 2 or 3");
    }
    if (points_per_axis < 2 || (points_per_axis & (points_per_axis - 1)) != 0) {
        throw domain_error("grid_spec: points_per_axis must be a power of two");
    }
    if (!(half_width >= 2.0)) {
        throw domain_error("grid_spec: half_width must be >= 2 (kernel support control)");
    }
}

sampled_field::sampled_field(const grid_spec& g) : grid_(g), values_(g.size(), cplx(0.0)) {
    g.validate();
}

sampled_field::sampled_field(const grid_spec& g, std::vector<cplx> values)
    : grid_(g), values_(std::move(values)) {
    g.validate();
    if (values_.size() != g.size()) {
        throw domain_error("sampled_field: value count does not match grid");
    }
}

sampled_field field_from_function(const grid_spec& g,
                                  const std::function<cplx(std::span<const double>)>& fn) {
    sampled_field f(g);
    const int n_ax = g.points_per_axis;
    double x[3] = {0, 0, 0};
    std::size_t idx = 0;
    if (g.n == 2) {
        for (int a = 0; a < n_ax; ++a) {
            x[0] = g.axis_coord(a);
            for (int b = 0; b < n_ax; ++b) {
                x[1] = g.axis_coord(b);
                f[idx++] = fn(std::span<const double>(x, 2));
            }
        }
    } else {
        for (int a = 0; a < n_ax; ++a) {
            x[0] = g.axis_coord(a);
            for (int b = 0; b < n_ax; ++b) {
                x[1] = g.axis_coord(b);
                for (int c = 0; c < n_ax; ++c) {
                    x[2] = g.axis_coord(c);
                    f[idx++] = fn(std::span<const double>(x, 3));
                }
            }
        }
    }
    return f;
}

void fft_raw(const grid_spec& g, std::span<const cplx> in, std::span<cplx> out,
             bool forward) {
    fftw_plan p = acquire_plan(g, forward ? FFTW_FORWARD : FFTW_BACKWARD);
    fftw_execute_dft(p, as_fftw(const_cast<cplx*>(in.data())), as_fftw(out.data()));
}

sampled_field forward_transform(const sampled_field& f) {
    sampled_field out(f.grid());
    fft_raw(f.grid(), f.values(), out.values(), true);
    const double hn = std::pow(f.grid().spacing(), f.grid().n);
    apply_axis_phases(f.grid(), out.values(), true, hn);
    return out;
}

sampled_field inverse_transform(const sampled_field& fhat) {
    sampled_field tmp = fhat;
    apply_axis_phases(fhat.grid(), tmp.values(), false, 1.0);
    sampled_field out(fhat.grid());
    fft_raw(fhat.grid(), tmp.values(), out.values(), false);
    const double scale = std::pow(1.0 / (2.0 * fhat.grid().half_width), fhat.grid().n);
    for (cplx& v : out.values()) v *= scale;
    return out;
}

double lp_norm(const sampled_field& f, double p) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (const cplx& v : f.values()) m = std::max(m, std::abs(v));
        return m;
    }
    if (!(p >= 1.0)) {
        throw domain_error("lp_norm: requires p >= 1 or p = inf");
    }
    const double hn = std::pow(f.grid().spacing(), f.grid().n);
    double acc = 0.0;
    if (p == 2.0) {
        for (const cplx& v : f.values()) acc += std::norm(v);
    } else if (p == 1.0) {
        for (const cplx& v : f.values()) acc += std::abs(v);
    } else {
        for (const cplx& v : f.values()) acc += std::pow(std::abs(v), p);
    }
    return std::pow(hn * acc, 1.0 / p);
}

std::vector<cplx> multiplier_on_lattice(const grid_spec& g, const radial_multiplier& m) {
    const long maxsq = max_freq_sq(g);
    std::vector<char> present(maxsq + 1, 0);
    for_each_freq_sq(g, [&](std::size_t, long k2) { present[k2] = 1; });
    std::vector<cplx> table(maxsq + 1, cplx(0.0));
    const double inv2l = 1.0 / (2.0 * g.half_width);
    parallel_for(maxsq + 1, 0, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t k2 = lo; k2 < hi; ++k2) {
            if (!present[k2]) continue;
            table[k2] = m(std::sqrt(static_cast<double>(k2)) * inv2l);
        }
    });
    return table;
}

sampled_field apply_multiplier(const sampled_field& f, const radial_multiplier& m) {
    const std::vector<cplx> table = multiplier_on_lattice(f.grid(), m);
    sampled_field fhat = forward_transform(f);
    for_each_freq_sq(f.grid(),
                     [&](std::size_t idx, long k2) { fhat[idx] *= table[k2]; });
    return inverse_transform(fhat);
}

sampled_field sobolev_lift(const sampled_field& f, double s) {
    if (s < 0.0) {
        throw domain_error("sobolev_lift: requires s >= 0");
    }
    if (s == 0.0) return f;
    sampled_field fhat = forward_transform(f);
    const double inv2l_sq = 1.0 / (4.0 * f.grid().half_width * f.grid().half_width);
    for_each_freq_sq(f.grid(), [&](std::size_t idx, long k2) {
        fhat[idx] *= std::pow(1.0 + k2 * inv2l_sq, s / 2.0);
    });
    return inverse_transform(fhat);
}

double sobolev_norm(const sampled_field& f, double p, double s) {
    return lp_norm(sobolev_lift(f, s), p);
}

double composed_l2_bound(const grid_spec& g, const radial_multiplier& a,
                         const radial_multiplier& b) {
    const long maxsq = max_freq_sq(g);
    std::vector<char> present(maxsq + 1, 0);
    for_each_freq_sq(g, [&](std::size_t, long k2) { present[k2] = 1; });
    const double inv2l = 1.0 / (2.0 * g.half_width);
    double sup = 0.0;
    for (long k2 = 0; k2 <= maxsq; ++k2) {
        if (!present[k2]) continue;
        const double rho = std::sqrt(static_cast<double>(k2)) * inv2l;
        sup = std::max(sup, std::abs(a(rho) * b(rho)));
    }
    return sup;
}

namespace {

constexpr char kFieldMagic[8] = {'S', 'S', 'O', 'P', 'F', 'L', 'D', '1'};

// exact average of coeff (1-r^2)^{-expo} over a square cell near the ring,
// via the radial antiderivative G(r) = -(1-r^2)^{1-expo}/(2(1-expo)) and a
// dense angular midpoint rule (the integrand has corner kinks, nothing worse)
cplx ring_cell_average(double cx, double cy, double h, cplx expo, cplx coeff) {
    double ax = std::abs(cx), ay = std::abs(cy);
    if (ay > ax) std::swap(ax, ay);  // kernel is radial
    const double a1 = ax - h / 2, b1 = ax + h / 2;
    const double a2 = ay - h / 2, b2 = ay + h / 2;
    const double th[4] = {std::atan2(a2, a1), std::atan2(b2, a1), std::atan2(a2, b1),
                          std::atan2(b2, b1)};
    double tmin = th[0], tmax = th[0];
    for (double t : th) {
        tmin = std::min(tmin, t);
        tmax = std::max(tmax, t);
    }
    const cplx one_m_expo = 1.0 - expo;
    auto antideriv = [&](double r) -> cplx {
        const double t = 1.0 - r * r;
        if (t <= 0.0) return 0.0;
        return -std::exp(one_m_expo * std::log(t)) / (2.0 * one_m_expo);
    };
    const int n_theta = 512;
    const double dth = (tmax - tmin) / n_theta;
    cplx acc = 0.0;
    for (int i = 0; i < n_theta; ++i) {
        const double t = tmin + (i + 0.5) * dth;
        const double ct = std::cos(t), st = std::sin(t);
        double r_in = a1 / std::max(ct, 1e-300);
        if (st > 1e-300) r_in = std::max(r_in, a2 / st);
        double r_out = b1 / std::max(ct, 1e-300);
        if (st > 1e-300) r_out = std::min(r_out, b2 / st);
        r_in = std::clamp(r_in, 0.0, 1.0);
        r_out = std::clamp(r_out, 0.0, 1.0);
        if (r_out > r_in) acc += antideriv(r_out) - antideriv(r_in);
    }
    return coeff * acc * dth / (h * h);
}

struct ball_power_params {
    cplx coeff;
    cplx expo;
};

ball_power_params kernel_power_form(const kernel_spec& spec) {
    const alpha_params& p = spec.params;
    switch (spec.family) {
        case kernel_family::standard: {
            const cplx lam = p.lambda();
            return {std::exp(-lam * std::log(kPi)) * gamma_reciprocal(1.0 - lam), lam};
        }
        case kernel_family::natural:
            return {1.0, 1.0 - p.alpha / static_cast<double>(p.n)};
        case kernel_family::flat: {
            const cplx del = p.delta();
            return {std::exp(-del * std::log(kPi)) * gamma_reciprocal(1.0 - del), del};
        }
        case kernel_family::s_weighted: {
            const cplx e = p.lambda() + spec.s;
            return {std::exp(-e * std::log(kPi)) * gamma_reciprocal(1.0 - e), e};
        }
        default:
            throw domain_error("sample_kernel: family has no physical-space form");
    }
}

}  // namespace

sampled_field sample_kernel(const kernel_spec& spec, const grid_spec& g) {
    spec.validate_physical();
    g.validate();
    if (g.n != 2 || spec.params.n != 2) {
        throw domain_error("sample_kernel: cell-averaged sampling is implemented for n = 2");
    }
    const auto [coeff, expo] = kernel_power_form(spec);
    const double h = g.spacing();
    const int n_ax = g.points_per_axis;
    // 3-point Gauss per axis on the smooth region
    const double gx[3] = {-std::sqrt(3.0 / 5.0) * h / 2, 0.0, std::sqrt(3.0 / 5.0) * h / 2};
    const double gw[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};

    sampled_field out(g);
    parallel_for(n_ax, 0, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t a = lo; a < hi; ++a) {
            const double x0 = g.axis_coord(static_cast<int>(a));
            for (int b = 0; b < n_ax; ++b) {
                const double x1 = g.axis_coord(b);
                const double r = std::hypot(x0, x1);
                cplx v = 0.0;
                if (std::abs(r - 1.0) <= 2.5 * h) {
                    v = ring_cell_average(x0, x1, h, expo, coeff);
                } else if (r < 1.0 + h) {
                    for (int i = 0; i < 3; ++i)
                        for (int j = 0; j < 3; ++j) {
                            const double xx = x0 + gx[i], yy = x1 + gx[j];
                            const double r2 = xx * xx + yy * yy;
                            if (r2 < 1.0)
                                v += gw[i] * gw[j] * coeff *
                                     std::exp(-expo * std::log1p(-r2));
                        }
                }
                out[a * n_ax + b] = v;
            }
        }
    });
    return out;
}

transform_check_report transform_check(const kernel_spec& spec, const grid_spec& g,
                                       double max_freq) {
    const sampled_field sampled = sample_kernel(spec, g);
    sampled_field khat = forward_transform(sampled);
    const std::vector<cplx> table = multiplier_on_lattice(g, multiplier(spec));

    // deconvolve the per-axis cell box transfer function sinc(pi xi h)
    const int n_ax = g.points_per_axis;
    const double h = g.spacing();
    std::vector<double> sinc_ax(n_ax);
    for (int j = 0; j < n_ax; ++j) {
        const double t = kPi * g.freq_coord(j) * h;
        sinc_ax[j] = t == 0.0 ? 1.0 : std::sin(t) / t;
    }

    transform_check_report rep{0.0, 0.0, 0.0, 0};
    double sup_profile = 0.0;
    const double band_sq = max_freq * max_freq;
    const double index_re = multiplier(spec).index().real();
    const double prof0 = std::abs(table[0]);
    // asymptotic envelope sqrt(2/(pi 2 pi rho)) rho^{-Re index} of the profile
    auto envelope = [&](double rho) {
        if (rho <= 0.25) return prof0;
        return std::sqrt(1.0 / (kPi * kPi * rho)) * std::pow(rho, -index_re);
    };
    std::size_t idx = 0;
    for (int a = 0; a < n_ax; ++a) {
        const double xa = g.freq_coord(a);
        const long ka = g.freq_int(a);
        for (int b = 0; b < n_ax; ++b, ++idx) {
            const double xb = g.freq_coord(b);
            if (xa * xa + xb * xb > band_sq) continue;
            const long kb = g.freq_int(b);
            const cplx prof = table[ka * ka + kb * kb];
            const cplx got = khat[idx] / (sinc_ax[a] * sinc_ax[b]);
            const double err = std::abs(got - prof);
            rep.max_abs = std::max(rep.max_abs, err);
            rep.envelope_rel = std::max(
                rep.envelope_rel, err / std::max(envelope(std::hypot(xa, xb)), 1e-300));
            sup_profile = std::max(sup_profile, std::abs(prof));
            ++rep.compared_modes;
        }
    }
    rep.sup_rel = rep.max_abs / std::max(sup_profile, 1e-300);
    return rep;
}

void save_field(const sampled_field& f, const std::string& path) {
    std::FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp) throw io_error("save_field: cannot open " + path);
    const std::uint32_t n = static_cast<std::uint32_t>(f.grid().n);
    const std::uint32_t ppa = static_cast<std::uint32_t>(f.grid().points_per_axis);
    const double hw = f.grid().half_width;
    const char zeros[8] = {0};
    bool ok = std::fwrite(kFieldMagic, 1, 8, fp) == 8 &&
              std::fwrite(&n, 4, 1, fp) == 1 && std::fwrite(&ppa, 4, 1, fp) == 1 &&
              std::fwrite(&hw, 8, 1, fp) == 1 && std::fwrite(zeros, 1, 8, fp) == 8;
    ok = ok && std::fwrite(f.values().data(), sizeof(cplx), f.size(), fp) == f.size();
    std::fclose(fp);
    if (!ok) throw io_error("save_field: short write to " + path);
}

sampled_field load_field(const std::string& path) {
    std::FILE* fp = std::fopen(path.c_str(), "rb");
    if (!fp) throw io_error("load_field: cannot open " + path);
    char magic[8];
    std::uint32_t n = 0, ppa = 0;
    double hw = 0.0;
    char reserved[8];
    bool ok = std::fread(magic, 1, 8, fp) == 8 && std::fread(&n, 4, 1, fp) == 1 &&
              std::fread(&ppa, 4, 1, fp) == 1 && std::fread(&hw, 8, 1, fp) == 1 &&
              std::fread(reserved, 1, 8, fp) == 8;
    if (!ok || std::memcmp(magic, kFieldMagic, 8) != 0) {
        std::fclose(fp);
        throw io_error("load_field: " + path + " is not a field file");
    }
    grid_spec g{static_cast<int>(n), static_cast<int>(ppa), hw};
    try {
        g.validate();
    } catch (const domain_error& e) {
        std::fclose(fp);
        throw io_error("load_field: bad header in " + path + ": " + e.what());
    }
    std::vector<cplx> values(g.size());
    ok = std::fread(values.data(), sizeof(cplx), values.size(), fp) == values.size();
    std::fclose(fp);
    if (!ok) throw io_error("load_field: truncated data in " + path);
    return sampled_field(g, std::move(values));
}

}  // namespace ssops
