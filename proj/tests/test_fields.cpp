#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "core/fields.hpp"

using namespace ssops;

namespace {

sampled_field random_field(const grid_spec& g, std::uint64_t seed) {
    rng gen(seed);
    sampled_field f(g);
    for (cplx& v : f.values()) v = cplx(gen.normal(), gen.normal());
    return f;
}

double max_abs_diff(const sampled_field& a, const sampled_field& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

const grid_spec g256{2, 256, 2.0};

}  // namespace

TEST_CASE("grid_spec: validation") {
    CHECK_THROWS_AS((grid_spec{4, 64, 2.0}).validate(), domain_error);
    CHECK_THROWS_AS((grid_spec{2, 100, 2.0}).validate(), domain_error);
    CHECK_THROWS_AS((grid_spec{2, 64, 1.5}).validate(), domain_error);
    CHECK_NOTHROW((grid_spec{3, 64, 2.0}).validate());
    // no node lands on |x| = 1
    grid_spec g{2, 128, 2.0};
    for (int j = 0; j < 128; ++j) CHECK(std::abs(std::abs(g.axis_coord(j)) - 1.0) > 1e-9);
}

TEST_CASE("lp_norm: zero field and domain errors") {
    sampled_field z(g256);
    CHECK(lp_norm(z, 1.0) == 0.0);
    CHECK(lp_norm(z, 2.0) == 0.0);
    CHECK(lp_norm(z, std::numeric_limits<double>::infinity()) == 0.0);
    CHECK_THROWS_AS((void)lp_norm(z, 0.5), domain_error);
}

TEST_CASE("lp_norm: disk area and gaussian closed forms") {
    const grid_spec g{2, 512, 2.0};
    const sampled_field ball = field_from_function(g, [](std::span<const double> x) {
        return cplx(x[0] * x[0] + x[1] * x[1] <= 1.0 ? 1.0 : 0.0, 0.0);
    });
    CHECK(lp_norm(ball, 1.0) == doctest::Approx(kPi).epsilon(0.02));

    const sampled_field gauss = field_from_function(g, [](std::span<const double> x) {
        return cplx(std::exp(-kPi * (x[0] * x[0] + x[1] * x[1])), 0.0);
    });
    CHECK(lp_norm(gauss, 2.0) == doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-3));
    // the nearest node to the origin sits at (h/2, h/2)
    const double h = g.spacing();
    CHECK(lp_norm(gauss, std::numeric_limits<double>::infinity()) ==
          doctest::Approx(std::exp(-kPi * h * h / 2.0)).epsilon(1e-9));
}

TEST_CASE("transforms: plancherel and the self-dual gaussian") {
    const sampled_field f = random_field(g256, 11);
    const sampled_field fhat = forward_transform(f);
    double freq_sq = 0.0;
    for (const cplx& v : fhat.values()) freq_sq += std::norm(v);
    const double freq_l2 =
        std::sqrt(freq_sq) * std::pow(1.0 / (2.0 * g256.half_width), g256.n / 2.0);
    CHECK(freq_l2 == doctest::Approx(lp_norm(f, 2.0)).epsilon(1e-10));

    // e^{-pi|x|^2} is self-dual under this convention (wide box so the
    // spatial tail is negligible)
    const grid_spec gwide{2, 256, 4.0};
    const sampled_field gauss = field_from_function(gwide, [](std::span<const double> x) {
        return cplx(std::exp(-kPi * (x[0] * x[0] + x[1] * x[1])), 0.0);
    });
    const sampled_field ghat = forward_transform(gauss);
    const int n_ax = gwide.points_per_axis;
    for (int a : {0, 3, 17, n_ax - 2}) {
        for (int b : {0, 5, n_ax / 2}) {
            const double xa = gwide.freq_coord(a), xb = gwide.freq_coord(b);
            const double want = std::exp(-kPi * (xa * xa + xb * xb));
            CHECK(std::abs(ghat[static_cast<std::size_t>(a) * n_ax + b] - cplx(want)) < 1e-10);
        }
    }

    // round trip
    const sampled_field back = inverse_transform(fhat);
    CHECK(max_abs_diff(back, f) < 1e-12 * lp_norm(f, std::numeric_limits<double>::infinity()) * 10);
}

TEST_CASE("apply_multiplier: identity and linearity") {
    const radial_multiplier one = radial_multiplier::potential_type(0.0);
    const sampled_field f = random_field(g256, 5);
    const sampled_field same = apply_multiplier(f, one);
    CHECK(max_abs_diff(same, f) < 1e-12 * 10);

    kernel_spec spec{kernel_family::standard, {1.0, 2}, 0.0, 0.0};
    const radial_multiplier m = multiplier(spec);
    const sampled_field a = random_field(g256, 6);
    const sampled_field b = random_field(g256, 7);
    sampled_field combo(g256);
    for (std::size_t i = 0; i < combo.size(); ++i) combo[i] = 2.0 * a[i] - 0.5 * b[i];
    const sampled_field lhs = apply_multiplier(combo, m);
    const sampled_field ma = apply_multiplier(a, m);
    const sampled_field mb = apply_multiplier(b, m);
    double worst = 0.0;
    for (std::size_t i = 0; i < lhs.size(); ++i)
        worst = std::max(worst, std::abs(lhs[i] - (2.0 * ma[i] - 0.5 * mb[i])));
    CHECK(worst < 1e-11);
}

TEST_CASE("apply_multiplier: commutes with whole-step translation") {
    kernel_spec spec{kernel_family::standard, {1.2, 2}, 0.0, 0.0};
    const radial_multiplier m = multiplier(spec);
    const sampled_field f = random_field(g256, 9);
    const int n_ax = g256.points_per_axis;
    const int shift = 37;
    sampled_field shifted(g256);
    for (int a = 0; a < n_ax; ++a)
        for (int b = 0; b < n_ax; ++b)
            shifted[static_cast<std::size_t>(a) * n_ax + b] =
                f[static_cast<std::size_t>((a + shift) % n_ax) * n_ax + b];
    const sampled_field lhs = apply_multiplier(shifted, m);
    const sampled_field rhs_full = apply_multiplier(f, m);
    sampled_field rhs(g256);
    for (int a = 0; a < n_ax; ++a)
        for (int b = 0; b < n_ax; ++b)
            rhs[static_cast<std::size_t>(a) * n_ax + b] =
                rhs_full[static_cast<std::size_t>((a + shift) % n_ax) * n_ax + b];
    CHECK(max_abs_diff(lhs, rhs) < 1e-10);
}

TEST_CASE("apply_multiplier: impulse response matches the physical kernel") {
    // impulse of unit mass -> band-limited kernel translate; compare against
    // kernel_value away from the singular ring
    const grid_spec g{2, 512, 2.0};
    const double h = g.spacing();
    sampled_field impulse(g);
    const int j0 = g.points_per_axis / 2;  // node at (h/2, h/2)
    impulse[static_cast<std::size_t>(j0) * g.points_per_axis + j0] = 1.0 / (h * h);
    const double x0 = g.axis_coord(j0);

    kernel_spec spec{kernel_family::standard, {1.0, 2}, 0.0, 0.0};
    const sampled_field out = apply_multiplier(impulse, multiplier(spec));

    // normalized-sup comparison: the band limit rings near the singular
    // ring, so the error is measured against the kernel's sampled sup and the
    // few cells straddling |x - x0| = 1 are excluded from the error scan
    double sup_kernel = 0.0, worst = 0.0;
    for (int a = 0; a < g.points_per_axis; a += 3) {
        for (int b = 0; b < g.points_per_axis; b += 3) {
            const double u[2] = {g.axis_coord(a) - x0, g.axis_coord(b) - x0};
            const double r = std::hypot(u[0], u[1]);
            if (r > 1.5) continue;
            const cplx want = kernel_value(spec, u);
            sup_kernel = std::max(sup_kernel, std::abs(want));
            if (std::abs(r - 1.0) < 0.05) continue;
            const cplx got = out[static_cast<std::size_t>(a) * g.points_per_axis + b];
            worst = std::max(worst, std::abs(got - want));
        }
    }
    CHECK(worst < 0.03 * sup_kernel);
}

TEST_CASE("sobolev_lift: identities") {
    const sampled_field f = random_field(g256, 12);
    CHECK(max_abs_diff(sobolev_lift(f, 0.0), f) == 0.0);

    // lift then bessel potential returns f
    const sampled_field lifted = sobolev_lift(f, 1.0);
    const sampled_field back = apply_multiplier(lifted, radial_multiplier::potential_type(1.0));
    CHECK(max_abs_diff(back, f) < 1e-10);

    // plancherel route for the sobolev norm at p = 2
    const sampled_field gauss = field_from_function(g256, [](std::span<const double> x) {
        return cplx(std::exp(-kPi * (x[0] * x[0] + x[1] * x[1])), 0.0);
    });
    const double direct = sobolev_norm(gauss, 2.0, 1.0);
    const sampled_field ghat = forward_transform(gauss);
    double acc = 0.0;
    const int n_ax = g256.points_per_axis;
    for (int a = 0; a < n_ax; ++a)
        for (int b = 0; b < n_ax; ++b) {
            const double xa = g256.freq_coord(a), xb = g256.freq_coord(b);
            const double w = 1.0 + xa * xa + xb * xb;
            acc += w * std::norm(ghat[static_cast<std::size_t>(a) * n_ax + b]);
        }
    const double plancherel = std::sqrt(acc) / (2.0 * g256.half_width);
    CHECK(direct == doctest::Approx(plancherel).epsilon(1e-6));

    // monotone in s
    CHECK(sobolev_norm(gauss, 2.0, 0.5) <= sobolev_norm(gauss, 2.0, 1.5));
    CHECK(sobolev_norm(gauss, 2.0, 0.0) == doctest::Approx(lp_norm(gauss, 2.0)));
}

TEST_CASE("composed multiplier L2 bound") {
    // ||f * omega_s * sOmega^alpha||_2 <= sup |omega_s_hat * sOmega_hat| ||f||_2
    const double s = 0.4, alpha = 1.1;
    kernel_spec sw{kernel_family::s_weighted, {alpha, 2}, s, 0.0};
    const radial_multiplier pot = radial_multiplier::potential_type(s);
    const radial_multiplier m = multiplier(sw);
    const double bound = composed_l2_bound(g256, pot, m);
    CHECK(std::isfinite(bound));
    CHECK(bound > 0.0);
    const sampled_field f = random_field(g256, 21);
    const sampled_field out = apply_multiplier(apply_multiplier(f, pot), m);
    CHECK(lp_norm(out, 2.0) <= bound * lp_norm(f, 2.0) * (1.0 + 1e-10));
}

TEST_CASE("field file round trip") {
    const grid_spec g{2, 64, 2.0};
    const sampled_field f = random_field(g, 33);
    const std::string path = "test_field_roundtrip.fld";
    save_field(f, path);
    const sampled_field back = load_field(path);
    CHECK(back.grid() == g);
    CHECK(max_abs_diff(back, f) == 0.0);
    std::remove(path.c_str());

    // refuse foreign files
    std::FILE* fp = std::fopen("test_field_bogus.fld", "wb");
    std::fwrite("NOTAFLD0", 1, 8, fp);
    std::fclose(fp);
    CHECK_THROWS_AS((void)load_field("test_field_bogus.fld"), io_error);
    std::remove("test_field_bogus.fld");
    CHECK_THROWS_AS((void)load_field("no_such_file.fld"), io_error);
}

TEST_CASE("transform_check: sampled kernel against the multiplier (small grid)") {
    kernel_spec spec{kernel_family::standard, {1.0, 2}, 0.0, 0.0};
    const transform_check_report rep = transform_check(spec, {2, 256, 2.0}, 16.0);
    CHECK(rep.compared_modes > 1000);
    CHECK(rep.sup_rel < 0.03);
}
