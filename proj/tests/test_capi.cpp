// Exercises the public shared-library surface only (ssops/ssops.h).
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "ssops/ssops.h"

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("capi: version and thread resolution") {
    CHECK(std::strlen(ssops_version()) > 0);
    CHECK(ssops_resolve_threads(3) == 3);
    CHECK(ssops_resolve_threads(0) >= 1);
}

TEST_CASE("capi: gamma and its poles") {
    double re = 0, im = 0;
    CHECK(ssops_gamma(0.5, 0.0, &re, &im) == SSOPS_OK);
    CHECK(std::abs(re - std::sqrt(kPi)) < 1e-13);
    CHECK(ssops_gamma(-2.0, 0.0, &re, &im) == SSOPS_ERR_POLE);
    CHECK(std::strlen(ssops_last_error()) > 0);
    CHECK(ssops_gamma_reciprocal(-2.0, 0.0, &re, &im) == SSOPS_OK);
    CHECK(re == 0.0);
}

TEST_CASE("capi: bessel surface") {
    ssops_bessel_result r{};
    CHECK(ssops_bessel_j(0.0, 0.0, 1.0, &r) == SSOPS_OK);
    CHECK(std::abs(r.re - 0.76519768655796655145) < 1e-11);
    CHECK(r.est_abs_error < 1e-9);
    CHECK(r.method == SSOPS_BESSEL_QUADRATURE);
    CHECK(ssops_bessel_j(0.0, 0.0, -1.0, &r) == SSOPS_ERR_DOMAIN);
    CHECK(ssops_bessel_j(0.0, 0.0, 1.0, nullptr) == SSOPS_ERR_INVALID);

    double re = 0, im = 0;
    CHECK(ssops_normalized_bessel(0.0, 0.0, 0.0, &re, &im) == SSOPS_OK);
    CHECK(std::abs(re - 1.0) < 1e-14);
    CHECK(ssops_bessel_asymptotic(0.5, 0.0, 10.0, &re, &im) == SSOPS_OK);
    CHECK(std::abs(re - std::sqrt(2.0 / (kPi * 10.0)) * std::cos(10.0 - kPi / 2.0)) <
          1e-14);
}

TEST_CASE("capi: kernel and multiplier handles") {
    ssops_kernel_spec spec{SSOPS_KERNEL_STANDARD, 1.5, 0.0, 3, 0.0, 0.0, 0.0};
    ssops_multiplier* m = nullptr;
    REQUIRE(ssops_multiplier_create(&spec, &m) == SSOPS_OK);
    double re = 0, im = 0;
    CHECK(ssops_multiplier_eval(m, 0.25, &re, &im) == SSOPS_OK);
    CHECK(std::abs(re - 4.0 / kPi) < 1e-12);
    CHECK(ssops_multiplier_decay_exponent(m) == doctest::Approx(1.0));
    CHECK(ssops_multiplier_eval(m, -1.0, &re, &im) == SSOPS_ERR_DOMAIN);
    ssops_multiplier_destroy(m);

    // physical evaluation refused at Re lambda = 1
    const double x[3] = {0.1, 0.1, 0.1};
    CHECK(ssops_kernel_value(&spec, x, 3, &re, &im) == SSOPS_ERR_DOMAIN);
    ssops_kernel_spec ok{SSOPS_KERNEL_NATURAL, 1.0, 0.0, 2, 0.0, 0.0, 0.0};
    const double x2[2] = {0.5, 0.0};
    CHECK(ssops_kernel_value(&ok, x2, 2, &re, &im) == SSOPS_OK);
    CHECK(std::abs(re - 2.0 / std::sqrt(3.0)) < 1e-13);
    ssops_kernel_spec bad = ok;
    bad.family = 99;
    CHECK(ssops_multiplier_create(&bad, &m) == SSOPS_ERR_DOMAIN);
}

TEST_CASE("capi: field lifecycle, norms, io") {
    ssops_field* f = nullptr;
    REQUIRE(ssops_field_create(2, 64, 2.0, &f) == SSOPS_OK);
    CHECK(ssops_field_dim(f) == 2);
    CHECK(ssops_field_points_per_axis(f) == 64);
    CHECK(ssops_field_half_width(f) == 2.0);
    REQUIRE(ssops_field_count(f) == 64u * 64u);

    std::vector<double> vals(2 * 64 * 64, 0.0);
    for (std::size_t i = 0; i < vals.size(); i += 2) vals[i] = 1.0;
    CHECK(ssops_field_set_values(f, vals.data(), 64 * 64) == SSOPS_OK);
    CHECK(ssops_field_set_values(f, vals.data(), 17) == SSOPS_ERR_INVALID);
    double norm = 0.0;
    CHECK(ssops_field_lp_norm(f, 2.0, &norm) == SSOPS_OK);
    CHECK(norm == doctest::Approx(4.0));  // sqrt(measure of [-2,2)^2)
    CHECK(ssops_field_lp_norm(f, 0.5, &norm) == SSOPS_ERR_DOMAIN);

    CHECK(ssops_field_save(f, "capi_field.fld") == SSOPS_OK);
    ssops_field* g = nullptr;
    CHECK(ssops_field_load("capi_field.fld", &g) == SSOPS_OK);
    std::vector<double> back(vals.size());
    CHECK(ssops_field_get_values(g, back.data(), 64 * 64) == SSOPS_OK);
    CHECK(std::memcmp(back.data(), vals.data(), vals.size() * sizeof(double)) == 0);
    ssops_field_destroy(g);
    ssops_field_destroy(f);
    std::remove("capi_field.fld");
    CHECK(ssops_field_load("missing.fld", &g) == SSOPS_ERR_IO);
    CHECK(ssops_field_create(2, 100, 2.0, &f) == SSOPS_ERR_DOMAIN);  // not a power of 2
}

TEST_CASE("capi: sobolev lift round trip through handles") {
    ssops_field* f = nullptr;
    REQUIRE(ssops_field_create(2, 64, 2.0, &f) == SSOPS_OK);
    std::vector<double> vals(2 * 64 * 64);
    for (std::size_t i = 0; i < vals.size(); ++i) {
        vals[i] = std::sin(0.37 * static_cast<double>(i % 101));
    }
    REQUIRE(ssops_field_set_values(f, vals.data(), 64 * 64) == SSOPS_OK);

    ssops_field* lifted = nullptr;
    REQUIRE(ssops_field_sobolev_lift(f, 1.5, &lifted) == SSOPS_OK);
    ssops_kernel_spec pot{SSOPS_KERNEL_BESSEL_POTENTIAL, 0.0, 0.0, 2, 1.5, 0.0, 0.0};
    ssops_multiplier* m = nullptr;
    REQUIRE(ssops_multiplier_create(&pot, &m) == SSOPS_OK);
    ssops_field* back = nullptr;
    REQUIRE(ssops_field_apply_multiplier(lifted, m, &back) == SSOPS_OK);
    std::vector<double> out(vals.size());
    REQUIRE(ssops_field_get_values(back, out.data(), 64 * 64) == SSOPS_OK);
    double worst = 0.0;
    for (std::size_t i = 0; i < vals.size(); ++i)
        worst = std::max(worst, std::abs(out[i] - vals[i]));
    CHECK(worst < 1e-10);

    double norm_direct = 0.0, norm_lift = 0.0;
    CHECK(ssops_field_sobolev_norm(f, 2.0, 1.5, &norm_direct) == SSOPS_OK);
    CHECK(ssops_field_lp_norm(lifted, 2.0, &norm_lift) == SSOPS_OK);
    CHECK(norm_direct == doctest::Approx(norm_lift).epsilon(1e-12));

    ssops_multiplier_destroy(m);
    ssops_field_destroy(back);
    ssops_field_destroy(lifted);
    ssops_field_destroy(f);
}

TEST_CASE("capi: region verdicts") {
    ssops_region_verdict v{};
    REQUIRE(ssops_region_check(SSOPS_REGION_THEOREM_ONE, 3, 0.5, 1.5, 4.0 / 3.0, 4.0,
                               &v) == SSOPS_OK);
    CHECK(v.admissible == 1);
    REQUIRE(v.n_constraints == 2);
    CHECK(v.constraints[1].lo == doctest::Approx(2.0 / 3.0));
    CHECK(v.constraints[1].hi == doctest::Approx(5.0 / 6.0));
    CHECK(std::string(v.constraints[0].name).find("alpha/n") != std::string::npos);
    CHECK(ssops_region_check(SSOPS_REGION_THEOREM_ONE, 3, 0.0, 1.5, 2.0, 4.0, &v) ==
          SSOPS_ERR_DOMAIN);
    CHECK(ssops_region_check(99, 3, 0.5, 1.5, 2.0, 4.0, &v) == SSOPS_ERR_DOMAIN);
}

TEST_CASE("capi: report runners") {
    ssops_report* rep = nullptr;
    REQUIRE(ssops_run_region_polygon(2, 0.5, 10, &rep) == SSOPS_OK);
    CHECK(ssops_report_ncols(rep) == 5);
    CHECK(ssops_report_nrows(rep) == 11);
    CHECK(std::string(ssops_report_col_name(rep, 1)) == "inv_p_lower");
    // out-of-range accessors are harmless
    CHECK(ssops_report_cell(rep, 99, 0) == 0.0);
    CHECK(std::string(ssops_report_col_name(rep, 99)).empty());
    ssops_report_destroy(rep);

    ssops_kernel_spec spec{SSOPS_KERNEL_STANDARD, 1.0, 0.0, 2, 0.0, 0.0, 0.0};
    REQUIRE(ssops_run_multiplier_profile(&spec, 0.0, 8.0, 33, 0, &rep) == SSOPS_OK);
    CHECK(ssops_report_nrows(rep) == 33);
    CHECK(ssops_report_nscalars(rep) == 1);
    CHECK(ssops_report_scalar(rep, 0) == doctest::Approx(0.75));
    ssops_report_destroy(rep);

    REQUIRE(ssops_run_theta_check(1.0, 0.0, 1.0, 3, 50, &rep) == SSOPS_OK);
    for (int i = 1; i < 4; ++i) CHECK(ssops_report_scalar(rep, i) < 1e-9);
    ssops_report_destroy(rep);

    REQUIRE(ssops_run_inclusion_check(2, 3, 2000, 7, &rep) == SSOPS_OK);
    CHECK(ssops_report_scalar(rep, 0) == 0.0);
    ssops_report_destroy(rep);

    const double scales[2] = {1.0, 0.5};
    REQUIRE(ssops_run_scan(2, 1.0, 0.5, 4.0 / 3.0, 4.0, SSOPS_FAMILY_GAUSSIAN_DILATES,
                           scales, 2, 1, 64, 2.0, 0, 0, &rep) == SSOPS_OK);
    CHECK(ssops_report_nrows(rep) == 2);
    CHECK(ssops_report_cell(rep, 0, 3) > 0.0);
    ssops_report_destroy(rep);

    CHECK(ssops_run_scan(2, 1.0, 0.5, 2.0, 4.0, SSOPS_FAMILY_GAUSSIAN_DILATES, scales, 2,
                         1, 64, 2.0, 0, 0, &rep) == SSOPS_ERR_DOMAIN);
}

TEST_CASE("capi: wave solve through files") {
    // build a forcing directory through the field API
    ssops_field* frame = nullptr;
    REQUIRE(ssops_field_create(2, 32, 2.0, &frame) == SSOPS_OK);
    std::vector<double> vals(2 * 32 * 32, 0.0);
    for (std::size_t i = 0; i < vals.size(); i += 2) vals[i] = 1.0;
    REQUIRE(ssops_field_set_values(frame, vals.data(), 32 * 32) == SSOPS_OK);
    char name[64];
    for (int k = 0; k < 5; ++k) {
        std::snprintf(name, sizeof(name), "frame_%04d.fld", k);
        REQUIRE(ssops_field_save(frame, name) == SSOPS_OK);
    }
    ssops_field_destroy(frame);
    {
        std::FILE* mf = std::fopen("manifest.json", "w");
        std::fputs("{\"dt\": 0.015625, \"count\": 5}\n", mf);
        std::fclose(mf);
    }
    CHECK(ssops_wave_solve_file("manifest.json", 4 * 0.015625, "wave_out.fld") ==
          SSOPS_OK);
    ssops_field* u = nullptr;
    REQUIRE(ssops_field_load("wave_out.fld", &u) == SSOPS_OK);
    double norm = 0.0;
    CHECK(ssops_field_lp_norm(u, 2.0, &norm) == SSOPS_OK);
    CHECK(norm > 0.0);
    ssops_field_destroy(u);
    CHECK(ssops_wave_solve_file("manifest.json", 0.99, "wave_out.fld") ==
          SSOPS_ERR_DOMAIN);  // off-lattice time refused
    for (int k = 0; k < 5; ++k) {
        std::snprintf(name, sizeof(name), "frame_%04d.fld", k);
        std::remove(name);
    }
    std::remove("manifest.json");
    std::remove("wave_out.fld");
}
