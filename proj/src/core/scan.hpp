#pragma once

#include <string>
#include <vector>

#include "core/common.hpp"
#include "core/fields.hpp"

namespace ssops {

enum class family_kind { gaussian_dilates, ball_indicators, knapp_caps, random_bumps };

struct test_family {
    family_kind kind = family_kind::gaussian_dilates;
    std::vector<double> scales;
    std::uint64_t seed = 1;
};

// Deterministic member construction. Gaussians and balls dilate in physical
// space; knapp caps live in a frequency cap of radial width ~scale and angular
// width ~sqrt(scale) around |xi| = 1/scale along the diagonal direction (the
// classical near-extremizer shape; widths and direction are a modeling choice,
// the diagonal keeps the cap inside the lattice); random bumps are sums of a
// few Gaussians with seeded centers and widths ~scale.
sampled_field make_family_member(family_kind kind, double scale, std::uint64_t seed,
                                 int member_index, const grid_spec& g);

// Throws resolution_error when the grid has fewer than 8 cells across the
// member's feature size.
void check_family_resolution(family_kind kind, double scale, const grid_spec& g);

struct scan_row {
    double scale;
    double norm_q;    // ||f * Omega^alpha||_q
    double norm_ps;   // ||f||_{L^p_s}
    double ratio;
};

struct scan_report {
    std::vector<scan_row> rows;
    double max_ratio = 0.0;
    double min_ratio = 0.0;
    double trend_slope = 0.0;  // least-squares log ratio vs log scale
};

struct scan_params {
    int n = 2;
    double alpha = 1.0;
    double s = 0.5;
    double p = 2.0;
    double q = 2.0;
    bool diagnostic_outside = false;  // skip the admissibility gate, report anyway
};

scan_report run_scan(const scan_params& params, const test_family& family,
                     const grid_spec& grid, int threads = 0);

}  // namespace ssops
