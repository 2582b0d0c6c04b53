#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "core/common.hpp"
#include "core/fields.hpp"

namespace ssops {

// Dyadic shell S_ell = { u : 2^{-ell-1} <= 1 - |u| < 2^{-ell} }, ell >= 0.
// Returns -1 when no shell contains the point (|u| >= 1 or 1 - |u| >= 1).
int shell_index(double u_norm);
bool shell_contains(int ell, double u_norm);

// Quasi-uniform direction set on S^{n-1} with verified chordal covering
// radius <= 2^{-rho}: uniform angles for n = 2, a Fibonacci point set
// (covering verified by random sampling) for n = 3.
struct sphere_grid {
    int n = 2;
    int rho = 0;
    std::vector<std::array<double, 3>> directions;  // third component 0 for n = 2
    double covering_radius = 0.0;
    double cardinality_constant = 0.0;  // |directions| / 2^{rho(n-1)}
};

sphere_grid build_sphere_grid(int n, int rho, int verify_samples = 100000,
                              std::uint64_t seed = 0x5e15d2c9u);

// Narrow cone of chordal half-width 2^{-rho} around dir, and the rectangle
// centered at dir with axial side 5*2^{-ell} and transverse sides 5*2^{-rho}.
struct cone_rectangle {
    int n = 2;
    int rho = 0;
    int ell = 0;
    std::array<double, 3> dir{1.0, 0.0, 0.0};

    bool cone_contains(std::span<const double> u) const;
    bool rect_contains(std::span<const double> u) const;
    double rect_measure() const;  // 5^n 2^{-ell} 2^{-rho(n-1)}, exact
};

// Samples S_ell ∩ Γ^v uniformly for every 0 <= ell <= rho (random v per
// sample) and counts points that escape the rectangle. The inclusion claim
// makes the contract 0.
int shell_cone_inclusion_check(int n, int rho, int samples, std::uint64_t seed);

// (M^v_rho f)(x): sup over 0 <= ell <= rho of the normalized shell-cone
// average, by grid quadrature over cells whose centers satisfy both
// memberships. x is a storage index tuple (unused components ignored).
double directional_maximal(const sampled_field& f, const sphere_grid& grid, int v,
                           std::array<int, 3> x_index);

// (M_rho f)(x) = 2^{-rho(n-1)} sum_v (M^v_rho f)(x) at every grid point.
sampled_field averaged_maximal(const sampled_field& f, const sphere_grid& grid,
                               int threads = 0);
// Shares the per-(v, ell) kernel transforms across several inputs.
std::vector<sampled_field> averaged_maximal_batch(std::span<const sampled_field> fs,
                                                  const sphere_grid& grid,
                                                  int threads = 0);

// Partial-sum fractional integral I^rho_alpha f: the shell-truncated natural
// kernel convolved with f. Monotone nondecreasing in rho for f >= 0.
sampled_field partial_operator(const sampled_field& f, double alpha, int rho);

// One field per shell: Delta_ell I f for ell = 0..rho.
std::vector<sampled_field> shell_integrals(const sampled_field& f, double alpha, int rho);

// sup over grid points with (M_rho f)(x) > 0 of
//   (I^rho_alpha f)(x) / [ (M_rho f)^{p/q}(x) ||f||_p^{1-p/q} ].
// Requires alpha/n = 1/p - 1/q with 1 < p < q < inf, f >= 0. Returns 0 for
// the zero field.
double hedberg_check(const sampled_field& f, double alpha, double p, double q, int rho,
                     int threads = 0);

// sigma(x) from the Hedberg split: p * log2(M / ||f||_p); -inf when M = 0.
double hedberg_sigma(double maximal_value, double norm_p, double p);

}  // namespace ssops
