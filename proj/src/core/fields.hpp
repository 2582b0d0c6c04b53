#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "core/common.hpp"
#include "core/kernels.hpp"

namespace ssops {

// Periodic sampling grid on [-L, L)^n. Nodes sit at cell centers,
// x_j = -L + (j + 1/2) h, so no node lands exactly on |x| = 1.
struct grid_spec {
    int n = 2;
    int points_per_axis = 512;
    double half_width = 4.0;

    double spacing() const { return 2.0 * half_width / points_per_axis; }
    std::size_t size() const;
    double axis_coord(int j) const { return -half_width + (j + 0.5) * spacing(); }
    // signed integer frequency of storage index j (FFT order)
    int freq_int(int j) const { return j < points_per_axis / 2 ? j : j - points_per_axis; }
    // physical frequency xi = k/(2L)
    double freq_coord(int j) const { return freq_int(j) / (2.0 * half_width); }

    void validate() const;
    bool operator==(const grid_spec&) const = default;
};

class sampled_field {
  public:
    sampled_field() = default;
    explicit sampled_field(const grid_spec& g);
    sampled_field(const grid_spec& g, std::vector<cplx> values);

    const grid_spec& grid() const { return grid_; }
    std::span<const cplx> values() const { return values_; }
    std::span<cplx> values() { return values_; }
    cplx& operator[](std::size_t i) { return values_[i]; }
    const cplx& operator[](std::size_t i) const { return values_[i]; }
    std::size_t size() const { return values_.size(); }

  private:
    grid_spec grid_;
    std::vector<cplx> values_;
};

// Fills a field from a function of the physical coordinates.
sampled_field field_from_function(const grid_spec& g,
                                  const std::function<cplx(std::span<const double>)>& fn);

// Continuous-transform approximation at the lattice frequencies,
// F(xi_k) = h^n sum_j f(x_j) e^{-2 pi i x_j . xi_k}, FFT storage order.
sampled_field forward_transform(const sampled_field& f);
sampled_field inverse_transform(const sampled_field& fhat);

// Plain cyclic index-space FFTs (no offset phases, no h^n weight); used for
// discrete convolutions against kernels sampled on the integer lattice.
void fft_raw(const grid_spec& g, std::span<const cplx> in, std::span<cplx> out, bool forward);

double lp_norm(const sampled_field& f, double p);
sampled_field apply_multiplier(const sampled_field& f, const radial_multiplier& m);
sampled_field sobolev_lift(const sampled_field& f, double s);
double sobolev_norm(const sampled_field& f, double p, double s);

// Evaluates m at every lattice radius of g; values indexed by the integer
// squared frequency |k|^2 (entries absent from the lattice are left as 0).
std::vector<cplx> multiplier_on_lattice(const grid_spec& g, const radial_multiplier& m);

// sup over lattice radii of |a(rho) b(rho)|: the grid L^2 operator norm of the
// composed multiplier.
double composed_l2_bound(const grid_spec& g, const radial_multiplier& a,
                         const radial_multiplier& b);

// Flat binary field file: 32-byte header (magic "SSOPFLD1", u32 n,
// u32 points_per_axis, f64 half_width, 8 reserved zero bytes) followed by
// little-endian f64 (re, im) pairs in row-major axis order.
void save_field(const sampled_field& f, const std::string& path);
sampled_field load_field(const std::string& path);

// Cell-averaged sampling of a physical kernel (n = 2). Smooth cells use a
// 3x3 Gauss product rule; cells within a few spacings of the singular ring
// |x| = 1 are integrated with the exact radial antiderivative of
// (1-r^2)^{-e} r against a dense angular rule. Cell averages (rather than
// point values) keep the slowly-decaying ring contribution out of the
// transform's alias error.
sampled_field sample_kernel(const kernel_spec& spec, const grid_spec& g);

struct transform_check_report {
    double sup_rel;        // max |DFT(K) - profile| / max |profile| over the band
    double max_abs;        // max |DFT(K) - profile| over the band
    double envelope_rel;   // max |DFT(K) - profile| / local envelope scale
    long compared_modes;
};

// Compares the discrete transform of the cell-averaged kernel samples
// (deconvolved by the cell box transfer function) against multiplier(spec)
// at lattice frequencies |xi| <= max_freq.
transform_check_report transform_check(const kernel_spec& spec, const grid_spec& g,
                                       double max_freq);

}  // namespace ssops
