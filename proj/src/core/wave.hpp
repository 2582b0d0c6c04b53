#pragma once

#include <string>
#include <vector>

#include "core/common.hpp"
#include "core/fields.hpp"

namespace ssops {

// Forcing f(x, t_k) on a uniform time lattice t_k = k dt.
struct wave_forcing {
    grid_spec grid;
    double dt = 0.0;
    std::vector<sampled_field> frames;

    void validate() const;
    double max_time() const { return dt * (frames.size() - 1); }
};

// Frequency-domain Duhamel solver for u'' - Delta u = f with zero initial
// data: u_hat(xi, t) = Int_0^t sin((t-s) rho)/rho f_hat(xi, s) ds, trapezoid
// in s on the forcing lattice; the rho = 0 factor is the limit (t-s).
// Caches the frame transforms, so repeated solves are cheap.
class wave_solver {
  public:
    explicit wave_solver(wave_forcing forcing);

    const wave_forcing& forcing() const { return forcing_; }
    // t must lie on the time lattice (interpolation is refused).
    sampled_field solve(double t) const;
    // same in the frequency domain (FFT storage order)
    sampled_field solve_hat(double t) const;

  private:
    std::size_t lattice_index(double t) const;
    wave_forcing forcing_;
    std::vector<sampled_field> frame_hats_;
    std::vector<double> mode_rho_;  // |xi| per lattice point
};

sampled_field solve_wave(const wave_forcing& forcing, double t);

// ||u(.,t)||_q divided by Int_0^t ||f(., t-r)||_{L^p_s} r^{-(n-1)/(n+1)} dr.
// The singular weight is integrated exactly on the graded mesh r = tau^{(n+1)/2}
// (uniform in tau), with the frame norms interpolated linearly in time.
// Requires (p, q, s) admissible for theorem_one at alpha = 2n/(n+1).
// Returns 0 for zero forcing.
double duhamel_estimate_check(const wave_forcing& forcing, double t, double p, double q,
                              double s);

// Forcing import: JSON manifest {"dt": , "count": , "pattern"?: "frame_%04d.fld"}
// next to the field files (fields module binary format).
wave_forcing load_forcing(const std::string& manifest_path);

// Built-in reproducible forcing: spatial Gaussian of the given width times the
// time bump sin^2(pi s / t_off) that switches off at t_off.
wave_forcing gaussian_bump_forcing(const grid_spec& g, double dt, int count, double width,
                                   double t_off);

}  // namespace ssops
