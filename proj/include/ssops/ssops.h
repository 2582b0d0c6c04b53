/* ssops: spherically singular fractional-integration operators.
 *
 * C interface to the ssops core. All functions return an ssops_status;
 * outputs are written through pointers. Objects referenced by opaque handles
 * are created by *_create / loaded by *_load and released by the matching
 * *_destroy. Handles are immutable after creation and safe to share across
 * threads. On failure, ssops_last_error() returns a thread-local message.
 */
#ifndef SSOPS_H
#define SSOPS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#ifndef SSOPS_API
#define SSOPS_API __attribute__((visibility("default")))
#endif

typedef enum {
    SSOPS_OK = 0,
    SSOPS_ERR_DOMAIN = 1,     /* parameters outside an operation's domain */
    SSOPS_ERR_ACCURACY = 2,   /* requested accuracy unreachable */
    SSOPS_ERR_RESOLUTION = 3, /* grid too coarse for the requested feature */
    SSOPS_ERR_POLE = 4,       /* gamma pole */
    SSOPS_ERR_IO = 5,
    SSOPS_ERR_INVALID = 6     /* null pointer, bad enum value, ... */
} ssops_status;

SSOPS_API const char* ssops_last_error(void);
SSOPS_API const char* ssops_version(void);
/* worker count after applying the SSOPS_THREADS default (0 = ask) */
SSOPS_API int ssops_resolve_threads(int requested);

/* ---- special functions -------------------------------------------------- */

typedef enum {
    SSOPS_BESSEL_QUADRATURE = 0,
    SSOPS_BESSEL_RECURRENCE = 1,
    SSOPS_BESSEL_CLOSED_FORM = 2,
    SSOPS_BESSEL_ASYMPTOTIC = 3
} ssops_bessel_method;

typedef struct {
    double re, im;
    int method; /* ssops_bessel_method */
    double est_abs_error;
} ssops_bessel_result;

SSOPS_API ssops_status ssops_gamma(double re, double im, double* out_re, double* out_im);
SSOPS_API ssops_status ssops_gamma_reciprocal(double re, double im, double* out_re,
                                              double* out_im);
/* J_{mu + i nu}(rho), rho > 0 */
SSOPS_API ssops_status ssops_bessel_j(double mu, double nu, double rho,
                                      ssops_bessel_result* out);
/* rho^{-(mu + i nu)} J_{mu + i nu}(rho), rho >= 0 */
SSOPS_API ssops_status ssops_normalized_bessel(double mu, double nu, double rho,
                                               double* out_re, double* out_im);
/* leading large-argument term sqrt(2/(pi rho)) cos(rho - pi w/2 - pi/4) */
SSOPS_API ssops_status ssops_bessel_asymptotic(double mu, double nu, double rho,
                                               double* out_re, double* out_im);

/* ---- kernels and radial multipliers -------------------------------------- */

typedef enum {
    SSOPS_KERNEL_STANDARD = 0,
    SSOPS_KERNEL_NATURAL = 1,
    SSOPS_KERNEL_FLAT = 2,
    SSOPS_KERNEL_S_WEIGHTED = 3,
    SSOPS_KERNEL_BESSEL_POTENTIAL = 4,
    SSOPS_KERNEL_THETA = 5
} ssops_kernel_family;

typedef struct {
    int family; /* ssops_kernel_family */
    double alpha_re, alpha_im;
    int n;      /* dimension >= 2 */
    double s;   /* smoothness weight */
    double z_re, z_im; /* theta interpolation variable */
} ssops_kernel_spec;

/* physical-space kernel value at x (dim entries); exactly 0 for |x| >= 1 */
SSOPS_API ssops_status ssops_kernel_value(const ssops_kernel_spec* spec, const double* x,
                                          int dim, double* out_re, double* out_im);

typedef struct ssops_multiplier ssops_multiplier;
SSOPS_API ssops_status ssops_multiplier_create(const ssops_kernel_spec* spec,
                                               ssops_multiplier** out);
SSOPS_API void ssops_multiplier_destroy(ssops_multiplier* m);
SSOPS_API ssops_status ssops_multiplier_eval(const ssops_multiplier* m, double rho,
                                             double* out_re, double* out_im);
SSOPS_API double ssops_multiplier_decay_exponent(const ssops_multiplier* m);

/* ---- sampled fields ------------------------------------------------------ */

typedef struct ssops_field ssops_field;

/* periodic grid on [-half_width, half_width)^n, points_per_axis a power of
 * two, half_width >= 2; values start at zero */
SSOPS_API ssops_status ssops_field_create(int n, int points_per_axis, double half_width,
                                          ssops_field** out);
SSOPS_API void ssops_field_destroy(ssops_field* f);
SSOPS_API int ssops_field_dim(const ssops_field* f);
SSOPS_API int ssops_field_points_per_axis(const ssops_field* f);
SSOPS_API double ssops_field_half_width(const ssops_field* f);
SSOPS_API size_t ssops_field_count(const ssops_field* f);
/* values interleaved (re, im), row-major axis order, count complex entries */
SSOPS_API ssops_status ssops_field_set_values(ssops_field* f, const double* interleaved,
                                              size_t count);
SSOPS_API ssops_status ssops_field_get_values(const ssops_field* f, double* interleaved,
                                              size_t count);
/* binary field file (magic "SSOPFLD1"; see README for the layout) */
SSOPS_API ssops_status ssops_field_save(const ssops_field* f, const char* path);
SSOPS_API ssops_status ssops_field_load(const char* path, ssops_field** out);

/* p >= 1; pass INFINITY for the sup norm */
SSOPS_API ssops_status ssops_field_lp_norm(const ssops_field* f, double p, double* out);
SSOPS_API ssops_status ssops_field_apply_multiplier(const ssops_field* f,
                                                    const ssops_multiplier* m,
                                                    ssops_field** out);
SSOPS_API ssops_status ssops_field_sobolev_lift(const ssops_field* f, double s,
                                                ssops_field** out);
SSOPS_API ssops_status ssops_field_sobolev_norm(const ssops_field* f, double p, double s,
                                                double* out);

/* ---- exponent regions ----------------------------------------------------- */

typedef enum {
    SSOPS_REGION_THEOREM_ONE = 0,
    SSOPS_REGION_THEOREM_TWO = 1,
    SSOPS_REGION_REMARK_ONE = 2,
    SSOPS_REGION_LEMMA_ONE = 3,
    SSOPS_REGION_LEMMA_TWO = 4
} ssops_region_predicate;

typedef struct {
    char name[96];
    double lo, mid, hi;
    int strict;
    int satisfied;
    int boundary;
} ssops_region_constraint;

typedef struct {
    int admissible;
    int boundary;
    int n_constraints;
    ssops_region_constraint constraints[8];
} ssops_region_verdict;

/* q <= 0 means "q = p" (the L^p -> L^p statements) */
SSOPS_API ssops_status ssops_region_check(int predicate, int n, double s, double alpha,
                                          double p, double q, ssops_region_verdict* out);

/* ---- tabular reports ------------------------------------------------------ */

typedef struct ssops_report ssops_report;
SSOPS_API void ssops_report_destroy(ssops_report* r);
SSOPS_API int ssops_report_ncols(const ssops_report* r);
SSOPS_API const char* ssops_report_col_name(const ssops_report* r, int col);
SSOPS_API long ssops_report_nrows(const ssops_report* r);
SSOPS_API double ssops_report_cell(const ssops_report* r, long row, int col);
SSOPS_API int ssops_report_nscalars(const ssops_report* r);
SSOPS_API const char* ssops_report_scalar_name(const ssops_report* r, int i);
SSOPS_API double ssops_report_scalar(const ssops_report* r, int i);

/* ---- experiment runners ---------------------------------------------------
 * Each returns a report; columns are fixed per runner and documented in the
 * CLI help. All runners are deterministic given their arguments.
 */

/* theorem-one 1/p bounds tabulated over alpha/n in [0, 1]
 * columns: alpha_over_n, inv_p_lower, inv_p_upper, s, n */
SSOPS_API ssops_status ssops_run_region_polygon(int n, double s, int alpha_steps,
                                                ssops_report** out);

/* radial multiplier profile tabulation
 * columns: rho, re, im, abs; scalars: decay_exponent */
SSOPS_API ssops_status ssops_run_multiplier_profile(const ssops_kernel_spec* spec,
                                                    double rho_min, double rho_max,
                                                    int samples, int log_spaced,
                                                    ssops_report** out);

/* analytic-family endpoint identities on a log rho grid
 * scalars: z_star, max_abs_z0_vs_sweighted, max_abs_z1_vs_flat,
 *          max_abs_zstar_vs_standard */
SSOPS_API ssops_status ssops_run_theta_check(double alpha_re, double alpha_im, double s,
                                             int n, int grid_points, ssops_report** out);

/* kernel domination by the natural kernel; rows tabulate the constant growth
 * along Im alpha; scalars: sup_ratio, analytic_constant */
SSOPS_API ssops_status ssops_run_domination_check(double alpha_re, double alpha_im, int n,
                                                  int samples, uint64_t seed,
                                                  ssops_report** out);

/* discrete transform of the sampled kernel vs the multiplier profile
 * scalars: sup_rel, max_abs, envelope_rel, compared_modes */
SSOPS_API ssops_status ssops_run_transform_check(int n, double alpha_re, double alpha_im,
                                                 int grid, double half_width,
                                                 double max_freq, ssops_report** out);

typedef enum {
    SSOPS_FAMILY_GAUSSIAN_DILATES = 0,
    SSOPS_FAMILY_BALL_INDICATORS = 1,
    SSOPS_FAMILY_KNAPP_CAPS = 2,
    SSOPS_FAMILY_RANDOM_BUMPS = 3
} ssops_family_kind;

/* norm-ratio scan ||f * Omega^alpha||_q / ||f||_{L^p_s} over a test family
 * columns: scale, norm_q, norm_ps, ratio
 * scalars: max_ratio, min_ratio, trend_slope */
SSOPS_API ssops_status ssops_run_scan(int n, double alpha, double s, double p, double q,
                                      int family_kind, const double* scales, int n_scales,
                                      uint64_t seed, int grid, double half_width,
                                      int diagnostic_outside, int threads,
                                      ssops_report** out);

/* shell/cone/rectangle geometry check; one row per rho' <= rho
 * columns: rho, violations, directions, covering_radius
 * scalars: total_violations */
SSOPS_API ssops_status ssops_run_inclusion_check(int n, int rho, int samples,
                                                 uint64_t seed, ssops_report** out);

/* Hedberg pointwise-bound constants and averaged-maximal norm ratios over the
 * built-in family {gaussian, ball, 5 random bumps}
 * columns: member, rho, hedberg_constant, mnorm_p43, mnorm_p2, mnorm_p4
 * (member is an index; names are printed by the CLI)
 * scalars: hedberg_max_over_min */
SSOPS_API ssops_status ssops_run_hedberg(int n, double alpha, double p, double q,
                                         const int* rhos, int n_rhos, uint64_t seed,
                                         int grid, double half_width, int threads,
                                         ssops_report** out);

/* wave solver checks on the built-in forcing: closed-form agreement for
 * time-independent forcing, post-switch-off energy drift, and the Duhamel
 * estimate ratio at (p, q, s)
 * scalars: closed_form_rel_err, energy_drift, duhamel_ratio */
SSOPS_API ssops_status ssops_run_wave_check(int n, int grid, double half_width, double t,
                                            int steps, double p, double q, double s,
                                            ssops_report** out);

/* solve the forced wave equation from a forcing directory (manifest.json +
 * frame files) and write u(., t) as a field file */
SSOPS_API ssops_status ssops_wave_solve_file(const char* manifest_path, double t,
                                             const char* out_path);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SSOPS_H */
