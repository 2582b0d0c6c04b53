// ssops command-line front end. Talks to the core exclusively through the
// C API in ssops/ssops.h; owns argument parsing and CSV/JSON/SVG rendering.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ssops/ssops.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitAccuracy = 2;
constexpr int kExitUsage = 64;

int exit_code_for(ssops_status st) {
    switch (st) {
        case SSOPS_OK: return kExitOk;
        case SSOPS_ERR_ACCURACY:
        case SSOPS_ERR_RESOLUTION: return kExitAccuracy;
        default: return kExitValidation;
    }
}

[[noreturn]] void die(ssops_status st) {
    std::cerr << "error: " << ssops_last_error() << "\n";
    std::exit(exit_code_for(st));
}

void check(ssops_status st) {
    if (st != SSOPS_OK) die(st);
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct report_handle {
    ssops_report* r = nullptr;
    ~report_handle() { ssops_report_destroy(r); }
};

struct output_sink {
    std::string path = "-";
    void write(const std::string& text) const {
        if (path == "-") {
            std::cout << text;
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot open output file " << path << "\n";
            std::exit(kExitValidation);
        }
        out << text;
    }
};

std::string render_csv(const ssops_report* r) {
    std::ostringstream out;
    for (int i = 0; i < ssops_report_nscalars(r); ++i) {
        out << "# " << ssops_report_scalar_name(r, i) << " "
            << fmt_double(ssops_report_scalar(r, i)) << "\n";
    }
    const int ncols = ssops_report_ncols(r);
    for (int c = 0; c < ncols; ++c) {
        out << (c ? "," : "") << ssops_report_col_name(r, c);
    }
    if (ncols) out << "\n";
    for (long row = 0; row < ssops_report_nrows(r); ++row) {
        for (int c = 0; c < ncols; ++c) {
            out << (c ? "," : "") << fmt_double(ssops_report_cell(r, row, c));
        }
        out << "\n";
    }
    return out.str();
}

std::string render_json(const ssops_report* r) {
    nlohmann::ordered_json j;
    for (int i = 0; i < ssops_report_nscalars(r); ++i) {
        j["scalars"][ssops_report_scalar_name(r, i)] = ssops_report_scalar(r, i);
    }
    j["columns"] = nlohmann::json::array();
    for (int c = 0; c < ssops_report_ncols(r); ++c) {
        j["columns"].push_back(ssops_report_col_name(r, c));
    }
    j["rows"] = nlohmann::ordered_json::array();
    for (long row = 0; row < ssops_report_nrows(r); ++row) {
        nlohmann::ordered_json jr = nlohmann::ordered_json::array();
        for (int c = 0; c < ssops_report_ncols(r); ++c) {
            jr.push_back(ssops_report_cell(r, row, c));
        }
        j["rows"].push_back(std::move(jr));
    }
    return j.dump(2) + "\n";
}

void emit_report(const ssops_report* r, const std::string& format,
                 const output_sink& sink) {
    if (format == "json") {
        sink.write(render_json(r));
    } else {
        sink.write(render_csv(r));
    }
}

// (1/p, 1/q) region polygon for theorem one: lower-bound edge out, upper-bound
// edge back, drawn in the unit square
std::string render_region_svg(const ssops_report* r) {
    const long n = ssops_report_nrows(r);
    const double w = 480.0, margin = 40.0;
    auto sx = [&](double u) { return margin + u * w; };
    auto sy = [&](double v) { return margin + (1.0 - v) * w; };
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w + 2 * margin
        << "\" height=\"" << w + 2 * margin << "\">\n";
    out << "<rect x=\"" << sx(0) << "\" y=\"" << sy(1) << "\" width=\"" << w
        << "\" height=\"" << w << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<polygon fill=\"#9ec5e8\" fill-opacity=\"0.6\" stroke=\"#1f77b4\" points=\"";
    for (long i = 0; i < n; ++i) {
        const double tau = ssops_report_cell(r, i, 0);
        const double lo = ssops_report_cell(r, i, 1);
        out << sx(lo) << "," << sy(lo - tau) << " ";
    }
    for (long i = n - 1; i >= 0; --i) {
        const double tau = ssops_report_cell(r, i, 0);
        const double hi = ssops_report_cell(r, i, 2);
        out << sx(hi) << "," << sy(hi - tau) << " ";
    }
    out << "\"/>\n";
    // the diagonal 1/q = 1/p
    out << "<line x1=\"" << sx(0) << "\" y1=\"" << sy(0) << "\" x2=\"" << sx(1)
        << "\" y2=\"" << sy(1) << "\" stroke=\"#888\" stroke-dasharray=\"4\"/>\n";
    out << "<text x=\"" << sx(0.45) << "\" y=\"" << sy(-0.05)
        << "\" font-size=\"14\">1/p</text>\n";
    out << "<text x=\"" << sx(-0.07) << "\" y=\"" << sy(0.5)
        << "\" font-size=\"14\">1/q</text>\n";
    out << "</svg>\n";
    return out.str();
}

std::string render_profile_svg(const ssops_report* r) {
    const long n = ssops_report_nrows(r);
    const double w = 640.0, h = 400.0, margin = 48.0;
    double rho_lo = 1e300, rho_hi = 0.0, v_lo = 1e300, v_hi = 0.0;
    for (long i = 0; i < n; ++i) {
        const double rho = ssops_report_cell(r, i, 0);
        const double v = std::max(ssops_report_cell(r, i, 3), 1e-300);
        if (rho <= 0.0) continue;
        rho_lo = std::min(rho_lo, rho);
        rho_hi = std::max(rho_hi, rho);
        v_lo = std::min(v_lo, v);
        v_hi = std::max(v_hi, v);
    }
    auto sx = [&](double rho) {
        return margin + std::log(rho / rho_lo) / std::log(rho_hi / rho_lo) * w;
    };
    auto sy = [&](double v) {
        return margin + (1.0 - std::log(v / v_lo) / std::log(v_hi / v_lo)) * h;
    };
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w + 2 * margin
        << "\" height=\"" << h + 2 * margin << "\">\n<polyline fill=\"none\" "
           "stroke=\"#d62728\" points=\"";
    for (long i = 0; i < n; ++i) {
        const double rho = ssops_report_cell(r, i, 0);
        if (rho <= 0.0) continue;
        out << sx(rho) << "," << sy(std::max(ssops_report_cell(r, i, 3), 1e-300)) << " ";
    }
    out << "\"/>\n<text x=\"" << margin << "\" y=\"" << margin - 10
        << "\" font-size=\"13\">log-log |profile(rho)|</text>\n</svg>\n";
    return out.str();
}

bool parse_complex(const std::string& text, double& re, double& im) {
    const auto comma = text.find(',');
    try {
        if (comma == std::string::npos) {
            re = std::stod(text);
            im = 0.0;
        } else {
            re = std::stod(text.substr(0, comma));
            im = std::stod(text.substr(comma + 1));
        }
    } catch (...) {
        return false;
    }
    return true;
}

std::optional<int> family_code(const std::string& name) {
    if (name == "standard") return SSOPS_KERNEL_STANDARD;
    if (name == "natural") return SSOPS_KERNEL_NATURAL;
    if (name == "flat") return SSOPS_KERNEL_FLAT;
    if (name == "s-weighted") return SSOPS_KERNEL_S_WEIGHTED;
    if (name == "bessel-potential") return SSOPS_KERNEL_BESSEL_POTENTIAL;
    if (name == "theta") return SSOPS_KERNEL_THETA;
    return std::nullopt;
}

int selftest_report(const std::string& name, const std::vector<std::pair<std::string, bool>>& checks) {
    bool all = true;
    for (const auto& [label, ok] : checks) {
        std::cout << name << " selftest: " << (ok ? "PASS" : "FAIL") << "  " << label
                  << "\n";
        all = all && ok;
    }
    return all ? kExitOk : kExitValidation;
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// ---- selftests: the documented elementary cases per subcommand -------------

int selftest_bessel() {
    ssops_bessel_result r{};
    const bool ok1 = ssops_bessel_j(0.5, 0.0, M_PI / 2.0, &r) == SSOPS_OK &&
                     near(r.re, 2.0 / M_PI, 1e-9) && near(r.im, 0.0, 1e-12);
    double re = 0, im = 0;
    const bool ok2 = ssops_normalized_bessel(0.5, 0.0, 0.0, &re, &im) == SSOPS_OK &&
                     near(re, std::sqrt(2.0 / M_PI), 1e-12);
    const bool ok3 = ssops_normalized_bessel(0.0, 0.0, 0.0, &re, &im) == SSOPS_OK &&
                     near(re, 1.0, 1e-13);
    const bool ok4 = ssops_bessel_j(0.0, 0.0, -1.0, &r) == SSOPS_ERR_DOMAIN;
    return selftest_report("bessel", {{"J_{1/2}(pi/2) = 2/pi", ok1},
                                      {"normalized limit at 0 (mu=1/2)", ok2},
                                      {"normalized limit at 0 (mu=0)", ok3},
                                      {"rho <= 0 rejected", ok4}});
}

int selftest_kernel() {
    ssops_kernel_spec spec{SSOPS_KERNEL_STANDARD, 2.0, 0.0, 2, 0.0, 0.0, 0.0};
    const double inside[2] = {0.3, 0.1};
    const double outside[2] = {1.2, 0.9};
    double re = 0, im = 0;
    const bool ok1 = ssops_kernel_value(&spec, inside, 2, &re, &im) == SSOPS_OK &&
                     near(re, 1.0, 1e-12);
    const bool ok2 = ssops_kernel_value(&spec, outside, 2, &re, &im) == SSOPS_OK &&
                     re == 0.0 && im == 0.0;
    ssops_kernel_spec pot{SSOPS_KERNEL_BESSEL_POTENTIAL, 1.0, 0.0, 2, 1.0, 0.0, 0.0};
    const bool ok3 = ssops_kernel_value(&pot, inside, 2, &re, &im) == SSOPS_ERR_DOMAIN;
    return selftest_report("kernel", {{"alpha = n kernel is the ball indicator", ok1},
                                      {"support vanishes outside the ball", ok2},
                                      {"transform-only family rejected", ok3}});
}

int selftest_multiplier() {
    ssops_kernel_spec spec{SSOPS_KERNEL_STANDARD, 1.5, 0.0, 3, 0.0, 0.0, 0.0};
    ssops_multiplier* m = nullptr;
    bool ok1 = ssops_multiplier_create(&spec, &m) == SSOPS_OK;
    double re = 0, im = 0;
    ok1 = ok1 && ssops_multiplier_eval(m, 0.25, &re, &im) == SSOPS_OK &&
          near(re, 4.0 / M_PI, 1e-9);
    ssops_multiplier_destroy(m);
    ssops_kernel_spec pot{SSOPS_KERNEL_BESSEL_POTENTIAL, 0.0, 0.0, 2, 1.0, 0.0, 0.0};
    ssops_multiplier* mp = nullptr;
    bool ok2 = ssops_multiplier_create(&pot, &mp) == SSOPS_OK;
    ok2 = ok2 && ssops_multiplier_eval(mp, 1.0, &re, &im) == SSOPS_OK &&
          near(re, std::sqrt(0.5), 1e-12);
    ssops_multiplier_destroy(mp);
    return selftest_report("multiplier", {{"sinc profile at alpha = 2n/(n+1)", ok1},
                                          {"bessel potential at rho = 1", ok2}});
}

int selftest_region() {
    ssops_region_verdict v{};
    const bool ok1 = ssops_region_check(SSOPS_REGION_THEOREM_ONE, 3, 0.5, 1.5, 4.0 / 3.0,
                                        4.0, &v) == SSOPS_OK &&
                     v.admissible == 1;
    const bool ok2 = ssops_region_check(SSOPS_REGION_THEOREM_ONE, 3, 0.5, 1.5, 2.0, 2.0,
                                        &v) == SSOPS_OK &&
                     v.admissible == 0;
    const bool ok3 = ssops_region_check(SSOPS_REGION_REMARK_ONE, 3, 0.0, 3.0, 2.0, -1.0,
                                        &v) == SSOPS_OK &&
                     v.admissible == 0;
    const bool ok4 = ssops_region_check(SSOPS_REGION_LEMMA_ONE, 2, 0.0, 1.0, 2.0, -1.0,
                                        &v) == SSOPS_OK &&
                     v.admissible == 1;
    return selftest_report("region", {{"worked theorem-one point admissible", ok1},
                                      {"p = q rejected by theorem one", ok2},
                                      {"alpha = n rejected by remark one", ok3},
                                      {"lemma one with p = q", ok4}});
}

int selftest_transform_check() {
    // identity multiplier round trip through a field
    ssops_field* f = nullptr;
    bool ok = ssops_field_create(2, 32, 2.0, &f) == SSOPS_OK;
    std::vector<double> vals(2 * 32 * 32, 0.0);
    for (std::size_t i = 0; i < vals.size(); i += 2) vals[i] = std::sin(0.1 * i);
    ok = ok && ssops_field_set_values(f, vals.data(), vals.size() / 2) == SSOPS_OK;
    ssops_kernel_spec pot{SSOPS_KERNEL_BESSEL_POTENTIAL, 0.0, 0.0, 2, 0.0, 0.0, 0.0};
    ssops_multiplier* ident = nullptr;
    ok = ok && ssops_multiplier_create(&pot, &ident) == SSOPS_OK;
    ssops_field* g = nullptr;
    ok = ok && ssops_field_apply_multiplier(f, ident, &g) == SSOPS_OK;
    std::vector<double> out(vals.size());
    ok = ok && ssops_field_get_values(g, out.data(), out.size() / 2) == SSOPS_OK;
    double worst = 0.0;
    for (std::size_t i = 0; i < vals.size(); ++i)
        worst = std::max(worst, std::abs(vals[i] - out[i]));
    ssops_field_destroy(f);
    ssops_field_destroy(g);
    ssops_multiplier_destroy(ident);
    return selftest_report("transform-check",
                           {{"identity multiplier round trip <= 1e-12", ok && worst <= 1e-12}});
}

int selftest_scan() {
    const double scales[1] = {0.0};
    ssops_report* rep = nullptr;
    const ssops_status st = ssops_run_scan(2, 1.0, 0.5, 4.0 / 3.0, 4.0,
                                           SSOPS_FAMILY_GAUSSIAN_DILATES, scales, 1, 1, 64,
                                           2.0, 0, 0, &rep);
    ssops_report_destroy(rep);
    return selftest_report("scan", {{"zero scale rejected", st != SSOPS_OK}});
}

int selftest_hedberg() {
    // zero field convention via the library norm path
    ssops_field* f = nullptr;
    bool ok = ssops_field_create(2, 32, 2.0, &f) == SSOPS_OK;
    double norm = -1.0;
    ok = ok && ssops_field_lp_norm(f, 4.0 / 3.0, &norm) == SSOPS_OK && norm == 0.0;
    ssops_field_destroy(f);
    return selftest_report("hedberg", {{"zero field has zero norm", ok}});
}

int selftest_wave() {
    ssops_report* rep = nullptr;
    // zero-length window is rejected; real check: zero forcing gives zero
    ssops_field* f = nullptr;
    bool ok = ssops_field_create(2, 32, 2.0, &f) == SSOPS_OK;
    double norm = -1.0;
    ok = ok && ssops_field_lp_norm(f, 2.0, &norm) == SSOPS_OK && norm == 0.0;
    ssops_field_destroy(f);
    ssops_report_destroy(rep);
    return selftest_report("wave", {{"zero forcing frame has zero norm", ok}});
}

int selftest_theta() {
    ssops_report* rep = nullptr;
    const ssops_status st = ssops_run_theta_check(1.0, 0.0, 0.5, 2, 40, &rep);
    bool ok = st == SSOPS_OK;
    double dev = 1.0;
    if (ok) {
        for (int i = 0; i < ssops_report_nscalars(rep); ++i) {
            if (std::string(ssops_report_scalar_name(rep, i)) ==
                "max_abs_zstar_vs_standard") {
                dev = ssops_report_scalar(rep, i);
            }
        }
    }
    ssops_report_destroy(rep);
    return selftest_report("theta-check",
                           {{"z* identity discrepancy ~ 0", ok && dev < 1e-9}});
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spherically singular fractional-integration operators"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    app.failure_message(CLI::FailureMessage::help);

    std::string output = "-";
    std::string format = "csv";
    int threads = 0;
    app.add_option("--output,-o", output, "output path ('-' for stdout)");
    app.add_option("--format,--emit", format, "csv | json (svg where documented)")
        ->check(CLI::IsMember({"csv", "json", "svg"}));
    app.add_option("--threads", threads, "worker cap (default: SSOPS_THREADS or cores)");

    // bessel
    auto* cmd_bessel = app.add_subcommand("bessel", "evaluate J_{mu+i nu}(rho)");
    double mu = 0.0, nu = 0.0, rho = 1.0;
    bool normalized = false, asymptotic = false, selftest = false;
    cmd_bessel->add_option("--mu", mu, "real part of the order");
    cmd_bessel->add_option("--nu", nu, "imaginary part of the order");
    cmd_bessel->add_option("--rho", rho, "argument (> 0; >= 0 with --normalized)");
    cmd_bessel->add_flag("--normalized", normalized, "rho^{-order} J_order(rho)");
    cmd_bessel->add_flag("--asymptotic", asymptotic, "leading large-argument term");
    cmd_bessel->add_flag("--selftest", selftest);

    // kernel
    auto* cmd_kernel = app.add_subcommand("kernel", "physical-space kernel value");
    std::string alpha_text = "1.0", z_text = "0.0", family_text = "standard";
    int dim_n = 2;
    double weight_s = 0.0;
    std::string point_text = "0.0,0.0";
    cmd_kernel->add_option("--family", family_text,
                           "standard | natural | flat | s-weighted | bessel-potential | theta");
    cmd_kernel->add_option("--alpha", alpha_text, "complex alpha as re[,im]");
    cmd_kernel->add_option("--n", dim_n, "dimension");
    cmd_kernel->add_option("--s", weight_s, "smoothness weight");
    cmd_kernel->add_option("--z", z_text, "theta interpolation variable re[,im]");
    cmd_kernel->add_option("--x", point_text, "evaluation point x1,x2[,x3]");
    cmd_kernel->add_flag("--selftest", selftest);

    // multiplier
    auto* cmd_mult = app.add_subcommand("multiplier", "radial multiplier profile table");
    double rho_min = 0.0, rho_max = 16.0;
    int samples = 256;
    bool log_spaced = false;
    cmd_mult->add_option("--family", family_text);
    cmd_mult->add_option("--alpha", alpha_text);
    cmd_mult->add_option("--n", dim_n);
    cmd_mult->add_option("--s", weight_s);
    cmd_mult->add_option("--z", z_text);
    cmd_mult->add_option("--rho-min", rho_min);
    cmd_mult->add_option("--rho-max", rho_max);
    cmd_mult->add_option("--samples", samples);
    cmd_mult->add_flag("--log", log_spaced, "log-spaced rho samples");
    cmd_mult->add_flag("--selftest", selftest);

    // region
    auto* cmd_region = app.add_subcommand("region",
                                          "admissible-exponent bounds and verdicts");
    double reg_s = 0.5, reg_alpha = 1.0, reg_p = 0.0, reg_q = -1.0;
    int steps = 50;
    std::string predicate = "theorem-one";
    cmd_region->add_option("--n", dim_n);
    cmd_region->add_option("--s", reg_s);
    cmd_region->add_option("--alpha", reg_alpha);
    cmd_region->add_option("--steps", steps, "alpha grid steps for the polygon table");
    cmd_region->add_option("--p", reg_p, "query mode: check (p, q) instead of tabulating");
    cmd_region->add_option("--q", reg_q, "query mode q (omit for q = p)");
    cmd_region->add_option("--predicate", predicate,
                           "theorem-one | theorem-two | remark-one | lemma-one | lemma-two")
        ->check(CLI::IsMember({"theorem-one", "theorem-two", "remark-one", "lemma-one",
                               "lemma-two"}));
    cmd_region->add_flag("--selftest", selftest);

    // transform-check
    auto* cmd_tc = app.add_subcommand(
        "transform-check", "discrete transform of the sampled kernel vs the multiplier");
    int grid_points = 512;
    double half_width = 2.0, max_freq = 32.0, tolerance = 0.03;
    cmd_tc->add_option("--n", dim_n);
    cmd_tc->add_option("--alpha", alpha_text);
    cmd_tc->add_option("--grid", grid_points);
    cmd_tc->add_option("--half-width", half_width);
    cmd_tc->add_option("--max-freq", max_freq);
    cmd_tc->add_option("--tolerance", tolerance, "sup-relative mismatch gate");
    cmd_tc->add_flag("--selftest", selftest);

    // scan
    auto* cmd_scan = app.add_subcommand("scan", "norm-ratio scan over a test family");
    double scan_alpha = 1.0, scan_s = 0.5, scan_p = 4.0 / 3.0, scan_q = 4.0;
    std::string family_kind_text = "gaussian-dilates";
    std::string scales_text = "1,0.5,0.25";
    std::uint64_t seed = 1;
    bool diagnostic = false;
    cmd_scan->add_option("--n", dim_n);
    cmd_scan->add_option("--alpha", scan_alpha);
    cmd_scan->add_option("--s", scan_s);
    cmd_scan->add_option("--p", scan_p);
    cmd_scan->add_option("--q", scan_q);
    cmd_scan->add_option("--family", family_kind_text,
                         "gaussian-dilates | ball-indicators | knapp-caps | random-bumps");
    cmd_scan->add_option("--scales", scales_text, "comma-separated scale list");
    cmd_scan->add_option("--grid", grid_points);
    cmd_scan->add_option("--half-width", half_width);
    cmd_scan->add_option("--seed", seed);
    cmd_scan->add_flag("--diagnostic", diagnostic,
                       "run outside the admissible region (reported, not asserted)");
    cmd_scan->add_flag("--selftest", selftest);

    // hedberg
    auto* cmd_hed = app.add_subcommand(
        "hedberg", "Hedberg constants and maximal norm ratios over the built-in family");
    double hed_alpha = 1.0, hed_p = 4.0 / 3.0, hed_q = 4.0;
    std::string rhos_text = "3,4,5";
    cmd_hed->add_option("--n", dim_n);
    cmd_hed->add_option("--alpha", hed_alpha);
    cmd_hed->add_option("--p", hed_p);
    cmd_hed->add_option("--q", hed_q);
    cmd_hed->add_option("--rhos", rhos_text, "comma-separated rho list");
    cmd_hed->add_option("--grid", grid_points);
    cmd_hed->add_option("--half-width", half_width);
    cmd_hed->add_option("--seed", seed);
    cmd_hed->add_flag("--selftest", selftest);
    bool inclusion_only = false;
    int incl_rho = 5;
    int incl_samples = 100000;
    cmd_hed->add_flag("--inclusion-only", inclusion_only,
                      "only run the shell/cone/rectangle inclusion check");
    cmd_hed->add_option("--rho", incl_rho, "max rho for --inclusion-only");
    cmd_hed->add_option("--samples", incl_samples, "samples per rho for --inclusion-only");

    // wave
    auto* cmd_wave = app.add_subcommand("wave", "spectral wave solver and checks");
    std::string manifest, out_field;
    double wave_t = 1.0, wave_p = 1.2, wave_q = 6.0, wave_sob = 0.5;
    int wave_steps = 256;
    cmd_wave->add_option("--manifest", manifest, "forcing manifest.json (solve mode)");
    cmd_wave->add_option("--t", wave_t, "solution time");
    cmd_wave->add_option("--out", out_field, "output field file (solve mode)");
    cmd_wave->add_option("--n", dim_n);
    cmd_wave->add_option("--grid", grid_points);
    cmd_wave->add_option("--half-width", half_width);
    cmd_wave->add_option("--steps", wave_steps, "time steps to t (check mode)");
    cmd_wave->add_option("--p", wave_p);
    cmd_wave->add_option("--q", wave_q);
    cmd_wave->add_option("--s", wave_sob);
    cmd_wave->add_flag("--selftest", selftest);

    // theta-check
    auto* cmd_theta = app.add_subcommand("theta-check",
                                         "analytic-family endpoint identities");
    int theta_grid = 100;
    cmd_theta->add_option("--alpha", alpha_text);
    cmd_theta->add_option("--s", weight_s)->default_val(0.5);
    cmd_theta->add_option("--n", dim_n);
    cmd_theta->add_option("--grid-points", theta_grid);
    cmd_theta->add_flag("--selftest", selftest);

    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    const output_sink sink{output};

    if (cmd_bessel->parsed()) {
        if (selftest) return selftest_bessel();
        double re = 0.0, im = 0.0;
        ssops_bessel_result r{};
        if (normalized) {
            check(ssops_normalized_bessel(mu, nu, rho, &re, &im));
            r = {re, im, SSOPS_BESSEL_QUADRATURE, 0.0};
        } else if (asymptotic) {
            check(ssops_bessel_asymptotic(mu, nu, rho, &re, &im));
            r = {re, im, SSOPS_BESSEL_CLOSED_FORM, 0.0};
        } else {
            check(ssops_bessel_j(mu, nu, rho, &r));
        }
        if (format == "json") {
            nlohmann::ordered_json j{{"re", r.re}, {"im", r.im}};
            if (!normalized && !asymptotic) {
                j["method"] = r.method;
                j["est_abs_error"] = r.est_abs_error;
            }
            sink.write(j.dump() + "\n");
        } else {
            sink.write("re,im\n" + fmt_double(r.re) + "," + fmt_double(r.im) + "\n");
        }
        return kExitOk;
    }

    if (cmd_kernel->parsed()) {
        if (selftest) return selftest_kernel();
        const auto fam = family_code(family_text);
        if (!fam) {
            std::cerr << "error: unknown family " << family_text << "\n";
            return kExitUsage;
        }
        ssops_kernel_spec spec{};
        spec.family = *fam;
        spec.n = dim_n;
        spec.s = weight_s;
        if (!parse_complex(alpha_text, spec.alpha_re, spec.alpha_im) ||
            !parse_complex(z_text, spec.z_re, spec.z_im)) {
            std::cerr << "error: bad complex literal\n";
            return kExitUsage;
        }
        std::vector<double> x;
        std::stringstream ss(point_text);
        std::string tok;
        while (std::getline(ss, tok, ',')) x.push_back(std::stod(tok));
        double re = 0.0, im = 0.0;
        check(ssops_kernel_value(&spec, x.data(), static_cast<int>(x.size()), &re, &im));
        if (format == "json") {
            sink.write(nlohmann::ordered_json{{"re", re}, {"im", im}}.dump() + "\n");
        } else {
            sink.write("re,im\n" + fmt_double(re) + "," + fmt_double(im) + "\n");
        }
        return kExitOk;
    }

    if (cmd_mult->parsed()) {
        if (selftest) return selftest_multiplier();
        const auto fam = family_code(family_text);
        if (!fam) {
            std::cerr << "error: unknown family " << family_text << "\n";
            return kExitUsage;
        }
        ssops_kernel_spec spec{};
        spec.family = *fam;
        spec.n = dim_n;
        spec.s = weight_s;
        if (!parse_complex(alpha_text, spec.alpha_re, spec.alpha_im) ||
            !parse_complex(z_text, spec.z_re, spec.z_im)) {
            std::cerr << "error: bad complex literal\n";
            return kExitUsage;
        }
        report_handle rep;
        check(ssops_run_multiplier_profile(&spec, rho_min, rho_max, samples,
                                           log_spaced ? 1 : 0, &rep.r));
        if (format == "svg") {
            sink.write(render_profile_svg(rep.r));
        } else {
            emit_report(rep.r, format, sink);
        }
        return kExitOk;
    }

    if (cmd_region->parsed()) {
        if (selftest) return selftest_region();
        if (reg_p > 0.0) {
            int pred = SSOPS_REGION_THEOREM_ONE;
            if (predicate == "theorem-two") pred = SSOPS_REGION_THEOREM_TWO;
            if (predicate == "remark-one") pred = SSOPS_REGION_REMARK_ONE;
            if (predicate == "lemma-one") pred = SSOPS_REGION_LEMMA_ONE;
            if (predicate == "lemma-two") pred = SSOPS_REGION_LEMMA_TWO;
            ssops_region_verdict v{};
            check(ssops_region_check(pred, dim_n, reg_s, reg_alpha, reg_p, reg_q, &v));
            nlohmann::ordered_json j;
            j["admissible"] = v.admissible != 0;
            j["boundary"] = v.boundary != 0;
            j["constraints"] = nlohmann::ordered_json::array();
            for (int i = 0; i < v.n_constraints; ++i) {
                const auto& c = v.constraints[i];
                nlohmann::ordered_json jc{{"name", c.name},       {"lo", c.lo},
                                           {"mid", c.mid},         {"hi", c.hi},
                                           {"strict", c.strict != 0},
                                           {"satisfied", c.satisfied != 0},
                                           {"boundary", c.boundary != 0}};
                j["constraints"].push_back(std::move(jc));
            }
            sink.write(j.dump(2) + "\n");
            return kExitOk;
        }
        report_handle rep;
        check(ssops_run_region_polygon(dim_n, reg_s, steps, &rep.r));
        if (format == "svg") {
            sink.write(render_region_svg(rep.r));
        } else {
            emit_report(rep.r, format, sink);
        }
        return kExitOk;
    }

    if (cmd_tc->parsed()) {
        if (selftest) return selftest_transform_check();
        double a_re = 0.0, a_im = 0.0;
        if (!parse_complex(alpha_text, a_re, a_im)) {
            std::cerr << "error: bad complex literal\n";
            return kExitUsage;
        }
        report_handle rep;
        check(ssops_run_transform_check(dim_n, a_re, a_im, grid_points, half_width,
                                        max_freq, &rep.r));
        emit_report(rep.r, format == "svg" ? "csv" : format, sink);
        double sup_rel = 1.0;
        for (int i = 0; i < ssops_report_nscalars(rep.r); ++i) {
            if (std::string(ssops_report_scalar_name(rep.r, i)) == "sup_rel") {
                sup_rel = ssops_report_scalar(rep.r, i);
            }
        }
        if (sup_rel > tolerance) {
            std::cerr << "error: transform mismatch " << fmt_double(sup_rel)
                      << " exceeds tolerance " << fmt_double(tolerance) << "\n";
            return kExitAccuracy;
        }
        return kExitOk;
    }

    if (cmd_scan->parsed()) {
        if (selftest) return selftest_scan();
        int kind = SSOPS_FAMILY_GAUSSIAN_DILATES;
        if (family_kind_text == "ball-indicators") kind = SSOPS_FAMILY_BALL_INDICATORS;
        else if (family_kind_text == "knapp-caps") kind = SSOPS_FAMILY_KNAPP_CAPS;
        else if (family_kind_text == "random-bumps") kind = SSOPS_FAMILY_RANDOM_BUMPS;
        else if (family_kind_text != "gaussian-dilates") {
            std::cerr << "error: unknown family kind " << family_kind_text << "\n";
            return kExitUsage;
        }
        std::vector<double> scales;
        std::stringstream ss(scales_text);
        std::string tok;
        while (std::getline(ss, tok, ',')) scales.push_back(std::stod(tok));
        report_handle rep;
        check(ssops_run_scan(dim_n, scan_alpha, scan_s, scan_p, scan_q, kind,
                             scales.data(), static_cast<int>(scales.size()), seed,
                             grid_points, half_width, diagnostic ? 1 : 0, threads,
                             &rep.r));
        emit_report(rep.r, format == "svg" ? "csv" : format, sink);
        return kExitOk;
    }

    if (cmd_hed->parsed()) {
        if (selftest) return selftest_hedberg();
        if (inclusion_only) {
            report_handle rep;
            check(ssops_run_inclusion_check(dim_n, incl_rho, incl_samples, seed, &rep.r));
            emit_report(rep.r, format == "svg" ? "csv" : format, sink);
            return kExitOk;
        }
        std::vector<int> rhos;
        std::stringstream ss(rhos_text);
        std::string tok;
        while (std::getline(ss, tok, ',')) rhos.push_back(std::stoi(tok));
        report_handle rep;
        check(ssops_run_hedberg(dim_n, hed_alpha, hed_p, hed_q, rhos.data(),
                                static_cast<int>(rhos.size()), seed, grid_points,
                                half_width, threads, &rep.r));
        emit_report(rep.r, format == "svg" ? "csv" : format, sink);
        return kExitOk;
    }

    if (cmd_wave->parsed()) {
        if (selftest) return selftest_wave();
        if (!manifest.empty()) {
            if (out_field.empty()) {
                std::cerr << "error: solve mode needs --out\n";
                return kExitUsage;
            }
            check(ssops_wave_solve_file(manifest.c_str(), wave_t, out_field.c_str()));
            return kExitOk;
        }
        report_handle rep;
        check(ssops_run_wave_check(dim_n, grid_points, half_width, wave_t, wave_steps,
                                   wave_p, wave_q, wave_sob, &rep.r));
        emit_report(rep.r, format == "svg" ? "csv" : format, sink);
        return kExitOk;
    }

    if (cmd_theta->parsed()) {
        if (selftest) return selftest_theta();
        double a_re = 0.0, a_im = 0.0;
        if (!parse_complex(alpha_text, a_re, a_im)) {
            std::cerr << "error: bad complex literal\n";
            return kExitUsage;
        }
        report_handle rep;
        check(ssops_run_theta_check(a_re, a_im, weight_s, dim_n, theta_grid, &rep.r));
        emit_report(rep.r, format == "svg" ? "csv" : format, sink);
        return kExitOk;
    }

    return kExitUsage;
}
