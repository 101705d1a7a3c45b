#pragma once

#include <string>
#include <vector>

#include "relboltz/solver.hpp"

namespace relboltz {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat key=value run configuration; command-line overrides win over the file.
struct RunConfig {
    std::string command;

    int dim = 2;
    std::vector<double> c_list{2, 4, 8, 16, 32};
    double c = 1.0;
    double T = 1.0;
    int n_t = 16;
    int n_x = 24;
    int n_p = 24;
    int n_omega = 16;
    double L_x = 6.0;
    double L_p = 6.0;
    double alpha = 1.0;
    double beta = 1.0;
    double b = 1e-3;
    double cutoff_B = 1.0;
    double cutoff_a = 0.5;
    bool cutoff_on = true;
    int picard_max = 25;
    double picard_tol = 1e-9;
    double ks_envelope = 2.0;
    std::uint64_t seed = 42;
    int mc_samples = 20000;

    std::string sigma_kind = "hard_ball";
    double sigma_constant = 1.0;
    double sigma_r0 = 1.0;
    double sigma_G = 1.0;
    double sigma_hbar = 1.0;
    std::string sigma_b_table; // path to "theta value" rows

    std::string rep = "cm";          // cm | gs
    std::string limit_kind = "solution"; // solution | transport | phat_diff |
                                         // post_collision_diff | kernel_diff | cutoff_measure
    std::string dump = "none";       // none | binary | text

    std::string out_dir;
    bool no_timestamp = false;

    CrossSection make_sigma() const;
    SolveConfig make_solve_config(double c_value) const;
    CutoffParams make_cutoff() const;
};

// Parses the file (empty path = all defaults); throws ParseError with the
// offending line number on unknown keys or malformed values.
RunConfig parse_config_file(const std::string& path);

// Applies one "key=value" override.
void apply_override(RunConfig& cfg, const std::string& assignment);

// Range and cross-field validation (e.g. israel requires sigma.b_table).
void validate(RunConfig& cfg);

// Re-parseable key=value echo of the effective configuration.
std::string echo_config(const RunConfig& cfg);

} // namespace relboltz
