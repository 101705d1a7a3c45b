#pragma once

#include <string>

#include "relboltz/collision_table.hpp"
#include "relboltz/distributions.hpp"

namespace relboltz {

struct SolveConfig {
    double c = 1.0; // kNewtonianC solves the Newtonian equation
    double T = 1.0;
    int n_t = 16;
    int picard_max = 25;
    double picard_tol = 1e-9; // weighted sup gap between sweeps
    CrossSection sigma;
    WeightParams weights;
    double b = 1e-3;
    Rep rep = Rep::CM; // forced to Rep::Newton when c is infinite
    Axis xaxis{-6.0, 6.0, 24};
    Axis paxis{-6.0, 6.0, 24};
    int n_omega = 16;
    bool use_cutoff = true;   // relativistic solves only
    double ks_envelope = 2.0; // upper_0 = ks_envelope * b * rho

    bool newtonian() const { return std::isinf(c); }
};

// Solution at each time node t_m = m T/(n_t-1), in both pictures: fsharp is
// the # field on the characteristic-label grid (the solver's native state and
// the argument of the weighted norm), f the Eulerian field f(t,x,p) used by
// the L^1_p L^inf_x metrics and persistence.
struct Trajectory {
    Axis xaxis, paxis;
    int n_t = 0;
    double T = 0.0;
    double c = 1.0;
    std::vector<std::vector<double>> f;      // [node][(ix*np2)+ip]
    std::vector<std::vector<double>> fsharp; // [node][(ip*nx2)+ix]

    double dt() const { return T / (n_t - 1); }
};

struct SolveResult {
    Trajectory traj;
    bool converged = false;
    int iterations = 0;
    double final_gap = 0.0;
    std::vector<double> norm_trace; // weighted sup per node
    double weighted_norm = 0.0;     // max over nodes
    std::string message;
};

struct KsResult {
    Trajectory lower, upper;
    bool ordered = false;       // monotone ordering held at every sweep
    bool nonnegative = false;   // lower >= 0 everywhere
    bool brackets_picard = false;
    bool converged = false;
    int iterations = 0;
    double gap = 0.0; // max node-wise weighted sup of (upper - lower)
    std::string message;
};

// f0 = b rho_c (relativistic) or b rho_inf (Newtonian) on the grid.
FieldGrid default_initial_data(const SolveConfig& cfg);

// Fixed point of f#(t) = f0 + int_0^t Q#(f,f) ds along x + phat t (x + p t in
// the Newtonian case), by Picard sweeps on the Eulerian node grid.
SolveResult picard_solve(const FieldGrid& f0, const SolveConfig& cfg);

// Kaniel-Shinbrot monotone bracketing from (lower, upper) = (0, envelope).
KsResult ks_bracket_solve(const FieldGrid& f0, const SolveConfig& cfg,
                          bool check_bracket = true);

// max over nodes and grid of |f#| / rho, with rho evaluated along the
// trajectory's own characteristics.
double weighted_sup_norm(const Trajectory& traj, const SolveConfig& cfg);

// || f0_c - f0_inf || in L^1_p L^inf_x on the grid, for the data-convergence
// sweep of the default initial data.
double initial_data_distance(const SolveConfig& cfg_rel);

// Largest b in (0, b_hint] for which Picard converges, by bisection from
// b_hint; returns the achieved b and the corresponding weighted norm bound.
struct BCalibration {
    double b = 0.0;
    double b1 = 0.0; // achieved ||f#||_c
    bool ok = false;
};
BCalibration calibrate_b(const SolveConfig& cfg, double b_hint);

} // namespace relboltz
