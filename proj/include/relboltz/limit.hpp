#pragma once

#include "relboltz/solver.hpp"

namespace relboltz {

// L^1_p L^inf_x metric: dp^N sum_p max_x |f(x,p)|.
double l1p_linfx_norm(const FieldGrid& f);

// Same metric for the difference of two trajectories at one node.
double l1p_linfx_node_diff(const Trajectory& a, const Trajectory& b, int node);

// || tau_h f - f || by shifted bilinear interpolation (zero outside the box).
// which is 'x' or 'p'.
double translation_modulus(const FieldGrid& f, const Vec& h, char which);

struct RateFit {
    double slope = 0.0;     // positive decay exponent of error ~ K / c^slope
    double intercept = 0.0; // log K
    double r2 = 0.0;
    int n_used = 0;
    int n_dropped = 0; // nonpositive errors dropped with a warning
};

// Least squares of log(error) against log(c); needs >= 3 usable pairs.
RateFit rate_fit(const std::vector<std::pair<double, double>>& pairs);

enum class SweepKind { KernelDiff, PostCollisionDiff, PhatDiff, JuttnerDiff, CutoffMeasure };

struct SweepSpec {
    int dim = 3;
    int n_samples = 1000;
    std::uint64_t seed = 42;
    Vec fixed_p{1.0, 0.0, 0.0}; // PhatDiff / JuttnerDiff
    CutoffParams cutoff;        // CutoffMeasure
    double T = 1.0;
    int mc_samples = 20000;
};

struct SweepResult {
    std::vector<double> c;
    std::vector<double> value; // max error over the sample, or min measure
    RateFit fit;
    bool has_fit = false;
};

SweepResult component_sweep(SweepKind kind, const std::vector<double>& c_list,
                            const SweepSpec& spec);

struct StudyPoint {
    double c = 0.0;
    double error = 0.0;
    double trunc_floor = 0.0;
    bool included = true;
};

struct StudyResult {
    std::vector<StudyPoint> points;
    RateFit fit;
    bool ok = false;
    std::string message;
};

// Theorem-2.2 style end-to-end study: solves the Newtonian equation once and
// the relativistic one per c, measures || f_c(T) - f(T) || and fits the
// decay slope. Points whose truncation-floor estimate (from a half-resolution
// re-solve) exceeds 20% of the measured difference are excluded from the fit.
// transport_only sets sigma = 0 and shares the Newtonian data across c, which
// isolates the phat-vs-p characteristic shift.
StudyResult solution_convergence_study(const SolveConfig& base,
                                       const std::vector<double>& c_list,
                                       bool transport_only = false);

// || f_{0,c} - f_0 || over c for the default data (k = 2 data convergence).
SweepResult data_convergence_sweep(const SolveConfig& base, const std::vector<double>& c_list);

} // namespace relboltz
