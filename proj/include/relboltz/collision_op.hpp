#pragma once

#include <functional>

#include "relboltz/cross_section.hpp"

namespace relboltz {

// Which reduction of the collision integral an evaluation uses.
enum class Rep { GS, CM, Newton };

struct MomentumFunction {
    std::function<double(const Vec&)> eval;
    double support_radius = std::numeric_limits<double>::infinity();

    double operator()(const Vec& p) const { return eval(p); }
};

struct QuadratureSpec {
    double q_extent = 6.0; // q-grid covers [-L, L]^N
    int n_q = 24;          // nodes per axis, >= 2
    int n_omega = 16;      // N=2: uniform angles; N=3: GL(cos) x uniform(phi)
    int mc_samples = 100000;
    std::uint64_t seed = 42;
};

// Kernel value (flux factor included) and outgoing pair for one (q, omega)
// node of the chosen representation; weight is 0 at degenerate nodes.
struct KernelSample {
    double weight = 0.0;
    Vec p_out, q_out;
};
KernelSample kernel_sample(const Vec& p, const Vec& q, const Vec& omega, double c,
                           const CrossSection& sigma, Rep rep);

// Glassey-Strauss kernel K_c = s sigma(g,theta) B(p,q,omega) / (p0 q0).
double kernel_gs(const Vec& p, const Vec& q, const Vec& omega, double c,
                 const CrossSection& sigma);

// Newtonian kernel K_inf = |omega.(p-q)| sigma_inf(|p-q|, theta).
double kernel_newt(const Vec& p, const Vec& q, const Vec& omega, const CrossSection& sigma_inf);

// Gain and loss integrals at a single p by deterministic tensor quadrature.
// GS integrates K_c f(p')h(q'); CM integrates v_c sigma f(p')h(q'); Newton
// integrates K_inf with the omega-representation momenta.
double q_gain(const MomentumFunction& f, const MomentumFunction& h, const Vec& p, double c,
              const CrossSection& sigma, Rep rep, const QuadratureSpec& quad);
double q_loss(const MomentumFunction& f, const MomentumFunction& h, const Vec& p, double c,
              const CrossSection& sigma, Rep rep, const QuadratureSpec& quad);

// Monte-Carlo spot check of the gain integral (same integrand, uniform
// (q, omega) sampling over the quadrature box).
double q_gain_mc(const MomentumFunction& f, const MomentumFunction& h, const Vec& p, double c,
                 const CrossSection& sigma, Rep rep, const QuadratureSpec& quad);

// Two-level refinement estimate: value at quad and at half resolution.
struct RefinedValue {
    double value = 0.0;
    double error_estimate = 0.0;
};
RefinedValue q_gain_refined(const MomentumFunction& f, const MomentumFunction& h, const Vec& p,
                            double c, const CrossSection& sigma, Rep rep,
                            const QuadratureSpec& quad);

struct MomentResiduals {
    double mass = 0.0;
    double momentum = 0.0;
    double energy = 0.0;
};

// | int (Qgain - Qloss)(f,f) phi dp | for phi in {1, p, p0}, each scaled by
// int |Q| |phi| dp over the same grid.
MomentResiduals moment_conservation(const MomentumFunction& f, double c,
                                    const CrossSection& sigma, Rep rep,
                                    const QuadratureSpec& quad, int dim);

// The (omega, weight) list used by the deterministic quadratures.
std::vector<std::pair<Vec, double>> omega_rule(int dim, int n_omega);

} // namespace relboltz
