#pragma once

#include <optional>
#include <vector>

#include "relboltz/kinematics.hpp"

namespace relboltz {

enum class SigmaKind {
    HardBall,
    Moller,
    Compton,
    Neutrino,
    Israel,
    MaxwellParticles,
    Envelope
};

struct CutoffParams {
    double B = 1.0;      // > 0
    double a = 0.5;      // in [0,1)
    double alpha = 1.0;  // > 0, the weight exponent
};

// Tabulated angular profile b(theta) on [0,pi], linearly interpolated.
struct AngularTable {
    std::vector<double> theta;
    std::vector<double> value;
    double operator()(double th) const;
};

struct CrossSection {
    SigmaKind kind = SigmaKind::HardBall;
    double constant = 1.0;           // hard ball
    double r0 = 1.0;                 // Moller / Compton classical radius
    double G = 1.0;                  // neutrino coupling
    double hbar = 1.0;               // neutrino
    AngularTable b_table;            // Israel / Maxwell particles; empty = b == 1
    double A1 = 1.0, A2 = 0.0;       // envelope kind
    double alpha1 = 1.0, gamma = 0.0;
    double sigma1 = 1.0;
    std::optional<CutoffParams> cutoff;

    bool theta_independent() const;
};

// sigma(g, theta) with m = 1 absorbed into the parameters.
double evaluate(const CrossSection& sigma, double g, double theta, double c);

struct EnvelopeParams {
    double A1 = 1.0;
    double A2 = 0.0;
    double alpha1 = 1.0;
    double gamma = 0.0; // 0 <= gamma < N
    double sigma1 = 1.0;
};

struct EnvelopeReport {
    double worst_ratio = 0.0;
    double worst_g = 0.0;
    bool pass = false;
};

struct EnvelopeSamplePoint {
    double g, theta, c;
};

// Worst sigma / envelope ratio over the sample; pass iff <= 1.
EnvelopeReport envelope_check(const CrossSection& sigma, const EnvelopeParams& params,
                              const std::vector<EnvelopeSamplePoint>& sample);

// h_c = B/t^2 + a alpha q0 |x + t(phat - qhat)|^2 / (c t^2), always > 0.
double h_c(const Vec& x, const Vec& p, const Vec& q, double t, double c,
           const CutoffParams& params);

// omega in B_c  <=>  c^3 (1/p0 + 1/q0 - 1/p0' - 1/q0') >= -h_c, with the
// outgoing energies from `frame` (CM matches the existence proof).
bool in_cutoff_set(const Vec& omega, const Vec& x, const Vec& p, const Vec& q, double t,
                   double c, const CutoffParams& params, Frame frame = Frame::CM);

// Monte-Carlo fraction of the omega sphere inside B_c; deterministic for a
// fixed seed and chunk layout regardless of thread count.
double cutoff_measure(const Vec& x, const Vec& p, const Vec& q, double t, double c,
                      const CutoffParams& params, int n_samples, std::uint64_t seed,
                      Frame frame = Frame::CM);

struct CStarResult {
    bool found = false;
    double empirical = 0.0;        // smallest grid c with all larger grid c full
    double analytic = 0.0;         // sqrt(|p+q||p-q| T / (8B))
    bool analytic_sufficient = false; // every grid c >= analytic was full
};

// Scans a dyadic c grid with a dense (omega, t) sample; h uses only the B/t^2
// floor, matching the proof's c_* = c_*(p,q,T,B).
CStarResult c_star_search(const Vec& p, const Vec& q, double T, const CutoffParams& params,
                          const std::vector<double>& c_grid, int n_omega = 10000,
                          int n_t = 8, Frame frame = Frame::CM);

} // namespace relboltz
