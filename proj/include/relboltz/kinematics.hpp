#pragma once

#include <limits>

#include "relboltz/vec.hpp"

namespace relboltz {

inline constexpr double kNewtonianC = std::numeric_limits<double>::infinity();

// Post-collision parameterization tag.
enum class Frame { GS, CM, NewtonOmega, NewtonSigma };

// On-shell four-momentum: e = sqrt(c^2 + |p|^2).
struct FourMomentum {
    double e = 1.0;
    Vec p;
    double c = 1.0;
};

struct CollisionInvariants {
    double s = 0.0;     // total energy squared, s = g^2 + 4c^2
    double g = 0.0;     // relative momentum
    double theta = 0.0; // CM scattering angle, only when outgoing momenta known
    bool has_theta = false;
};

// A binary collision with its outgoing pair. For the Newtonian frames c is
// the sentinel infinity and conservation means p+q and |p|^2+|q|^2.
struct ScatteringEvent {
    Vec p, q;
    Vec omega;
    double c = 1.0;
    Frame frame = Frame::CM;
    Vec p_out, q_out;
};

struct ConservationReport {
    double residual = 0.0; // scaled by total energy (relativistic) or |p|^2+|q|^2
    bool pass = false;
};

double energy(const Vec& p, double c);
FourMomentum four_momentum(const Vec& p, double c);
double lorentz_inner(const FourMomentum& P, const FourMomentum& Q);

// s and g for a pair. g uses the difference-of-squares form
//   g^2 = 2 (c^2 |p-q|^2 + |p x q|^2) / (p0 q0 + p.q + c^2),
// which avoids the cancellation of 2(-p^mu q_mu - c^2) when |p|,|q| << c.
CollisionInvariants invariants(const Vec& p, const Vec& q, double c);

// cos(theta) = (p^mu - q^mu)(p'_mu - q'_mu) / g^2, clamped to [-1,1].
// Overshoot beyond 1e-9 or g = 0 is an error.
double scattering_angle(const Vec& p, const Vec& q, const Vec& p_out, const Vec& q_out, double c);

// Moller velocity v_c = (c/4) g sqrt(s) / (p0 q0).
double moller_velocity(const Vec& p, const Vec& q, double c);

// The root form of the Moller velocity,
//   (c/2) sqrt(|p/p0 - q/q0|^2 - |p/p0 x q/q0|^2 / c^2),
// kept as a cross-check for the closed form above.
double moller_velocity_root_form(const Vec& p, const Vec& q, double c);

// phat = c p / p0; always |phat| < c.
Vec normalized_velocity(const Vec& p, double c);

ConservationReport check_conservation(const Vec& p, const Vec& q, const Vec& p_out,
                                      const Vec& q_out, double c, double tol);
ConservationReport check_conservation(const ScatteringEvent& ev, double tol);

} // namespace relboltz
