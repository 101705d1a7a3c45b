#include "relboltz/kinematics.hpp"

#include <cmath>
#include <stdexcept>

namespace relboltz {

double energy(const Vec& p, double c)
{
    if (!p.finite() || !std::isfinite(c) || c <= 0.0)
        throw std::domain_error("energy: non-finite momentum or invalid c");
    return std::sqrt(c * c + norm2(p));
}

FourMomentum four_momentum(const Vec& p, double c)
{
    return FourMomentum{energy(p, c), p, c};
}

double lorentz_inner(const FourMomentum& P, const FourMomentum& Q)
{
    if (P.c != Q.c) throw std::invalid_argument("lorentz_inner: mixed speed of light");
    require_same_frame(P.p, Q.p);
    return -P.e * Q.e + dot(P.p, Q.p);
}

CollisionInvariants invariants(const Vec& p, const Vec& q, double c)
{
    require_same_frame(p, q);
    const double p0 = energy(p, c);
    const double q0 = energy(q, c);
    const Vec d = p - q;
    const double cross = cross_mag(p, q);
    const double denom = p0 * q0 + dot(p, q) + c * c;
    // denom >= c^2 > 0 on shell: p0 q0 >= c^2 + |p||q| >= c^2 - p.q.
    CollisionInvariants inv;
    const double g2 = 2.0 * (c * c * norm2(d) + cross * cross) / denom;
    inv.g = std::sqrt(std::max(0.0, g2));
    inv.s = g2 + 4.0 * c * c;
    return inv;
}

double scattering_angle(const Vec& p, const Vec& q, const Vec& p_out, const Vec& q_out, double c)
{
    const CollisionInvariants inv = invariants(p, q, c);
    if (inv.g <= 0.0) throw std::domain_error("scattering_angle: degenerate collision (g = 0)");
    const FourMomentum P = four_momentum(p, c), Q = four_momentum(q, c);
    const FourMomentum Pp = four_momentum(p_out, c), Qp = four_momentum(q_out, c);
    // (p^mu - q^mu)(p'_mu - q'_mu) expanded in energy/momentum parts.
    const double inner =
        -(P.e - Q.e) * (Pp.e - Qp.e) + dot(P.p - Q.p, Pp.p - Qp.p);
    double ct = inner / (inv.g * inv.g);
    if (ct > 1.0 + 1e-9 || ct < -1.0 - 1e-9)
        throw std::domain_error("scattering_angle: cos(theta) overshoots [-1,1]");
    ct = std::min(1.0, std::max(-1.0, ct));
    return std::acos(ct);
}

double moller_velocity(const Vec& p, const Vec& q, double c)
{
    const CollisionInvariants inv = invariants(p, q, c);
    const double p0 = energy(p, c), q0 = energy(q, c);
    return 0.25 * c * inv.g * std::sqrt(inv.s) / (p0 * q0);
}

double moller_velocity_root_form(const Vec& p, const Vec& q, double c)
{
    // Written with the actual velocities phat = c p / p0,
    //   v_c = (1/2) sqrt(|phat - qhat|^2 - |phat x qhat|^2 / c^2),
    // which is the reading of the root form that matches the closed form
    // g sqrt(s) c / (4 p0 q0) identically in c.
    const Vec vp = normalized_velocity(p, c);
    const Vec vq = normalized_velocity(q, c);
    const double cr = cross_mag(vp, vq);
    const double arg = norm2(vp - vq) - cr * cr / (c * c);
    return 0.5 * std::sqrt(std::max(0.0, arg));
}

Vec normalized_velocity(const Vec& p, double c)
{
    if (!p.finite() || !std::isfinite(c) || c <= 0.0)
        throw std::domain_error("normalized_velocity: invalid input");
    return (c / energy(p, c)) * p;
}

ConservationReport check_conservation(const Vec& p, const Vec& q, const Vec& p_out,
                                      const Vec& q_out, double c, double tol)
{
    ConservationReport rep;
    if (std::isinf(c)) {
        const double e_in = norm2(p) + norm2(q);
        const double e_out = norm2(p_out) + norm2(q_out);
        const double scale = std::max(1e-300, e_in);
        const double mom = norm_inf((p_out + q_out) - (p + q));
        rep.residual = std::max(mom / std::sqrt(scale), std::fabs(e_out - e_in) / scale);
    } else {
        const double e_in = energy(p, c) + energy(q, c);
        const double e_out = energy(p_out, c) + energy(q_out, c);
        const double mom = norm_inf((p_out + q_out) - (p + q));
        rep.residual = std::max(mom, std::fabs(e_out - e_in)) / e_in;
    }
    rep.pass = rep.residual <= tol;
    return rep;
}

ConservationReport check_conservation(const ScatteringEvent& ev, double tol)
{
    return check_conservation(ev.p, ev.q, ev.p_out, ev.q_out, ev.c, tol);
}

} // namespace relboltz
