#pragma once

#include "relboltz/kinematics.hpp"

namespace relboltz {

struct GsCollision {
    Vec p_out, q_out;
    double a = 0.0;  // transfer along omega: p' = p + a w, q' = q - a w
    double n0 = 0.0; // energy transfer: p0' = p0 + N0, q0' = q0 - N0
};

// Glassey-Strauss post-collision map. Requires |omega| = 1.
GsCollision gs_post_collision(const Vec& p, const Vec& q, const Vec& omega, double c);

// Center-of-momentum post-collision map,
//   p' = (p+q)/2 + (g/2)(w + (gamma-1)(p+q) (p+q).w / |p+q|^2).
// When |p+q| is degenerate the (gamma-1) correction vanishes in the limit and
// is dropped; when g = 0 the collision sphere is a point and (p,q) is returned.
void cm_post_collision(const Vec& p, const Vec& q, const Vec& omega, double c,
                       Vec& p_out, Vec& q_out);

// Newtonian omega representation: pbar' = p + (w.(q-p)) w.
void newton_post_omega(const Vec& p, const Vec& q, const Vec& omega, Vec& p_out, Vec& q_out);

// Newtonian sigma representation: pbar' = (p+q)/2 + |p-q| w / 2.
void newton_post_sigma(const Vec& p, const Vec& q, const Vec& omega, Vec& p_out, Vec& q_out);

// Closed form -p0' q0' / (p0 q0) of the (p,q) -> (p',q') Jacobian at fixed omega.
double gs_jacobian(const Vec& p, const Vec& q, const Vec& omega, double c);

// Central finite-difference determinant of the same 2N -> 2N map,
// step h = step_scale * max(1,|p|,|q|). Oracle for gs_jacobian.
double gs_jacobian_fd(const Vec& p, const Vec& q, const Vec& omega, double c,
                      double step_scale = 1e-5);

// |pbar' - p'| + |qbar' - q'| between the relativistic GS map and the
// Newtonian omega-representation at the same (p,q,omega). Decays like 1/c^2.
double post_collision_newton_diff(const Vec& p, const Vec& q, const Vec& omega, double c);

ScatteringEvent make_event(const Vec& p, const Vec& q, const Vec& omega, double c, Frame frame);

} // namespace relboltz
