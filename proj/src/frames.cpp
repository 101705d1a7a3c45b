#include "relboltz/frames.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace relboltz {

namespace {

void require_unit(const Vec& omega)
{
    if (std::fabs(norm(omega) - 1.0) > 1e-12)
        throw std::invalid_argument("omega must be a unit vector");
}

// Determinant by Gaussian elimination with partial pivoting; n <= 6 here.
double det_small(std::vector<double>& m, int n)
{
    double det = 1.0;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int r = k + 1; r < n; ++r)
            if (std::fabs(m[r * n + k]) > std::fabs(m[piv * n + k])) piv = r;
        if (piv != k) {
            for (int cidx = 0; cidx < n; ++cidx) std::swap(m[k * n + cidx], m[piv * n + cidx]);
            det = -det;
        }
        const double d = m[k * n + k];
        if (d == 0.0) return 0.0;
        det *= d;
        for (int r = k + 1; r < n; ++r) {
            const double f = m[r * n + k] / d;
            for (int cidx = k; cidx < n; ++cidx) m[r * n + cidx] -= f * m[k * n + cidx];
        }
    }
    return det;
}

} // namespace

GsCollision gs_post_collision(const Vec& p, const Vec& q, const Vec& omega, double c)
{
    require_unit(omega);
    require_same_frame(p, q);
    const double p0 = energy(p, c);
    const double q0 = energy(q, c);
    const double wpq = dot(omega, p + q);
    const double denom = (p0 + q0) * (p0 + q0) - wpq * wpq;
    if (denom <= 0.0) throw std::logic_error("gs_post_collision: non-positive denominator");

    GsCollision out;
    out.a = 2.0 * (p0 + q0) * p0 * q0 * dot(omega, (1.0 / q0) * q - (1.0 / p0) * p) / denom;
    out.n0 = 2.0 * wpq * (p0 * dot(omega, q) - q0 * dot(omega, p)) / denom;
    out.p_out = p + out.a * omega;
    out.q_out = q - out.a * omega;
    return out;
}

void cm_post_collision(const Vec& p, const Vec& q, const Vec& omega, double c,
                       Vec& p_out, Vec& q_out)
{
    require_unit(omega);
    require_same_frame(p, q);
    const CollisionInvariants inv = invariants(p, q, c);
    if (inv.g <= 0.0) { // collision sphere degenerates to a point
        p_out = p;
        q_out = q;
        return;
    }
    const double p0 = energy(p, c);
    const double q0 = energy(q, c);
    const Vec tot = p + q;
    const double tot2 = norm2(tot);
    const double gamma = (p0 + q0) / std::sqrt(inv.s);

    Vec dir = omega;
    const double eps = 1e-12 * (p0 + q0) / c;
    if (std::sqrt(tot2) >= eps) {
        const double corr = (gamma - 1.0) * dot(tot, omega) / tot2;
        dir += corr * tot;
    }
    const Vec half = 0.5 * inv.g * dir;
    p_out = 0.5 * tot + half;
    q_out = 0.5 * tot - half;
}

void newton_post_omega(const Vec& p, const Vec& q, const Vec& omega, Vec& p_out, Vec& q_out)
{
    require_unit(omega);
    require_same_frame(p, q);
    const double t = dot(omega, q - p);
    p_out = p + t * omega;
    q_out = q - t * omega;
}

void newton_post_sigma(const Vec& p, const Vec& q, const Vec& omega, Vec& p_out, Vec& q_out)
{
    require_unit(omega);
    require_same_frame(p, q);
    const Vec mid = 0.5 * (p + q);
    const Vec half = 0.5 * norm(p - q) * omega;
    p_out = mid + half;
    q_out = mid - half;
}

double gs_jacobian(const Vec& p, const Vec& q, const Vec& omega, double c)
{
    const GsCollision ev = gs_post_collision(p, q, omega, c);
    const double p0 = energy(p, c), q0 = energy(q, c);
    return -energy(ev.p_out, c) * energy(ev.q_out, c) / (p0 * q0);
}

double gs_jacobian_fd(const Vec& p, const Vec& q, const Vec& omega, double c, double step_scale)
{
    const int dim = p.n;
    const int n = 2 * dim;
    const double h = step_scale * std::max(1.0, std::max(norm(p), norm(q)));
    std::vector<double> jac(n * n);
    for (int col = 0; col < n; ++col) {
        Vec pp = p, qp = q, pm = p, qm = q;
        if (col < dim) {
            pp[col] += h;
            pm[col] -= h;
        } else {
            qp[col - dim] += h;
            qm[col - dim] -= h;
        }
        const GsCollision up = gs_post_collision(pp, qp, omega, c);
        const GsCollision dn = gs_post_collision(pm, qm, omega, c);
        for (int row = 0; row < dim; ++row) {
            jac[row * n + col] = (up.p_out[row] - dn.p_out[row]) / (2.0 * h);
            jac[(row + dim) * n + col] = (up.q_out[row] - dn.q_out[row]) / (2.0 * h);
        }
    }
    return det_small(jac, n);
}

double post_collision_newton_diff(const Vec& p, const Vec& q, const Vec& omega, double c)
{
    const GsCollision rel = gs_post_collision(p, q, omega, c);
    Vec pn, qn;
    newton_post_omega(p, q, omega, pn, qn);
    return norm(pn - rel.p_out) + norm(qn - rel.q_out);
}

ScatteringEvent make_event(const Vec& p, const Vec& q, const Vec& omega, double c, Frame frame)
{
    ScatteringEvent ev;
    ev.p = p;
    ev.q = q;
    ev.omega = omega;
    ev.frame = frame;
    switch (frame) {
        case Frame::GS: {
            ev.c = c;
            const GsCollision gs = gs_post_collision(p, q, omega, c);
            ev.p_out = gs.p_out;
            ev.q_out = gs.q_out;
            break;
        }
        case Frame::CM:
            ev.c = c;
            cm_post_collision(p, q, omega, c, ev.p_out, ev.q_out);
            break;
        case Frame::NewtonOmega:
            ev.c = kNewtonianC;
            newton_post_omega(p, q, omega, ev.p_out, ev.q_out);
            break;
        case Frame::NewtonSigma:
            ev.c = kNewtonianC;
            newton_post_sigma(p, q, omega, ev.p_out, ev.q_out);
            break;
    }
    return ev;
}

} // namespace relboltz
