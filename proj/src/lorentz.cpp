#include "relboltz/lorentz.hpp"

#include <cmath>
#include <stdexcept>

namespace relboltz {

namespace {

void require_n3(const Vec& p)
{
    if (p.n != 3) throw std::invalid_argument("lorentz module requires N = 3");
}

constexpr double kD[4] = {1.0, -1.0, -1.0, -1.0};

// Gram-Schmidt a unit vector orthogonal to w3, seeded from the coordinate
// axis least aligned with it.
Vec orthogonal_unit(const Vec& w3)
{
    int k = 0;
    for (int i = 1; i < 3; ++i)
        if (std::fabs(w3[i]) < std::fabs(w3[k])) k = i;
    Vec e = Vec::zero(3);
    e[k] = 1.0;
    Vec w1 = e - dot(e, w3) * w3;
    return (1.0 / norm(w1)) * w1;
}

} // namespace

std::array<double, 4> LorentzMatrix::apply(const std::array<double, 4>& x) const
{
    std::array<double, 4> y{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) y[i] += m[i][j] * x[j];
    return y;
}

std::array<double, 4> LorentzMatrix::apply(const FourMomentum& P) const
{
    return apply({P.e, P.p[0], P.p[1], P.p[2]});
}

LorentzMatrix identity_lorentz()
{
    LorentzMatrix lam;
    for (int i = 0; i < 4; ++i) lam.m[i][i] = 1.0;
    lam.kind = LorentzKind::Custom;
    return lam;
}

double lorentz_condition_residual(const LorentzMatrix& lam)
{
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            double s = 0.0;
            for (int k = 0; k < 4; ++k) s += lam.m[k][i] * kD[k] * lam.m[k][j];
            const double target = (i == j) ? kD[i] : 0.0;
            worst = std::max(worst, std::fabs(s - target));
        }
    }
    return worst;
}

LorentzMatrix inverse(const LorentzMatrix& lam)
{
    LorentzMatrix inv;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) inv.m[i][j] = kD[i] * lam.m[j][i] * kD[j];
    inv.kind = LorentzKind::Custom;
    return inv;
}

LorentzMatrix matmul(const LorentzMatrix& a, const LorentzMatrix& b)
{
    LorentzMatrix r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = 0.0;
            for (int k = 0; k < 4; ++k) s += a.m[i][k] * b.m[k][j];
            r.m[i][j] = s;
        }
    r.kind = LorentzKind::Custom;
    return r;
}

LorentzMatrix boost_to_com(const Vec& p, const Vec& q, double c)
{
    require_n3(p);
    require_same_frame(p, q);
    const Vec tot = p + q;
    const double tot2 = norm2(tot);
    if (tot2 == 0.0) {
        LorentzMatrix lam = identity_lorentz();
        lam.kind = LorentzKind::Boost;
        return lam;
    }
    const double e = energy(p, c) + energy(q, c);
    const CollisionInvariants inv = invariants(p, q, c);
    // v = (p+q)/(p0+q0) as a dimensionless ratio makes gamma = (p0+q0)/sqrt(s)
    // exact for every c.
    const Vec v = (1.0 / e) * tot;
    const double gamma = e / std::sqrt(inv.s);
    const double v2 = norm2(v);

    LorentzMatrix lam;
    lam.kind = LorentzKind::Boost;
    lam.m[0][0] = gamma;
    for (int i = 0; i < 3; ++i) {
        lam.m[0][i + 1] = -gamma * v[i];
        lam.m[i + 1][0] = -gamma * v[i];
        for (int j = 0; j < 3; ++j)
            lam.m[i + 1][j + 1] = (i == j ? 1.0 : 0.0) + (gamma - 1.0) * v[i] * v[j] / v2;
    }
    return lam;
}

LorentzMatrix frame_transform_ex2(const Vec& p, const Vec& q, double c)
{
    require_n3(p);
    require_same_frame(p, q);
    const Vec tot = p + q;
    const double tlen = norm(tot);
    if (tlen == 0.0)
        throw std::domain_error("frame_transform_ex2: p+q = 0 (already in CM frame)");

    const double e = energy(p, c) + energy(q, c);
    const double rs = std::sqrt(invariants(p, q, c).s); // |P+Q| in the Minkowski sense
    const Vec w3 = (1.0 / tlen) * tot;

    Vec w1;
    const double a1 = tot[0], a2 = tot[1], a3 = tot[2];
    if (a1 != 0.0 && a2 != 0.0 && a3 != 0.0) {
        // Published vector orthogonalized against p+q; its norm can underflow
        // when the components nearly cancel, in which case we fall back below.
        Vec raw(-a2 * a3, 2.0 * a1 * a3, -a1 * a2);
        const double len = norm(raw);
        if (len >= 1e-13 * tlen * tlen) {
            w1 = (1.0 / len) * raw;
            w1 = w1 - dot(w1, w3) * w3;
            w1 = (1.0 / norm(w1)) * w1;
        } else {
            w1 = orthogonal_unit(w3);
        }
    } else {
        w1 = orthogonal_unit(w3);
    }
    Vec w2 = cross3(w1, w3);
    w2 = (1.0 / norm(w2)) * w2;

    LorentzMatrix lam;
    lam.kind = LorentzKind::FrameEx2;
    lam.m[0][0] = e / rs;
    for (int i = 0; i < 3; ++i) lam.m[0][i + 1] = -tot[i] / rs;
    for (int i = 0; i < 3; ++i) lam.m[1][i + 1] = w1[i];
    for (int i = 0; i < 3; ++i) lam.m[2][i + 1] = w2[i];
    lam.m[3][0] = tlen / rs;
    for (int i = 0; i < 3; ++i) lam.m[3][i + 1] = -(tot[i] / tlen) * (e / rs);
    return lam;
}

LorentzMatrix hs_transform_ex3(const Vec& p, const Vec& q, double c)
{
    require_n3(p);
    require_same_frame(p, q);
    const double cross = cross_mag(p, q);
    const CollisionInvariants inv = invariants(p, q, c);
    if (cross <= 0.0 || inv.g <= 0.0)
        throw std::domain_error("hs_transform_ex3: collinear momenta are degenerate");

    const double p0 = energy(p, c), q0 = energy(q, c);
    const double rs = std::sqrt(inv.s);
    const double g = inv.g;
    const Vec pxq = cross3(p, q);

    LorentzMatrix lam;
    lam.kind = LorentzKind::HilbertSchmidtEx3;

    lam.m[0][0] = (p0 + q0) / rs;
    for (int i = 0; i < 3; ++i) lam.m[0][i + 1] = -(p[i] + q[i]) / rs;

    // Second row from the Lorentz condition: time entry 2|p x q|/(sqrt(s) g),
    // spatial part in span{p,q} solving the orthogonality constraints. The
    // braces c^2 p0 - q0 P.Q reduce to q0 (p.q) - p0 |q|^2, which stays
    // cancellation-free as c grows.
    const double l10 = 2.0 * cross / (rs * g);
    lam.m[1][0] = l10;
    const double ca = (q0 * dot(p, q) - p0 * norm2(q)) / (cross * cross);
    const double cb = (p0 * dot(p, q) - q0 * norm2(p)) / (cross * cross);
    for (int i = 0; i < 3; ++i) lam.m[1][i + 1] = l10 * (ca * p[i] + cb * q[i]);

    for (int i = 0; i < 3; ++i) lam.m[2][i + 1] = pxq[i] / cross;

    // Signs chosen so Lam(P-Q) lands on +g; the energy difference is written
    // as (|p|^2 - |q|^2)/(p0 + q0) to dodge the large-c cancellation.
    lam.m[3][0] = -(norm2(p) - norm2(q)) / ((p0 + q0) * g);
    for (int i = 0; i < 3; ++i) lam.m[3][i + 1] = (p[i] - q[i]) / g;
    return lam;
}

void post_collision_via(const LorentzMatrix& lam, const Vec& p, const Vec& q,
                        const Vec& omega, double c, Vec& p_out, Vec& q_out)
{
    require_n3(p);
    if (std::fabs(norm(omega) - 1.0) > 1e-12)
        throw std::invalid_argument("post_collision_via: omega must be a unit vector");
    if (lorentz_condition_residual(lam) > 1e-8)
        throw std::domain_error("post_collision_via: matrix fails the Lorentz condition");

    const CollisionInvariants inv = invariants(p, q, c);
    if (inv.g <= 0.0) {
        p_out = p;
        q_out = q;
        return;
    }
    const FourMomentum P = four_momentum(p, c), Q = four_momentum(q, c);
    const auto im = lam.apply({P.e + Q.e, P.p[0] + Q.p[0], P.p[1] + Q.p[1], P.p[2] + Q.p[2]});
    const double rs = std::sqrt(inv.s);
    if (std::fabs(im[0] - rs) > 1e-8 * rs ||
        std::fabs(im[1]) + std::fabs(im[2]) + std::fabs(im[3]) > 1e-8 * rs)
        throw std::domain_error("post_collision_via: matrix does not map P+Q to (sqrt(s),0)");

    const LorentzMatrix li = inverse(lam);
    const std::array<double, 4> plus{rs, inv.g * omega[0], inv.g * omega[1], inv.g * omega[2]};
    const std::array<double, 4> minus{rs, -inv.g * omega[0], -inv.g * omega[1], -inv.g * omega[2]};
    const auto Pp = li.apply(plus);
    const auto Qp = li.apply(minus);
    p_out = Vec(0.5 * Pp[1], 0.5 * Pp[2], 0.5 * Pp[3]);
    q_out = Vec(0.5 * Qp[1], 0.5 * Qp[2], 0.5 * Qp[3]);
}

} // namespace relboltz
