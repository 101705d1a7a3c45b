#include "relboltz/collision_op.hpp"

#include <cmath>
#include <stdexcept>

#include "relboltz/frames.hpp"
#include "relboltz/quadrature.hpp"
#include "relboltz/rng.hpp"

namespace relboltz {

namespace {

double sigma_eval_or_zero(const CrossSection& sigma, double g, double theta, double c)
{
    // Prefactors vanish at g = 0; defining the integrand as 0 there keeps
    // singular kinds (Moller, Israel) integrable.
    if (g <= 0.0) return 0.0;
    return evaluate(sigma, g, theta, c);
}

double newton_theta(const Vec& p, const Vec& q, const Vec& p_out, const Vec& q_out)
{
    const double r2 = norm2(p - q);
    if (r2 == 0.0) return 0.0;
    double ct = dot(p - q, p_out - q_out) / r2;
    ct = std::min(1.0, std::max(-1.0, ct));
    return std::acos(ct);
}

struct QNode {
    Vec q;
    double w;
};

std::vector<QNode> q_rule(int dim, const QuadratureSpec& quad)
{
    if (quad.n_q < 2 || quad.q_extent <= 0.0)
        throw std::invalid_argument("quadrature: n_q >= 2 and positive extent required");
    const int n = quad.n_q;
    const double L = quad.q_extent;
    const double d = 2.0 * L / (n - 1);
    std::vector<QNode> nodes;
    const double w = std::pow(d, dim);
    if (dim == 2) {
        nodes.reserve(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                nodes.push_back({Vec(-L + i * d, -L + j * d), w});
    } else {
        nodes.reserve(static_cast<std::size_t>(n) * n * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    nodes.push_back({Vec(-L + i * d, -L + j * d, -L + k * d), w});
    }
    return nodes;
}

double sigma_for_newton(const CrossSection& sigma, double g, double theta)
{
    return sigma_eval_or_zero(sigma, g, theta, kNewtonianC);
}

} // namespace

KernelSample kernel_sample(const Vec& p, const Vec& q, const Vec& omega, double c,
                           const CrossSection& sigma, Rep rep)
{
    KernelSample ks;
    switch (rep) {
        case Rep::GS: {
            const CollisionInvariants inv = invariants(p, q, c);
            if (inv.g <= 0.0) return ks;
            const GsCollision gs = gs_post_collision(p, q, omega, c);
            const double theta = sigma.theta_independent()
                                     ? 0.0
                                     : scattering_angle(p, q, gs.p_out, gs.q_out, c);
            const double sg = sigma_eval_or_zero(sigma, inv.g, theta, c);
            if (sg == 0.0) return ks;
            const double p0 = energy(p, c), q0 = energy(q, c);
            const double e = p0 + q0;
            const double wpq = dot(omega, p + q);
            const double denom = e * e - wpq * wpq;
            const double flux = std::fabs(dot(omega, (1.0 / p0) * p - (1.0 / q0) * q));
            ks.weight = inv.s * sg * c * e * e * flux / (denom * denom);
            ks.p_out = gs.p_out;
            ks.q_out = gs.q_out;
            return ks;
        }
        case Rep::CM: {
            const CollisionInvariants inv = invariants(p, q, c);
            if (inv.g <= 0.0) return ks;
            cm_post_collision(p, q, omega, c, ks.p_out, ks.q_out);
            const double theta = sigma.theta_independent()
                                     ? 0.0
                                     : scattering_angle(p, q, ks.p_out, ks.q_out, c);
            const double sg = sigma_eval_or_zero(sigma, inv.g, theta, c);
            if (sg == 0.0) return ks;
            ks.weight = moller_velocity(p, q, c) * sg;
            return ks;
        }
        case Rep::Newton: {
            const double r = norm(p - q);
            if (r == 0.0) return ks;
            newton_post_omega(p, q, omega, ks.p_out, ks.q_out);
            const double theta = sigma.theta_independent()
                                     ? 0.0
                                     : newton_theta(p, q, ks.p_out, ks.q_out);
            const double sg = sigma_eval_or_zero(sigma, r, theta, kNewtonianC);
            if (sg == 0.0) return ks;
            ks.weight = std::fabs(dot(omega, p - q)) * sg;
            return ks;
        }
    }
    return ks;
}

std::vector<std::pair<Vec, double>> omega_rule(int dim, int n_omega)
{
    if (n_omega < 2) throw std::invalid_argument("omega_rule: n_omega >= 2 required");
    std::vector<std::pair<Vec, double>> rule;
    if (dim == 2) {
        rule.reserve(n_omega);
        for (int k = 0; k < n_omega; ++k) {
            const double a = 2.0 * M_PI * (k + 0.5) / n_omega;
            rule.emplace_back(Vec(std::cos(a), std::sin(a)), 2.0 * M_PI / n_omega);
        }
    } else {
        const QuadRule gl = gauss_legendre(n_omega);
        rule.reserve(static_cast<std::size_t>(n_omega) * n_omega);
        for (int i = 0; i < n_omega; ++i) {
            const double ct = gl.x[i];
            const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
            for (int j = 0; j < n_omega; ++j) {
                const double phi = 2.0 * M_PI * (j + 0.5) / n_omega;
                rule.emplace_back(Vec(st * std::cos(phi), st * std::sin(phi), ct),
                                  gl.w[i] * 2.0 * M_PI / n_omega);
            }
        }
    }
    return rule;
}

double kernel_gs(const Vec& p, const Vec& q, const Vec& omega, double c,
                 const CrossSection& sigma)
{
    const KernelSample ks = kernel_sample(p, q, omega, c, sigma, Rep::GS);
    return ks.weight;
}

double kernel_newt(const Vec& p, const Vec& q, const Vec& omega, const CrossSection& sigma_inf)
{
    const double r = norm(p - q);
    if (r == 0.0) return 0.0;
    Vec p_out, q_out;
    newton_post_omega(p, q, omega, p_out, q_out);
    const double theta =
        sigma_inf.theta_independent() ? 0.0 : newton_theta(p, q, p_out, q_out);
    return std::fabs(dot(omega, p - q)) * sigma_for_newton(sigma_inf, r, theta);
}

namespace {

double q_integral(const MomentumFunction& f, const MomentumFunction& h, const Vec& p, double c,
                  const CrossSection& sigma, Rep rep, const QuadratureSpec& quad, bool gain)
{
    const auto qs = q_rule(p.n, quad);
    const auto ws = omega_rule(p.n, quad.n_omega);
    double acc = 0.0;
    const double fp = gain ? 0.0 : f(p);
    if (!gain && fp == 0.0) return 0.0;
    for (const auto& qn : qs) {
        double inner = 0.0;
        if (gain) {
            for (const auto& [omega, wOmega] : ws) {
                const KernelSample ks = kernel_sample(p, qn.q, omega, c, sigma, rep);
                if (ks.weight == 0.0) continue;
                inner += wOmega * ks.weight * f(ks.p_out) * h(ks.q_out);
            }
        } else {
            const double hq = h(qn.q);
            if (hq == 0.0) continue;
            for (const auto& [omega, wOmega] : ws) {
                const KernelSample ks = kernel_sample(p, qn.q, omega, c, sigma, rep);
                inner += wOmega * ks.weight;
            }
            inner *= fp * hq;
        }
        acc += qn.w * inner;
    }
    return acc;
}

} // namespace

double q_gain(const MomentumFunction& f, const MomentumFunction& h, const Vec& p, double c,
              const CrossSection& sigma, Rep rep, const QuadratureSpec& quad)
{
    return q_integral(f, h, p, c, sigma, rep, quad, true);
}

double q_loss(const MomentumFunction& f, const MomentumFunction& h, const Vec& p, double c,
              const CrossSection& sigma, Rep rep, const QuadratureSpec& quad)
{
    return q_integral(f, h, p, c, sigma, rep, quad, false);
}

double q_gain_mc(const MomentumFunction& f, const MomentumFunction& h, const Vec& p, double c,
                 const CrossSection& sigma, Rep rep, const QuadratureSpec& quad)
{
    Rng rng(quad.seed);
    const double L = quad.q_extent;
    const double box = std::pow(2.0 * L, p.n);
    const double sphere = (p.n == 2) ? 2.0 * M_PI : 4.0 * M_PI;
    double acc = 0.0;
    for (int i = 0; i < quad.mc_samples; ++i) {
        Vec q = Vec::zero(p.n);
        for (int d = 0; d < p.n; ++d) q[d] = rng.uniform(-L, L);
        const Vec omega = rng.unit_vec(p.n);
        const KernelSample ks = kernel_sample(p, q, omega, c, sigma, rep);
        if (ks.weight == 0.0) continue;
        acc += ks.weight * f(ks.p_out) * h(ks.q_out);
    }
    return acc * box * sphere / quad.mc_samples;
}

RefinedValue q_gain_refined(const MomentumFunction& f, const MomentumFunction& h, const Vec& p,
                            double c, const CrossSection& sigma, Rep rep,
                            const QuadratureSpec& quad)
{
    QuadratureSpec coarse = quad;
    coarse.n_q = std::max(2, quad.n_q / 2);
    coarse.n_omega = std::max(2, quad.n_omega / 2);
    RefinedValue rv;
    rv.value = q_gain(f, h, p, c, sigma, rep, quad);
    rv.error_estimate = std::fabs(rv.value - q_gain(f, h, p, c, sigma, rep, coarse));
    return rv;
}

MomentResiduals moment_conservation(const MomentumFunction& f, double c,
                                    const CrossSection& sigma, Rep rep,
                                    const QuadratureSpec& quad, int dim)
{
    const auto ps = q_rule(dim, quad);
    std::vector<double> qvals(ps.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (long idx = 0; idx < static_cast<long>(ps.size()); ++idx) {
        const Vec& p = ps[idx].q;
        qvals[idx] = q_gain(f, f, p, c, sigma, rep, quad) -
                     q_loss(f, f, p, c, sigma, rep, quad);
    }

    double net_mass = 0.0, abs_mass = 0.0;
    Vec net_mom = Vec::zero(dim);
    double abs_mom = 0.0;
    double net_energy = 0.0, abs_energy = 0.0;
    for (std::size_t idx = 0; idx < ps.size(); ++idx) {
        const Vec& p = ps[idx].q;
        const double qv = qvals[idx] * ps[idx].w;
        const double p0 = std::isinf(c) ? 0.5 * norm2(p) : energy(p, c);
        net_mass += qv;
        abs_mass += std::fabs(qv);
        net_mom += qv * p;
        abs_mom += std::fabs(qv) * norm(p);
        net_energy += qv * p0;
        abs_energy += std::fabs(qv) * p0;
    }
    MomentResiduals res;
    res.mass = abs_mass > 0.0 ? std::fabs(net_mass) / abs_mass : 0.0;
    res.momentum = abs_mom > 0.0 ? norm(net_mom) / abs_mom : 0.0;
    res.energy = abs_energy > 0.0 ? std::fabs(net_energy) / abs_energy : 0.0;
    return res;
}

} // namespace relboltz
