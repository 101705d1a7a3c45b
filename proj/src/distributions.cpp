#include "relboltz/distributions.hpp"

#include <cmath>
#include <stdexcept>

#include "relboltz/frames.hpp"
#include "relboltz/quadrature.hpp"

namespace relboltz {

namespace {

const QuadRule& k2_rule()
{
    static const QuadRule rule = gauss_laguerre(64, 1.5);
    return rule;
}

const QuadRule& plain_laguerre_rule()
{
    static const QuadRule rule = gauss_laguerre(32, 0.0);
    return rule;
}

// log of the Juttner normalization integral scaled by e^{c^2}:
// N=3: 2 (2 pi)^{(N-1)/2} c K2(c^2) e^{c^2};  N=2: e^{c^2} int e^{-c p0} dp.
double log_partition_scaled(double c, int dim)
{
    struct Memo {
        double c = -1.0;
        int dim = 0;
        double value = 0.0;
    };
    thread_local Memo memo;
    if (memo.c == c && memo.dim == dim) return memo.value;

    double value;
    if (dim == 3) {
        value = std::log(4.0 * M_PI * c * bessel_k2_scaled(c * c));
    } else {
        // Z2(c) = 2 pi int_c^inf u e^{-cu} du; substituting u = c + s/c gives
        // (2 pi / c) e^{-c^2} int_0^inf e^{-s} (c + s/c) ds.
        const QuadRule& rule = plain_laguerre_rule();
        double acc = 0.0;
        for (std::size_t i = 0; i < rule.x.size(); ++i)
            acc += rule.w[i] * (c + rule.x[i] / c);
        value = std::log(2.0 * M_PI * acc / c);
    }
    memo = Memo{c, dim, value};
    return value;
}

double log_juttner(double pnorm, double c, int dim)
{
    const double p0 = std::sqrt(c * c + pnorm * pnorm);
    // c(c - p0) = -c^2(sqrt(1+|p|^2/c^2) - 1), finite for any c.
    return c * (c - p0) - log_partition_scaled(c, dim);
}

} // namespace

double bessel_k2_scaled(double x)
{
    if (!(x >= 0.1)) throw std::domain_error("bessel_k2: x below supported range (x >= 0.1)");
    const QuadRule& rule = k2_rule();
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i)
        acc += rule.w[i] * std::pow(rule.x[i] / x + 2.0, 1.5);
    return acc / (3.0 * std::sqrt(x));
}

double bessel_k2(double x)
{
    return std::exp(-x) * bessel_k2_scaled(x);
}

double juttner(double pnorm, double c, int dim)
{
    if (dim != 2 && dim != 3) throw std::invalid_argument("juttner: N must be 2 or 3");
    if (!(c > 0.0) || !std::isfinite(c)) throw std::domain_error("juttner: invalid c");
    return std::exp(log_juttner(pnorm, c, dim));
}

double juttner(const Vec& p, double c, int dim)
{
    if (p.n != dim) throw std::invalid_argument("juttner: dimension mismatch");
    return juttner(norm(p), c, dim);
}

double maxwellian(double pnorm, int dim)
{
    if (dim != 2 && dim != 3) throw std::invalid_argument("maxwellian: N must be 2 or 3");
    return std::pow(2.0 * M_PI, -0.5 * dim) * std::exp(-0.5 * pnorm * pnorm);
}

double maxwellian(const Vec& p, int dim)
{
    if (p.n != dim) throw std::invalid_argument("maxwellian: dimension mismatch");
    return maxwellian(norm(p), dim);
}

double weight_rel(const Vec& x, const Vec& p, double c, const WeightParams& params)
{
    if (params.alpha <= 0.0 || params.beta <= 0.0)
        throw std::invalid_argument("weight_rel: alpha, beta must be positive");
    const double p0 = energy(p, c);
    return std::exp(-params.alpha * p0 * norm2(x) / c +
                    params.beta * log_juttner(norm(p), c, p.n));
}

double weight_newt(const Vec& x, const Vec& p, const WeightParams& params)
{
    if (params.alpha <= 0.0 || params.beta <= 0.0)
        throw std::invalid_argument("weight_newt: alpha, beta must be positive");
    return std::exp(-params.alpha * norm2(x)) * std::pow(maxwellian(p, p.n), params.beta);
}

double invariant_identity_residual(const Vec& x, double t, const Vec& p, const Vec& q,
                                   const Vec& omega, double c, Frame frame)
{
    if (t < 0.0) throw std::invalid_argument("invariant_identity_residual: t must be >= 0");
    if (frame != Frame::GS && frame != Frame::CM)
        throw std::invalid_argument("invariant_identity_residual: frame must be GS or CM");
    const ScatteringEvent ev = make_event(p, q, omega, c, frame);

    const double p0 = energy(p, c), q0 = energy(q, c);
    const double pp0 = energy(ev.p_out, c), qp0 = energy(ev.q_out, c);
    const Vec ph = normalized_velocity(p, c);
    const Vec qh = normalized_velocity(q, c);
    const Vec pph = normalized_velocity(ev.p_out, c);
    const Vec qph = normalized_velocity(ev.q_out, c);
    const double c3t2 = c * c * c * t * t;

    const double lhs = c3t2 / qp0 + (qp0 / c) * norm2(x + t * (ph - qph)) +
                       c3t2 / pp0 + (pp0 / c) * norm2(x + t * (ph - pph));
    const double rhs = c3t2 / p0 + (p0 / c) * norm2(x) +
                       c3t2 / q0 + (q0 / c) * norm2(x + t * (ph - qh));
    if (rhs == 0.0) return 0.0;
    return std::fabs(lhs - rhs) / rhs;
}

SharpAsympReport sharp_asymp_check(double h, double c, double a1, double bound)
{
    if (h < 0.0 || !(c >= 1.0)) throw std::domain_error("sharp_asymp_check: need h >= 0, c >= 1");
    if (h > a1 * std::sqrt(c))
        throw std::domain_error("sharp_asymp_check: h exceeds a1 sqrt(c)");
    SharpAsympReport rep;
    rep.ratio = std::exp(log_juttner(h, c, 3) + 0.5 * h * h);
    const double xr = h * h / (c * c);
    const double remainder = std::sqrt(1.0 + xr) - 1.0 - 0.5 * xr;
    rep.remainder = std::fabs(c * c * remainder);
    rep.pass = rep.ratio <= bound && rep.remainder <= 0.125 + 1e-12;
    return rep;
}

} // namespace relboltz
