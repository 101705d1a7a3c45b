#include "relboltz/collision_table.hpp"

#include <cmath>
#include <stdexcept>

namespace relboltz {

void CollisionTable::build(const Params& params)
{
    params_ = params;
    np_ = params.paxis.n;
    np2_ = np_ * np_;
    cutoff_ = params.apply_cutoff && params.sigma.cutoff.has_value();
    if (cutoff_ && std::isinf(params.c))
        throw std::invalid_argument("collision table: cutoff needs finite c");
    const double d = params.paxis.d();
    dq2_ = d * d;

    auto omegas = omega_rule(2, params.n_omega);
    double wscale = 1.0;
    if (params.sigma.theta_independent() && params.n_omega % 2 == 0) {
        omegas.resize(omegas.size() / 2); // the uniform rule pairs k with k + n/2
        wscale = 2.0;
    }
    nw_ = static_cast<int>(omegas.size());

    const std::size_t total =
        static_cast<std::size_t>(np2_) * np2_ * nw_;
    w_.assign(total, 0.0);
    pbase_.assign(total, -1);
    qbase_.assign(total, -1);
    pfx_.assign(total, 0.f);
    pfy_.assign(total, 0.f);
    qfx_.assign(total, 0.f);
    qfy_.assign(total, 0.f);
    if (cutoff_) lhs_.assign(total, 0.f);

    phat_x_.assign(np2_, 0.0);
    phat_y_.assign(np2_, 0.0);
    q0_over_c_.assign(np2_, 0.0);
    std::vector<Vec> pts(np2_);
    for (int i = 0; i < np2_; ++i) {
        const Vec p(params.paxis.node(i / np_), params.paxis.node(i % np_));
        pts[i] = p;
        if (std::isinf(params.c)) {
            phat_x_[i] = p[0];
            phat_y_[i] = p[1];
            q0_over_c_[i] = 0.0;
        } else {
            const Vec ph = normalized_velocity(p, params.c);
            phat_x_[i] = ph[0];
            phat_y_[i] = ph[1];
            q0_over_c_[i] = energy(p, params.c) / params.c;
        }
    }

#pragma omp parallel for schedule(dynamic, 4)
    for (int i = 0; i < np2_; ++i) {
        const Vec p = pts[i];
        for (int j = 0; j < np2_; ++j) {
            const Vec q = pts[j];
            const std::size_t base = (static_cast<std::size_t>(i) * np2_ + j) * nw_;
            for (int k = 0; k < nw_; ++k) {
                const auto& [omega, wo] = omegas[k];
                const KernelSample ks =
                    kernel_sample(p, q, omega, params.c, params.sigma, params.rep);
                if (ks.weight == 0.0) continue;
                const std::size_t e = base + k;
                w_[e] = wscale * dq2_ * wo * ks.weight;
                const Bilinear bp = locate2(params.paxis, ks.p_out[0], ks.p_out[1]);
                const Bilinear bq = locate2(params.paxis, ks.q_out[0], ks.q_out[1]);
                pbase_[e] = bp.base;
                pfx_[e] = static_cast<float>(bp.fx);
                pfy_[e] = static_cast<float>(bp.fy);
                qbase_[e] = bq.base;
                qfx_[e] = static_cast<float>(bq.fx);
                qfy_[e] = static_cast<float>(bq.fy);
                if (cutoff_) {
                    const double p0 = energy(p, params.c), q0 = energy(q, params.c);
                    const double pp0 = energy(ks.p_out, params.c);
                    const double qp0 = energy(ks.q_out, params.c);
                    const double c3 = params.c * params.c * params.c;
                    lhs_[e] = static_cast<float>(
                        c3 * (1.0 / p0 + 1.0 / q0 - 1.0 / pp0 - 1.0 / qp0));
                }
            }
        }
    }
}

void CollisionTable::apply(const double* f, const Vec& x, double t, double* gain,
                           double* lossfreq) const
{
    const int np = np_;
    const int np2 = np2_;
    const int nw = nw_;
    const CutoffParams co = cutoff_ ? *params_.sigma.cutoff : CutoffParams{};
    // t = 0 means h_c -> infinity: the cut-off never bites there.
    const bool masked = cutoff_ && t > 0.0;
    const double inv_t2 = masked ? 1.0 / (t * t) : 0.0;
    const double x0 = x[0], x1 = x[1];

    for (int i = 0; i < np2; ++i) {
        double acc = 0.0;
        double lf = 0.0;
        const double phx = phat_x_[i], phy = phat_y_[i];
        for (int j = 0; j < np2; ++j) {
            const std::size_t base = (static_cast<std::size_t>(i) * np2 + j) * nw;
            float tau = 0.f;
            if (masked) {
                // -h_c with h_c = B/t^2 + a alpha q0 |x + t(phat-qhat)|^2 / (c t^2)
                const double dx = x0 + t * (phx - phat_x_[j]);
                const double dy = x1 + t * (phy - phat_y_[j]);
                tau = static_cast<float>(
                    -(co.B + co.a * co.alpha * q0_over_c_[j] * (dx * dx + dy * dy)) * inv_t2);
            }
            double wsum = 0.0;
            for (int k = 0; k < nw; ++k) {
                const std::size_t e = base + k;
                const double wk = w_[e];
                if (wk == 0.0) continue;
                if (masked && lhs_[e] < tau) continue;
                wsum += wk;
                const int pb = pbase_[e];
                const int qb = qbase_[e];
                if (pb < 0 || qb < 0) continue;
                const double* fp = f + pb;
                const double pfyv = pfy_[e];
                const double a0 = fp[0] + pfyv * (fp[1] - fp[0]);
                const double a1 = fp[np] + pfyv * (fp[np + 1] - fp[np]);
                const double P = a0 + pfx_[e] * (a1 - a0);
                const double* fq = f + qb;
                const double qfyv = qfy_[e];
                const double b0 = fq[0] + qfyv * (fq[1] - fq[0]);
                const double b1 = fq[np] + qfyv * (fq[np + 1] - fq[np]);
                const double Q = b0 + qfx_[e] * (b1 - b0);
                acc += wk * P * Q;
            }
            lf += wsum * f[j];
        }
        gain[i] = acc;
        lossfreq[i] = lf;
    }
}

} // namespace relboltz
