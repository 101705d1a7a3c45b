#include "relboltz/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace relboltz {

namespace {

// The solver works in the # (characteristic label) representation:
//   f#(t, y, p) = f(t, y + v t, p),  v = phat (relativistic) or p (Newtonian).
// On the label grid the data f0 and the weight rho need no interpolation, the
// mild form is a plain cumulative sum per (y, p), and the weighted norm is
// sup f#/rho at the nodes. Interpolation enters only when Eulerianizing the
// iterate for the collision operator and gathering Q back to labels; those
// errors scale with Q ~ b^2, not with the data itself.
struct GridCtx {
    int nx = 0, nx2 = 0, np = 0, np2 = 0, nt = 0;
    double dt = 0.0;
    std::vector<Vec> xpts, ppts;
    std::vector<double> vx, vy;  // characteristic velocity per p index
    std::vector<double> rho;     // [i][y] weight at the label nodes
    std::vector<char> resolvable; // rho within 1e-15 of its max: the weighted
                                  // ratio is measurable in doubles only there
    std::vector<double> f0p;     // [i][y] initial data

    std::size_t pidx(int i, int y) const { return static_cast<std::size_t>(i) * nx2 + y; }
};

using NodeArray = std::vector<std::vector<double>>; // [m][i*nx2+y] (p-major)

GridCtx make_ctx(const FieldGrid& f0, const SolveConfig& cfg)
{
    if (f0.xaxis.n != cfg.xaxis.n || f0.paxis.n != cfg.paxis.n)
        throw std::invalid_argument("picard_solve: initial data grid does not match config");
    GridCtx ctx;
    ctx.nx = cfg.xaxis.n;
    ctx.nx2 = ctx.nx * ctx.nx;
    ctx.np = cfg.paxis.n;
    ctx.np2 = ctx.np * ctx.np;
    ctx.nt = cfg.n_t;
    if (ctx.nt < 2) throw std::invalid_argument("picard_solve: n_t >= 2 required");
    ctx.dt = cfg.T / (ctx.nt - 1);

    ctx.xpts.resize(ctx.nx2);
    for (int y = 0; y < ctx.nx2; ++y)
        ctx.xpts[y] = Vec(cfg.xaxis.node(y / ctx.nx), cfg.xaxis.node(y % ctx.nx));
    ctx.ppts.resize(ctx.np2);
    ctx.vx.resize(ctx.np2);
    ctx.vy.resize(ctx.np2);
    for (int i = 0; i < ctx.np2; ++i) {
        const Vec p(cfg.paxis.node(i / ctx.np), cfg.paxis.node(i % ctx.np));
        ctx.ppts[i] = p;
        const Vec v = cfg.newtonian() ? p : normalized_velocity(p, cfg.c);
        ctx.vx[i] = v[0];
        ctx.vy[i] = v[1];
    }

    ctx.rho.resize(static_cast<std::size_t>(ctx.np2) * ctx.nx2);
    ctx.f0p.resize(ctx.rho.size());
#pragma omp parallel for schedule(static)
    for (int i = 0; i < ctx.np2; ++i) {
        for (int y = 0; y < ctx.nx2; ++y) {
            ctx.rho[ctx.pidx(i, y)] =
                cfg.newtonian() ? weight_newt(ctx.xpts[y], ctx.ppts[i], cfg.weights)
                                : weight_rel(ctx.xpts[y], ctx.ppts[i], cfg.c, cfg.weights);
            ctx.f0p[ctx.pidx(i, y)] = f0.at(y, i);
        }
    }
    double rhomax = 0.0;
    for (const double r : ctx.rho) rhomax = std::max(rhomax, r);
    ctx.resolvable.resize(ctx.rho.size());
    for (std::size_t k = 0; k < ctx.rho.size(); ++k)
        ctx.resolvable[k] = ctx.rho[k] >= 1e-15 * rhomax;
    return ctx;
}

CollisionTable::Params table_params(const SolveConfig& cfg)
{
    CollisionTable::Params tp;
    tp.paxis = cfg.paxis;
    tp.n_omega = cfg.n_omega;
    tp.c = cfg.c;
    tp.sigma = cfg.sigma;
    tp.rep = cfg.newtonian() ? Rep::Newton : cfg.rep;
    tp.apply_cutoff = cfg.use_cutoff && !cfg.newtonian() && cfg.sigma.cutoff.has_value();
    return tp;
}

NodeArray zero_nodes(const GridCtx& ctx)
{
    return NodeArray(ctx.nt,
                     std::vector<double>(static_cast<std::size_t>(ctx.np2) * ctx.nx2, 0.0));
}

// f(t_m, x, k) = f#(t_m, x - vhat_k t_m, k) on the Eulerian grid (x-major).
void eulerianize(const GridCtx& ctx, const SolveConfig& cfg, const std::vector<double>& fsharp,
                 double t, std::vector<double>& feul)
{
    for (int i = 0; i < ctx.np2; ++i) {
        const double sx = ctx.vx[i] * t, sy = ctx.vy[i] * t;
        const double* plane = fsharp.data() + static_cast<std::size_t>(i) * ctx.nx2;
        for (int y = 0; y < ctx.nx2; ++y)
            feul[static_cast<std::size_t>(y) * ctx.np2 + i] =
                interp2_at(plane, cfg.xaxis, ctx.xpts[y][0] - sx, ctx.xpts[y][1] - sy);
    }
}

// g#(t_m, y, k) = g(t_m, y + vhat_k t_m, k) back on the label grid (p-major).
void gather_sharp(const GridCtx& ctx, const SolveConfig& cfg, const std::vector<double>& geul_p,
                  double t, std::vector<double>& gsharp)
{
    for (int i = 0; i < ctx.np2; ++i) {
        const double sx = ctx.vx[i] * t, sy = ctx.vy[i] * t;
        const double* plane = geul_p.data() + static_cast<std::size_t>(i) * ctx.nx2;
        for (int y = 0; y < ctx.nx2; ++y)
            gsharp[ctx.pidx(i, y)] =
                interp2_at(plane, cfg.xaxis, ctx.xpts[y][0] + sx, ctx.xpts[y][1] + sy);
    }
}

// One collision pass over all nodes: from the # iterate to Q# (and optionally
// the loss frequency R#). Spatial points where the Eulerian iterate is below
// `floor` are skipped; Q there is quadratically negligible.
void collision_pass_sharp(const GridCtx& ctx, const SolveConfig& cfg,
                          const CollisionTable& table, const NodeArray& Fsharp,
                          NodeArray* Qsharp, NodeArray* Gsharp, NodeArray* Rsharp,
                          double floor, int first_node)
{
#pragma omp parallel
    {
        std::vector<double> feul(static_cast<std::size_t>(ctx.nx2) * ctx.np2);
        std::vector<double> qeul_p(static_cast<std::size_t>(ctx.np2) * ctx.nx2);
        std::vector<double> geul_p(Gsharp ? qeul_p.size() : 0);
        std::vector<double> reul_p(Rsharp ? qeul_p.size() : 0);
        std::vector<double> gain(ctx.np2), lossfreq(ctx.np2);
#pragma omp for schedule(dynamic)
        for (int m = first_node; m < ctx.nt; ++m) {
            const double t = m * ctx.dt;
            eulerianize(ctx, cfg, Fsharp[m], t, feul);
            for (int y = 0; y < ctx.nx2; ++y) {
                const double* frow = feul.data() + static_cast<std::size_t>(y) * ctx.np2;
                double fmax = 0.0;
                for (int i = 0; i < ctx.np2; ++i) fmax = std::max(fmax, std::fabs(frow[i]));
                if (fmax <= floor) {
                    for (int i = 0; i < ctx.np2; ++i) {
                        qeul_p[ctx.pidx(i, y)] = 0.0;
                        if (Gsharp) geul_p[ctx.pidx(i, y)] = 0.0;
                        if (Rsharp) reul_p[ctx.pidx(i, y)] = 0.0;
                    }
                    continue;
                }
                table.apply(frow, ctx.xpts[y], t, gain.data(), lossfreq.data());
                for (int i = 0; i < ctx.np2; ++i) {
                    if (Qsharp) qeul_p[ctx.pidx(i, y)] = gain[i] - frow[i] * lossfreq[i];
                    if (Gsharp) geul_p[ctx.pidx(i, y)] = gain[i];
                    if (Rsharp) reul_p[ctx.pidx(i, y)] = lossfreq[i];
                }
            }
            if (Qsharp) gather_sharp(ctx, cfg, qeul_p, t, (*Qsharp)[m]);
            if (Gsharp) gather_sharp(ctx, cfg, geul_p, t, (*Gsharp)[m]);
            if (Rsharp) gather_sharp(ctx, cfg, reul_p, t, (*Rsharp)[m]);
        }
    }
}

// f#_new[m] = f0 + trapezoid over s of Q#; exact arithmetic on the labels.
void duhamel_sharp(const GridCtx& ctx, const NodeArray& Qsharp, const std::vector<double>& f0p,
                   NodeArray& Fnew)
{
#pragma omp parallel for schedule(static)
    for (int m = 0; m < ctx.nt; ++m) {
        for (std::size_t k = 0; k < f0p.size(); ++k) {
            double val = f0p[k];
            for (int l = 0; l <= m && m > 0; ++l) {
                const double w = (l == 0 || l == m) ? 0.5 * ctx.dt : ctx.dt;
                val += w * Qsharp[l][k];
            }
            Fnew[m][k] = val;
        }
    }
}

double weighted_gap(const GridCtx& ctx, const NodeArray& A, const NodeArray& B)
{
    double gap = 0.0;
#pragma omp parallel for reduction(max : gap) schedule(static)
    for (int m = 0; m < ctx.nt; ++m) {
        double local = 0.0;
        for (std::size_t k = 0; k < A[m].size(); ++k)
            if (ctx.resolvable[k])
                local = std::max(local, std::fabs(A[m][k] - B[m][k]) / ctx.rho[k]);
        gap = std::max(gap, local);
    }
    return gap;
}

std::vector<double> node_norms(const GridCtx& ctx, const NodeArray& F)
{
    std::vector<double> out(ctx.nt, 0.0);
    for (int m = 0; m < ctx.nt; ++m) {
        double local = 0.0;
        for (std::size_t k = 0; k < F[m].size(); ++k)
            if (ctx.resolvable[k]) local = std::max(local, std::fabs(F[m][k]) / ctx.rho[k]);
        out[m] = local;
    }
    return out;
}

Trajectory to_trajectory(const GridCtx& ctx, const SolveConfig& cfg, NodeArray&& Fsharp)
{
    Trajectory traj;
    traj.xaxis = cfg.xaxis;
    traj.paxis = cfg.paxis;
    traj.n_t = ctx.nt;
    traj.T = cfg.T;
    traj.c = cfg.c;
    traj.fsharp = std::move(Fsharp);
    // Eulerian fields for the L1_p Linf_x metrics and persistence
    traj.f.assign(ctx.nt,
                  std::vector<double>(static_cast<std::size_t>(ctx.nx2) * ctx.np2, 0.0));
#pragma omp parallel for schedule(static)
    for (int m = 0; m < ctx.nt; ++m)
        eulerianize(ctx, cfg, traj.fsharp[m], m * ctx.dt, traj.f[m]);
    return traj;
}

} // namespace

FieldGrid default_initial_data(const SolveConfig& cfg)
{
    if (cfg.b < 0.0) throw std::invalid_argument("default_initial_data: b must be >= 0");
    return make_field(cfg.xaxis, cfg.paxis, [&](const Vec& x, const Vec& p) {
        return cfg.b * (cfg.newtonian() ? weight_newt(x, p, cfg.weights)
                                        : weight_rel(x, p, cfg.c, cfg.weights));
    });
}

SolveResult picard_solve(const FieldGrid& f0, const SolveConfig& cfg)
{
    GridCtx ctx = make_ctx(f0, cfg);
    CollisionTable table;
    table.build(table_params(cfg));

    double f0max = 0.0;
    for (const double v : f0.v) f0max = std::max(f0max, std::fabs(v));
    const double floor = 1e-8 * f0max;

    SolveResult res;
    // first iterate: free transport, f# == f0 at every node
    NodeArray F = zero_nodes(ctx);
    for (int m = 0; m < ctx.nt; ++m)
        std::copy(ctx.f0p.begin(), ctx.f0p.end(), F[m].begin());

    NodeArray Qp = zero_nodes(ctx);
    NodeArray Fnew = zero_nodes(ctx);
    double gap0 = 0.0;
    for (int sweep = 1; sweep <= cfg.picard_max; ++sweep) {
        // node 0 never changes (f#(0) = f0), so its Q is computed once
        collision_pass_sharp(ctx, cfg, table, F, &Qp, nullptr, nullptr, floor,
                             sweep == 1 ? 0 : 1);
        duhamel_sharp(ctx, Qp, ctx.f0p, Fnew);
        const double gap = weighted_gap(ctx, Fnew, F);
        std::swap(F, Fnew);
        res.iterations = sweep;
        res.final_gap = gap;
        if (sweep == 1) gap0 = gap;
        if (!std::isfinite(gap) || (sweep > 2 && gap > 10.0 * std::max(gap0, 1.0))) {
            res.message = "picard iteration diverged; initial amplitude b likely exceeds the "
                          "smallness threshold";
            break;
        }
        if (gap <= cfg.picard_tol) {
            res.converged = true;
            break;
        }
    }
    if (!res.converged && res.message.empty())
        res.message = "picard did not reach tolerance within picard_max sweeps";

    res.norm_trace = node_norms(ctx, F);
    res.weighted_norm = *std::max_element(res.norm_trace.begin(), res.norm_trace.end());
    res.traj = to_trajectory(ctx, cfg, std::move(F));
    return res;
}

KsResult ks_bracket_solve(const FieldGrid& f0, const SolveConfig& cfg, bool check_bracket)
{
    GridCtx ctx = make_ctx(f0, cfg);
    CollisionTable table;
    table.build(table_params(cfg));

    double f0max = 0.0;
    for (const double v : f0.v) f0max = std::max(f0max, std::fabs(v));
    const double floor = 1e-8 * f0max;
    const double slack = 1e-13 * std::max(1.0, cfg.ks_envelope) * std::max(f0max, 1e-300);

    KsResult res;
    NodeArray L = zero_nodes(ctx);
    NodeArray U = zero_nodes(ctx);
    // lower_0 = 0, upper_0 = envelope * b * rho on the labels
    for (int m = 0; m < ctx.nt; ++m)
        for (std::size_t k = 0; k < U[m].size(); ++k)
            U[m][k] = cfg.ks_envelope * cfg.b * ctx.rho[k];

    NodeArray gainL = zero_nodes(ctx), gainU = zero_nodes(ctx);
    NodeArray freqL = zero_nodes(ctx), freqU = zero_nodes(ctx);
    NodeArray Lnew = zero_nodes(ctx), Unew = zero_nodes(ctx);

    // Linear mild solve with integrating factor, entirely on the labels:
    //   out(t_m) = f0 e^{-int_0^t R#} + int_0^t e^{-int_s^t R#} Gain#(s) ds.
    auto linear_solve = [&](const NodeArray& G, const NodeArray& R, NodeArray& out) {
#pragma omp parallel
        {
            std::vector<double> iv(ctx.nt);
#pragma omp for schedule(static)
            for (int i = 0; i < ctx.np2; ++i) {
                for (int y = 0; y < ctx.nx2; ++y) {
                    const std::size_t k = ctx.pidx(i, y);
                    for (int m = 0; m < ctx.nt; ++m) {
                        iv[m] = 0.0;
                        for (int l = m - 1; l >= 0; --l)
                            iv[l] = iv[l + 1] + 0.5 * ctx.dt * (R[l][k] + R[l + 1][k]);
                        double val = ctx.f0p[k] * std::exp(-iv[0]);
                        for (int l = 0; l <= m && m > 0; ++l) {
                            const double w = (l == 0 || l == m) ? 0.5 * ctx.dt : ctx.dt;
                            val += w * std::exp(-iv[l]) * G[l][k];
                        }
                        out[m][k] = val;
                    }
                }
            }
        }
    };

    auto below = [&](const NodeArray& A, const NodeArray& B) {
        for (int m = 0; m < ctx.nt; ++m)
            for (std::size_t k = 0; k < A[m].size(); ++k)
                if (A[m][k] > B[m][k] + slack) return false;
        return true;
    };

    res.ordered = true;
    for (int sweep = 1; sweep <= cfg.picard_max; ++sweep) {
        collision_pass_sharp(ctx, cfg, table, L, nullptr, &gainL, &freqL, floor, 0);
        collision_pass_sharp(ctx, cfg, table, U, nullptr, &gainU, &freqU, floor, 0);
        linear_solve(gainL, freqU, Lnew); // lower: gain of lower, loss of upper
        linear_solve(gainU, freqL, Unew);
        res.iterations = sweep;
        if (!below(L, Lnew) || !below(Unew, U) || !below(Lnew, Unew)) {
            res.ordered = false;
            res.message = "kaniel-shinbrot ordering violated; the envelope does not satisfy "
                          "the beginning condition (b too large)";
            std::swap(L, Lnew);
            std::swap(U, Unew);
            break;
        }
        std::swap(L, Lnew);
        std::swap(U, Unew);
        res.gap = weighted_gap(ctx, U, L);
        if (res.gap <= cfg.picard_tol) {
            res.converged = true;
            break;
        }
    }

    res.nonnegative = true;
    for (int m = 0; m < ctx.nt && res.nonnegative; ++m)
        for (const double v : L[m])
            if (v < -slack) {
                res.nonnegative = false;
                break;
            }

    if (check_bracket && res.ordered) {
        const SolveResult picard = picard_solve(f0, cfg);
        // both sequences stop at the picard tolerance; allow that much slack
        const double bslack =
            10.0 * cfg.picard_tol * f0max / std::max(cfg.b, 1e-300) + 1e3 * slack;
        res.brackets_picard = true;
        for (int m = 0; m < ctx.nt && res.brackets_picard; ++m)
            for (std::size_t k = 0; k < L[m].size(); ++k) {
                const double f = picard.traj.fsharp[m][k];
                if (f < L[m][k] - bslack || f > U[m][k] + bslack) {
                    res.brackets_picard = false;
                    break;
                }
            }
    }

    res.lower = to_trajectory(ctx, cfg, std::move(L));
    res.upper = to_trajectory(ctx, cfg, std::move(U));
    return res;
}

double weighted_sup_norm(const Trajectory& traj, const SolveConfig& cfg)
{
    const int nx = traj.xaxis.n, np = traj.paxis.n;
    const int nx2 = nx * nx, np2 = np * np;
    std::vector<double> rho(static_cast<std::size_t>(np2) * nx2);
    double rhomax = 0.0;
    for (int i = 0; i < np2; ++i) {
        const Vec p(traj.paxis.node(i / np), traj.paxis.node(i % np));
        for (int y = 0; y < nx2; ++y) {
            const Vec x(traj.xaxis.node(y / nx), traj.xaxis.node(y % nx));
            const double r = cfg.newtonian() ? weight_newt(x, p, cfg.weights)
                                             : weight_rel(x, p, cfg.c, cfg.weights);
            rho[static_cast<std::size_t>(i) * nx2 + y] = r;
            rhomax = std::max(rhomax, r);
        }
    }
    double worst = 0.0;
    for (int m = 0; m < traj.n_t; ++m)
        for (std::size_t k = 0; k < rho.size(); ++k)
            if (rho[k] >= 1e-15 * rhomax)
                worst = std::max(worst, std::fabs(traj.fsharp[m][k]) / rho[k]);
    return worst;
}

double initial_data_distance(const SolveConfig& cfg_rel)
{
    if (cfg_rel.newtonian())
        throw std::invalid_argument("initial_data_distance: needs a finite c");
    const int np = cfg_rel.paxis.n, nx = cfg_rel.xaxis.n;
    const double dp = cfg_rel.paxis.d();
    double total = 0.0;
    for (int i = 0; i < np * np; ++i) {
        const Vec p(cfg_rel.paxis.node(i / np), cfg_rel.paxis.node(i % np));
        double sup = 0.0;
        for (int y = 0; y < nx * nx; ++y) {
            const Vec x(cfg_rel.xaxis.node(y / nx), cfg_rel.xaxis.node(y % nx));
            const double diff = cfg_rel.b * (weight_rel(x, p, cfg_rel.c, cfg_rel.weights) -
                                             weight_newt(x, p, cfg_rel.weights));
            sup = std::max(sup, std::fabs(diff));
        }
        total += sup;
    }
    return total * dp * dp;
}

BCalibration calibrate_b(const SolveConfig& cfg, double b_hint)
{
    BCalibration cal;
    SolveConfig trial = cfg;
    trial.b = b_hint;
    for (int attempt = 0; attempt < 8; ++attempt) {
        const SolveResult r = picard_solve(default_initial_data(trial), trial);
        if (r.converged) {
            cal.b = trial.b;
            cal.b1 = r.weighted_norm;
            cal.ok = true;
            return cal;
        }
        trial.b *= 0.5;
    }
    return cal;
}

} // namespace relboltz
