#include "relboltz/limit.hpp"

#include <cmath>
#include <stdexcept>

#include "relboltz/frames.hpp"
#include "relboltz/rng.hpp"

namespace relboltz {

double l1p_linfx_norm(const FieldGrid& f)
{
    const int np2 = f.np2();
    const int nx2 = f.nx2();
    const double dp = f.paxis.d();
    double total = 0.0;
    for (int ip = 0; ip < np2; ++ip) {
        double sup = 0.0;
        for (int ix = 0; ix < nx2; ++ix) sup = std::max(sup, std::fabs(f.at(ix, ip)));
        total += sup;
    }
    return total * dp * dp;
}

double l1p_linfx_node_diff(const Trajectory& a, const Trajectory& b, int node)
{
    if (a.xaxis.n != b.xaxis.n || a.paxis.n != b.paxis.n)
        throw std::invalid_argument("trajectory grids differ");
    const int np2 = a.paxis.n * a.paxis.n;
    const int nx2 = a.xaxis.n * a.xaxis.n;
    const double dp = a.paxis.d();
    const auto& fa = a.f.at(node);
    const auto& fb = b.f.at(node);
    double total = 0.0;
    for (int ip = 0; ip < np2; ++ip) {
        double sup = 0.0;
        for (int ix = 0; ix < nx2; ++ix) {
            const std::size_t k = static_cast<std::size_t>(ix) * np2 + ip;
            sup = std::max(sup, std::fabs(fa[k] - fb[k]));
        }
        total += sup;
    }
    return total * dp * dp;
}

double translation_modulus(const FieldGrid& f, const Vec& h, char which)
{
    if (norm(h) >= 1.0) throw std::invalid_argument("translation_modulus: |h| < 1 required");
    const int np2 = f.np2();
    const int nx2 = f.nx2();
    const double dp = f.paxis.d();
    double total = 0.0;
    for (int ip = 0; ip < np2; ++ip) {
        const Vec p = f.p_of(ip);
        double sup = 0.0;
        for (int ix = 0; ix < nx2; ++ix) {
            const Vec x = f.x_of(ix);
            const double shifted = (which == 'x') ? f.sample(x + h, p) : f.sample(x, p + h);
            sup = std::max(sup, std::fabs(shifted - f.at(ix, ip)));
        }
        total += sup;
    }
    return total * dp * dp;
}

RateFit rate_fit(const std::vector<std::pair<double, double>>& pairs)
{
    RateFit fit;
    std::vector<std::pair<double, double>> logs;
    for (const auto& [c, err] : pairs) {
        if (err <= 0.0 || !std::isfinite(err)) {
            ++fit.n_dropped;
            continue;
        }
        logs.emplace_back(std::log(c), std::log(err));
    }
    if (logs.size() < 3) throw std::invalid_argument("rate_fit: need >= 3 positive error points");
    const double n = static_cast<double>(logs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (const auto& [x, y] : logs) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
    }
    const double denom = n * sxx - sx * sx;
    const double raw_slope = (n * sxy - sx * sy) / denom;
    fit.slope = -raw_slope; // report the positive decay exponent
    fit.intercept = (sy - raw_slope * sx) / n;
    const double sst = syy - sy * sy / n;
    double sse = 0.0;
    for (const auto& [x, y] : logs) {
        const double pred = raw_slope * x + (sy - raw_slope * sx) / n;
        sse += (y - pred) * (y - pred);
    }
    fit.r2 = (sst > 0.0) ? 1.0 - sse / sst : 1.0;
    fit.n_used = static_cast<int>(logs.size());
    return fit;
}

SweepResult component_sweep(SweepKind kind, const std::vector<double>& c_list,
                            const SweepSpec& spec)
{
    if (c_list.size() < 4 && kind != SweepKind::CutoffMeasure)
        throw std::invalid_argument("component_sweep: need >= 4 dyadic c values");
    SweepResult out;
    out.c = c_list;
    out.value.assign(c_list.size(), 0.0);

    Rng rng(spec.seed);
    CrossSection unit; // sigma == 1

    switch (kind) {
        case SweepKind::KernelDiff: {
            std::vector<std::array<Vec, 3>> sample(spec.n_samples);
            for (auto& s : sample)
                s = {rng.normal_vec(spec.dim), rng.normal_vec(spec.dim), rng.unit_vec(spec.dim)};
            for (std::size_t ic = 0; ic < c_list.size(); ++ic) {
                double worst = 0.0;
                for (const auto& [p, q, w] : sample) {
                    const double kc = kernel_gs(p, q, w, c_list[ic], unit);
                    const double ki = kernel_newt(p, q, w, unit);
                    worst = std::max(worst, std::fabs(kc - ki));
                }
                out.value[ic] = worst;
            }
            break;
        }
        case SweepKind::PostCollisionDiff: {
            std::vector<std::array<Vec, 3>> sample(spec.n_samples);
            for (auto& s : sample)
                s = {rng.normal_vec(spec.dim), rng.normal_vec(spec.dim), rng.unit_vec(spec.dim)};
            for (std::size_t ic = 0; ic < c_list.size(); ++ic) {
                double worst = 0.0;
                for (const auto& [p, q, w] : sample)
                    worst = std::max(worst, post_collision_newton_diff(p, q, w, c_list[ic]));
                out.value[ic] = worst;
            }
            break;
        }
        case SweepKind::PhatDiff: {
            for (std::size_t ic = 0; ic < c_list.size(); ++ic)
                out.value[ic] =
                    norm(normalized_velocity(spec.fixed_p, c_list[ic]) - spec.fixed_p);
            break;
        }
        case SweepKind::JuttnerDiff: {
            for (std::size_t ic = 0; ic < c_list.size(); ++ic)
                out.value[ic] = std::fabs(juttner(spec.fixed_p, c_list[ic], spec.fixed_p.n) -
                                          maxwellian(spec.fixed_p, spec.fixed_p.n));
            break;
        }
        case SweepKind::CutoffMeasure: {
            const Vec x = rng.normal_vec(spec.dim);
            const Vec p = rng.normal_vec(spec.dim);
            const Vec q = rng.normal_vec(spec.dim);
            const double t = spec.T * (0.25 + 0.75 * rng.uniform());
            for (std::size_t ic = 0; ic < c_list.size(); ++ic)
                out.value[ic] = cutoff_measure(x, p, q, t, c_list[ic], spec.cutoff,
                                               spec.mc_samples, spec.seed);
            out.has_fit = false;
            return out;
        }
    }
    std::vector<std::pair<double, double>> pairs;
    for (std::size_t ic = 0; ic < c_list.size(); ++ic)
        pairs.emplace_back(c_list[ic], out.value[ic]);
    out.fit = rate_fit(pairs);
    out.has_fit = true;
    return out;
}

namespace {

StudyPoint study_point(const SolveConfig& base, double c, const Trajectory& newton_fine,
                       const Trajectory& newton_coarse, bool transport_only,
                       std::string& error_out)
{
    StudyPoint pt;
    pt.c = c;

    auto run = [&](const SolveConfig& cfg) -> SolveResult {
        const FieldGrid f0 = transport_only
                                 ? make_field(cfg.xaxis, cfg.paxis,
                                              [&](const Vec& x, const Vec& p) {
                                                  return cfg.b * weight_newt(x, p, cfg.weights);
                                              })
                                 : default_initial_data(cfg);
        return picard_solve(f0, cfg);
    };

    SolveConfig cfg = base;
    cfg.c = c;
    const SolveResult fine = run(cfg);
    if (!fine.converged) {
        error_out = "solver diverged at c = " + std::to_string(c) + ": " + fine.message;
        return pt;
    }
    pt.error = l1p_linfx_node_diff(fine.traj, newton_fine, base.n_t - 1);

    SolveConfig coarse = cfg;
    coarse.xaxis.n = cfg.xaxis.n / 2;
    coarse.paxis.n = cfg.paxis.n / 2;
    const SolveResult cr = run(coarse);
    if (cr.converged) {
        const double err_coarse = l1p_linfx_node_diff(cr.traj, newton_coarse, base.n_t - 1);
        pt.trunc_floor = std::fabs(pt.error - err_coarse);
        pt.included = pt.trunc_floor <= 0.2 * pt.error;
    }
    return pt;
}

} // namespace

StudyResult solution_convergence_study(const SolveConfig& base,
                                       const std::vector<double>& c_list, bool transport_only)
{
    StudyResult out;
    SolveConfig ncfg = base;
    ncfg.c = kNewtonianC;
    if (transport_only) {
        ncfg.sigma = CrossSection{};
        ncfg.sigma.constant = 0.0;
    }

    auto newton_run = [&](const SolveConfig& cfg) {
        const FieldGrid f0 = make_field(cfg.xaxis, cfg.paxis, [&](const Vec& x, const Vec& p) {
            return cfg.b * weight_newt(x, p, cfg.weights);
        });
        return picard_solve(f0, cfg);
    };
    const SolveResult newton_fine = newton_run(ncfg);
    if (!newton_fine.converged) {
        out.message = "newtonian solve diverged: " + newton_fine.message;
        return out;
    }
    SolveConfig ncoarse = ncfg;
    ncoarse.xaxis.n = ncfg.xaxis.n / 2;
    ncoarse.paxis.n = ncfg.paxis.n / 2;
    const SolveResult newton_coarse = newton_run(ncoarse);

    SolveConfig rbase = base;
    if (transport_only) rbase.sigma = ncfg.sigma;
    for (const double c : c_list) {
        std::string err;
        const StudyPoint pt = study_point(rbase, c, newton_fine.traj, newton_coarse.traj,
                                          transport_only, err);
        if (!err.empty()) {
            out.message = err;
            return out;
        }
        out.points.push_back(pt);
    }

    std::vector<std::pair<double, double>> pairs;
    for (const auto& pt : out.points)
        if (pt.included) pairs.emplace_back(pt.c, pt.error);
    if (pairs.size() < 3) {
        out.message = "fewer than 3 included points after truncation-floor exclusion";
        return out;
    }
    out.fit = rate_fit(pairs);
    out.ok = true;
    return out;
}

SweepResult data_convergence_sweep(const SolveConfig& base, const std::vector<double>& c_list)
{
    SweepResult out;
    out.c = c_list;
    for (const double c : c_list) {
        SolveConfig cfg = base;
        cfg.c = c;
        out.value.push_back(initial_data_distance(cfg));
    }
    std::vector<std::pair<double, double>> pairs;
    for (std::size_t ic = 0; ic < c_list.size(); ++ic)
        pairs.emplace_back(c_list[ic], out.value[ic]);
    out.fit = rate_fit(pairs);
    out.has_fit = true;
    return out;
}

} // namespace relboltz
