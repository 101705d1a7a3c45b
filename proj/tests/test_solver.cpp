#include <cmath>

#include "doctest.h"
#include "relboltz/limit.hpp"
#include "relboltz/quadrature.hpp"
#include "relboltz/rng.hpp"
#include "relboltz/solver.hpp"

using namespace relboltz;

namespace {

SolveConfig small_config(double c)
{
    SolveConfig cfg;
    cfg.c = c;
    cfg.T = 1.0;
    cfg.n_t = 6;
    cfg.xaxis = Axis{-5.0, 5.0, 10};
    cfg.paxis = Axis{-5.0, 5.0, 10};
    cfg.n_omega = 8;
    cfg.b = 1e-3;
    cfg.picard_tol = 1e-10;
    return cfg;
}

} // namespace

TEST_CASE("default_initial_data: the weighted ratio is b on the nose")
{
    const SolveConfig cfg = small_config(1.0);
    const FieldGrid f0 = default_initial_data(cfg);
    for (int ix = 0; ix < f0.nx2(); ix += 7)
        for (int ip = 0; ip < f0.np2(); ip += 5) {
            const double rho = weight_rel(f0.x_of(ix), f0.p_of(ip), cfg.c, cfg.weights);
            CHECK(f0.at(ix, ip) / rho == doctest::Approx(cfg.b).epsilon(1e-12));
        }
    SolveConfig zero = cfg;
    zero.b = 0.0;
    const FieldGrid z = default_initial_data(zero);
    for (const double v : z.v) CHECK(v == 0.0);
}

TEST_CASE("initial data distance decays like 1/c^2")
{
    SolveConfig cfg = small_config(1.0);
    cfg.xaxis = Axis{-5.0, 5.0, 16};
    cfg.paxis = Axis{-5.0, 5.0, 16};
    const SweepResult sw =
        data_convergence_sweep(cfg, {4.0, 8.0, 16.0, 32.0, 64.0, 128.0, 256.0});
    CHECK(sw.fit.slope >= 1.8);
    CHECK(sw.fit.slope <= 2.2);
}

TEST_CASE("free transport: sigma = 0 reproduces the transported data")
{
    SolveConfig cfg = small_config(1.0);
    cfg.sigma.constant = 0.0;
    const FieldGrid f0 = default_initial_data(cfg);
    const SolveResult res = picard_solve(f0, cfg);
    CHECK(res.converged);
    CHECK(res.iterations <= 2);

    // f(t, x, p) = f0(x - phat t, p): the solver samples f0 by interpolation,
    // so compare against the same interpolation
    const int nx = cfg.xaxis.n, np = cfg.paxis.n;
    const double dt = cfg.T / (cfg.n_t - 1);
    for (const int m : {2, cfg.n_t - 1}) {
        for (int y = 0; y < nx * nx; y += 13) {
            const Vec x(cfg.xaxis.node(y / nx), cfg.xaxis.node(y % nx));
            for (int i = 0; i < np * np; i += 11) {
                const Vec p(cfg.paxis.node(i / np), cfg.paxis.node(i % np));
                const Vec z = x - (m * dt) * normalized_velocity(p, cfg.c);
                const double expected = f0.sample(z, p);
                CHECK(res.traj.f[m][static_cast<std::size_t>(y) * np * np + i] ==
                      doctest::Approx(expected).epsilon(1e-12));
            }
        }
    }

    SUBCASE("zero initial data stays zero") {
        SolveConfig zcfg = small_config(1.0);
        zcfg.b = 0.0;
        const SolveResult zres = picard_solve(default_initial_data(zcfg), zcfg);
        CHECK(zres.converged);
        CHECK(zres.weighted_norm == doctest::Approx(0.0));
    }
}

TEST_CASE("semi-Lagrangian transport: backward-then-forward refinement slope")
{
    // interpolation error O(dx^2 + dp^2): halving the spacing should shrink
    // the round-trip error by about four
    const double t = 0.7, c = 2.0;
    std::vector<double> errs;
    for (const int n : {24, 48, 96}) {
        const Axis xa{-5.0, 5.0, n}, pa{-5.0, 5.0, 8};
        const FieldGrid f0 = make_field(xa, pa, [&](const Vec& x, const Vec& p) {
            return std::exp(-norm2(x) - norm2(p));
        });
        FieldGrid fwd(xa, pa);
        for (int ix = 0; ix < fwd.nx2(); ++ix)
            for (int ip = 0; ip < fwd.np2(); ++ip)
                fwd.at(ix, ip) = f0.sample(
                    fwd.x_of(ix) - t * normalized_velocity(fwd.p_of(ip), c), fwd.p_of(ip));
        double worst = 0.0;
        for (int ix = 0; ix < fwd.nx2(); ++ix) {
            const Vec x = fwd.x_of(ix);
            if (norm(x) > 2.0) continue; // interior points, away from the cut box
            for (int ip = 0; ip < fwd.np2(); ++ip) {
                const Vec p = fwd.p_of(ip);
                if (norm(p) > 2.0) continue;
                const double back =
                    fwd.sample(x + t * normalized_velocity(p, c), p);
                worst = std::max(worst, std::fabs(back - f0.at(ix, ip)));
            }
        }
        errs.push_back(worst);
    }
    const double slope1 = std::log2(errs[0] / errs[1]);
    const double slope2 = std::log2(errs[1] / errs[2]);
    CHECK(slope1 >= 1.9);
    CHECK(slope2 >= 1.9);
}

TEST_CASE("relativistic Picard solve: convergence, norm scale, trace shape")
{
    const SolveConfig cfg = small_config(1.0);
    const SolveResult res = picard_solve(default_initial_data(cfg), cfg);
    CHECK(res.converged);
    CHECK(res.final_gap <= cfg.picard_tol);
    CHECK(res.weighted_norm >= cfg.b * (1.0 - 1e-9));
    CHECK(res.weighted_norm <= 1.2 * cfg.b); // small data stays near b
    CHECK(static_cast<int>(res.norm_trace.size()) == cfg.n_t);
    CHECK(res.norm_trace[0] == doctest::Approx(cfg.b).epsilon(1e-9));
    CHECK(weighted_sup_norm(res.traj, cfg) == doctest::Approx(res.weighted_norm));

    SUBCASE("doubling the field doubles the weighted norm") {
        Trajectory scaled = res.traj;
        for (auto& node : scaled.f)
            for (double& v : node) v *= 2.0;
        CHECK(weighted_sup_norm(scaled, cfg) ==
              doctest::Approx(2.0 * res.weighted_norm).epsilon(1e-12));
    }
}

TEST_CASE("Picard divergence report for oversized data")
{
    SolveConfig cfg = small_config(1.0);
    cfg.b = 10.0;
    cfg.picard_max = 12;
    const SolveResult res = picard_solve(default_initial_data(cfg), cfg);
    CHECK_FALSE(res.converged);
    CHECK(!res.message.empty());
}

TEST_CASE("Kaniel-Shinbrot bracketing")
{
    SUBCASE("free transport collapses the bracket immediately") {
        SolveConfig cfg = small_config(1.0);
        cfg.sigma.constant = 0.0;
        const KsResult ks = ks_bracket_solve(default_initial_data(cfg), cfg);
        CHECK(ks.converged);
        CHECK(ks.ordered);
        CHECK(ks.nonnegative);
        CHECK(ks.gap <= cfg.picard_tol);
    }
    SUBCASE("small data: ordered, nonnegative, brackets Picard") {
        const SolveConfig cfg = small_config(1.0);
        const KsResult ks = ks_bracket_solve(default_initial_data(cfg), cfg);
        CHECK(ks.converged);
        CHECK(ks.ordered);
        CHECK(ks.nonnegative);
        CHECK(ks.brackets_picard);
        CHECK(ks.gap <= cfg.picard_tol);
    }
    SUBCASE("oversized data violates the beginning condition") {
        SolveConfig cfg = small_config(1.0);
        cfg.b = 10.0;
        cfg.picard_max = 8;
        const KsResult ks = ks_bracket_solve(default_initial_data(cfg), cfg, false);
        CHECK_FALSE(ks.converged);
    }
}

TEST_CASE("Newtonian solve works through the same pipeline")
{
    SolveConfig cfg = small_config(kNewtonianC);
    const FieldGrid f0 = default_initial_data(cfg);
    const SolveResult res = picard_solve(f0, cfg);
    CHECK(res.converged);
    CHECK(res.weighted_norm >= cfg.b * (1.0 - 1e-9));
    CHECK(res.weighted_norm <= 1.2 * cfg.b);
}

TEST_CASE("dispersion integral: quadrature against the closed error-function form")
{
    Rng rng(71);
    for (int i = 0; i < 50; ++i) {
        const int dim = (i % 2) ? 2 : 3;
        const double alpha = 0.5 + rng.uniform();
        const Vec x = rng.normal_vec(dim);
        const Vec p = rng.normal_vec(dim, 1.5);
        Vec q = rng.normal_vec(dim, 1.5);
        const double c = 1.0 + 3.0 * rng.uniform();
        const Vec d = normalized_velocity(p, c) - normalized_velocity(q, c);
        const double dn = norm(d);
        if (dn < 0.05) continue;

        // int_0^inf exp(-alpha |x + s d|^2) ds by quadrature
        const double mu = dot(x, d) / (dn * dn);
        const double upper = std::fabs(mu) + (std::fabs(mu) + 12.0 / std::sqrt(alpha)) / dn;
        const double quad = simpson(
            [&](double s) { return std::exp(-alpha * norm2(x + s * d)); }, 0.0, upper,
            20000);
        // closed form by completing the square
        const double offset2 = norm2(x) - mu * mu * dn * dn;
        const double closed = std::exp(-alpha * offset2) * 0.5 * std::sqrt(M_PI / alpha) /
                              dn * std::erfc(std::sqrt(alpha) * mu * dn);
        CHECK(quad == doctest::Approx(closed).epsilon(1e-6));
        CHECK(quad <= std::sqrt(M_PI / alpha) / dn * (1.0 + 1e-12));
    }
}

TEST_CASE("calibrate_b accepts the default smallness hint")
{
    const SolveConfig cfg = small_config(1.0);
    const BCalibration cal = calibrate_b(cfg, 1e-3);
    CHECK(cal.ok);
    CHECK(cal.b == doctest::Approx(1e-3));
    CHECK(cal.b1 >= 1e-3 * (1 - 1e-9));
}
