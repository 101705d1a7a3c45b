#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "relboltz/config.hpp"
#include "relboltz/csv.hpp"
#include "relboltz/frames.hpp"
#include "relboltz/limit.hpp"
#include "relboltz/rng.hpp"
#include "relboltz/verify.hpp"

namespace fs = std::filesystem;
using namespace relboltz;

namespace {

struct CliOptions {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir;
    long seed = -1;
    bool no_timestamp = false;
};

RunConfig load_config(const CliOptions& opt, const std::string& command)
{
    RunConfig cfg = parse_config_file(opt.config_path);
    for (const auto& ov : opt.overrides) apply_override(cfg, ov);
    if (opt.seed >= 0) cfg.seed = static_cast<std::uint64_t>(opt.seed);
    if (!opt.out_dir.empty()) cfg.out_dir = opt.out_dir;
    if (cfg.out_dir.empty()) cfg.out_dir = "out-" + command;
    cfg.no_timestamp = opt.no_timestamp;
    cfg.command = command;
    validate(cfg);
    fs::create_directories(cfg.out_dir);
    std::ofstream echo(fs::path(cfg.out_dir) / "config.echo");
    echo << echo_config(cfg);
    return cfg;
}

std::string out_path(const RunConfig& cfg, const std::string& name)
{
    return (fs::path(cfg.out_dir) / name).string();
}

int run_verify(const RunConfig& cfg)
{
    const auto suites = run_fast_suites(cfg.seed);
    CsvWriter csv(out_path(cfg, "verify.csv"),
                  {"test_name", "status", "max_residual", "tolerance"}, !cfg.no_timestamp);
    int failures = 0;
    for (const auto& s : suites) {
        csv.row({s.name, s.pass ? "pass" : "fail", CsvWriter::num(s.max_residual),
                 CsvWriter::num(s.tolerance)});
        if (!s.pass) {
            ++failures;
            std::cerr << "FAIL " << s.name << " residual=" << s.max_residual
                      << " tol=" << s.tolerance << "\n";
        }
    }
    CsvWriter summary(out_path(cfg, "summary.csv"), {"key", "value"}, !cfg.no_timestamp);
    summary.row({"suites", CsvWriter::num(static_cast<long>(suites.size()))});
    summary.row({"failures", CsvWriter::num(static_cast<long>(failures))});
    std::cout << "verify: " << suites.size() - failures << "/" << suites.size()
              << " suites passed\n";
    return failures == 0 ? 0 : 1;
}

int run_kinematics(const RunConfig& cfg)
{
    CsvWriter csv(out_path(cfg, "kinematics.csv"),
                  {"index", "N", "c", "s", "g", "theta_cm", "moller", "gs_jacobian",
                   "conservation_gs", "conservation_cm"},
                  !cfg.no_timestamp);
    Rng rng(cfg.seed);
    long idx = 0;
    for (int dim : {2, 3}) {
        for (int i = 0; i < 5; ++i) {
            const Vec p = rng.normal_vec(dim, 1.5);
            const Vec q = rng.normal_vec(dim, 1.5);
            const Vec w = rng.unit_vec(dim);
            const CollisionInvariants inv = invariants(p, q, cfg.c);
            const ScatteringEvent gs = make_event(p, q, w, cfg.c, Frame::GS);
            const ScatteringEvent cm = make_event(p, q, w, cfg.c, Frame::CM);
            const double theta =
                inv.g > 0 ? scattering_angle(p, q, cm.p_out, cm.q_out, cfg.c) : 0.0;
            csv.row({CsvWriter::num(idx++), CsvWriter::num(static_cast<long>(dim)),
                     CsvWriter::num(cfg.c), CsvWriter::num(inv.s), CsvWriter::num(inv.g),
                     CsvWriter::num(theta), CsvWriter::num(moller_velocity(p, q, cfg.c)),
                     CsvWriter::num(gs_jacobian(p, q, w, cfg.c)),
                     CsvWriter::num(check_conservation(gs, 1.0).residual),
                     CsvWriter::num(check_conservation(cm, 1.0).residual)});
        }
    }
    std::cout << "kinematics: wrote " << idx << " spot evaluations\n";
    return 0;
}

int run_xsec(const RunConfig& cfg)
{
    bool ok = true;
    {
        CsvWriter csv(out_path(cfg, "xsec_catalog.csv"), {"kind", "g", "theta", "value"},
                      !cfg.no_timestamp);
        struct Entry {
            const char* name;
            CrossSection sigma;
        };
        std::vector<Entry> catalog;
        catalog.push_back({"hard_ball", {}});
        CrossSection moller;
        moller.kind = SigmaKind::Moller;
        catalog.push_back({"moller", moller});
        CrossSection compton;
        compton.kind = SigmaKind::Compton;
        catalog.push_back({"compton", compton});
        CrossSection nu;
        nu.kind = SigmaKind::Neutrino;
        catalog.push_back({"neutrino", nu});
        CrossSection isr;
        isr.kind = SigmaKind::Israel;
        catalog.push_back({"israel", isr});
        CrossSection mx;
        mx.kind = SigmaKind::MaxwellParticles;
        catalog.push_back({"maxwell_particles", mx});
        for (const auto& [name, sigma] : catalog) {
            for (int ig = 1; ig <= 10; ++ig) {
                const double g = 0.5 * ig;
                const double theta = M_PI / 2;
                const double v = evaluate(sigma, g, theta, cfg.c);
                ok = ok && std::isfinite(v) && v >= 0.0;
                csv.row({name, CsvWriter::num(g), CsvWriter::num(theta), CsvWriter::num(v)});
            }
        }
    }
    {
        // Envelope report for the configured cross section.
        std::vector<EnvelopeSamplePoint> sample;
        for (int ig = 1; ig <= 200; ++ig)
            sample.push_back({0.05 * ig, M_PI / 2, cfg.c});
        EnvelopeParams env;
        env.A1 = 2.0;
        env.A2 = 1.0;
        env.gamma = 1.0;
        const EnvelopeReport rep = envelope_check(cfg.make_sigma(), env, sample);
        CsvWriter csv(out_path(cfg, "xsec_envelope.csv"),
                      {"sigma_kind", "worst_ratio", "worst_g", "pass"}, !cfg.no_timestamp);
        csv.row({cfg.sigma_kind, CsvWriter::num(rep.worst_ratio), CsvWriter::num(rep.worst_g),
                 rep.pass ? "pass" : "fail"});
    }
    {
        Rng rng(cfg.seed);
        const Vec x = rng.normal_vec(cfg.dim);
        const Vec p = rng.normal_vec(cfg.dim);
        const Vec q = rng.normal_vec(cfg.dim);
        const double t = 0.5 * cfg.T;
        const CutoffParams params = cfg.make_cutoff();
        CsvWriter csv(out_path(cfg, "xsec_cutoff.csv"), {"c", "measure"}, !cfg.no_timestamp);
        double last = 0.0;
        for (const double c : cfg.c_list) {
            last = cutoff_measure(x, p, q, t, c, params, cfg.mc_samples, cfg.seed);
            csv.row({CsvWriter::num(c), CsvWriter::num(last)});
        }
        const CStarResult cs = c_star_search(p, q, cfg.T, params, cfg.c_list);
        CsvWriter cstar(out_path(cfg, "xsec_cstar.csv"),
                        {"empirical", "analytic", "analytic_sufficient"}, !cfg.no_timestamp);
        cstar.row({cs.found ? CsvWriter::num(cs.empirical) : "none",
                   CsvWriter::num(cs.analytic), cs.analytic_sufficient ? "yes" : "no"});
        ok = ok && last == 1.0 && cs.analytic_sufficient;
    }
    std::cout << "xsec: catalog, envelope and cutoff reports written\n";
    return ok ? 0 : 1;
}

int run_limit(const RunConfig& cfg)
{
    if (cfg.limit_kind == "solution" || cfg.limit_kind == "transport") {
        SolveConfig base = cfg.make_solve_config(1.0);
        if (cfg.limit_kind == "solution") base.rep = Rep::GS; // pairs with the K_inf limit
        const StudyResult study =
            solution_convergence_study(base, cfg.c_list, cfg.limit_kind == "transport");
        CsvWriter csv(out_path(cfg, "limit_solution.csv"),
                      {"c", "error", "trunc_floor", "included"}, !cfg.no_timestamp);
        for (const auto& pt : study.points)
            csv.row({CsvWriter::num(pt.c), CsvWriter::num(pt.error),
                     CsvWriter::num(pt.trunc_floor), pt.included ? "1" : "0"});
        CsvWriter summary(out_path(cfg, "summary.csv"), {"key", "value"}, !cfg.no_timestamp);
        summary.row({"slope", CsvWriter::num(study.fit.slope)});
        summary.row({"intercept", CsvWriter::num(study.fit.intercept)});
        summary.row({"r2", CsvWriter::num(study.fit.r2)});
        if (!study.ok) {
            std::cerr << "limit study failed: " << study.message << "\n";
            return 1;
        }
        std::cout << "limit: slope " << study.fit.slope << " (r2 " << study.fit.r2 << ")\n";
        return 0;
    }

    SweepSpec spec;
    spec.seed = cfg.seed;
    spec.dim = 3;
    spec.cutoff = cfg.make_cutoff();
    spec.T = cfg.T;
    spec.mc_samples = cfg.mc_samples;
    SweepKind kind;
    if (cfg.limit_kind == "phat_diff") kind = SweepKind::PhatDiff;
    else if (cfg.limit_kind == "post_collision_diff") kind = SweepKind::PostCollisionDiff;
    else if (cfg.limit_kind == "kernel_diff") kind = SweepKind::KernelDiff;
    else if (cfg.limit_kind == "juttner_diff") kind = SweepKind::JuttnerDiff;
    else kind = SweepKind::CutoffMeasure;

    const SweepResult sw = component_sweep(kind, cfg.c_list, spec);
    CsvWriter csv(out_path(cfg, "limit_" + cfg.limit_kind + ".csv"), {"c", "value"},
                  !cfg.no_timestamp);
    for (std::size_t i = 0; i < sw.c.size(); ++i)
        csv.row({CsvWriter::num(sw.c[i]), CsvWriter::num(sw.value[i])});
    CsvWriter summary(out_path(cfg, "summary.csv"), {"key", "value"}, !cfg.no_timestamp);
    if (sw.has_fit) {
        summary.row({"slope", CsvWriter::num(sw.fit.slope)});
        summary.row({"intercept", CsvWriter::num(sw.fit.intercept)});
        summary.row({"r2", CsvWriter::num(sw.fit.r2)});
        std::cout << "limit " << cfg.limit_kind << ": slope " << sw.fit.slope << "\n";
    } else {
        summary.row({"terminal_measure", CsvWriter::num(sw.value.back())});
        std::cout << "limit " << cfg.limit_kind << ": terminal measure " << sw.value.back()
                  << "\n";
    }
    return 0;
}

int run_solve(const RunConfig& cfg)
{
    const SolveConfig sc = cfg.make_solve_config(cfg.c);
    const FieldGrid f0 = default_initial_data(sc);
    const SolveResult res = picard_solve(f0, sc);

    CsvWriter trace(out_path(cfg, "norm_trace.csv"), {"node", "t", "weighted_sup"},
                    !cfg.no_timestamp);
    for (std::size_t m = 0; m < res.norm_trace.size(); ++m)
        trace.row({CsvWriter::num(static_cast<long>(m)),
                   CsvWriter::num(m * sc.T / (sc.n_t - 1)), CsvWriter::num(res.norm_trace[m])});

    CsvWriter summary(out_path(cfg, "summary.csv"), {"key", "value"}, !cfg.no_timestamp);
    summary.row({"converged", res.converged ? "1" : "0"});
    summary.row({"iterations", CsvWriter::num(static_cast<long>(res.iterations))});
    summary.row({"final_gap", CsvWriter::num(res.final_gap)});
    summary.row({"weighted_norm", CsvWriter::num(res.weighted_norm)});
    summary.row({"b", CsvWriter::num(sc.b)});

    if (cfg.dump != "none") {
        const fs::path path = fs::path(cfg.out_dir) /
                              (cfg.dump == "binary" ? "trajectory.bin" : "trajectory.txt");
        if (cfg.dump == "binary") {
            // Flat float64 stream in (t, x1, x2, p1, p2) row order; the grid
            // is recovered from config.echo.
            std::ofstream out(path, std::ios::binary);
            for (const auto& node : res.traj.f)
                out.write(reinterpret_cast<const char*>(node.data()),
                          static_cast<std::streamsize>(node.size() * sizeof(double)));
        } else {
            std::ofstream out(path);
            out.precision(12);
            out << std::scientific;
            const int nx = sc.xaxis.n, np = sc.paxis.n;
            for (int m = 0; m < sc.n_t; ++m)
                for (int y = 0; y < nx * nx; ++y)
                    for (int i = 0; i < np * np; ++i)
                        out << m * sc.T / (sc.n_t - 1) << " " << sc.xaxis.node(y / nx) << " "
                            << sc.xaxis.node(y % nx) << " " << sc.paxis.node(i / np) << " "
                            << sc.paxis.node(i % np) << " "
                            << res.traj.f[m][static_cast<std::size_t>(y) * np * np + i]
                            << "\n";
        }
    }

    if (!res.converged) {
        std::cerr << "solve: " << res.message << "\n";
        return 1;
    }
    std::cout << "solve: converged in " << res.iterations << " sweeps, |f#| = "
              << res.weighted_norm << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"relativistic Boltzmann kinetics batch tool"};
    app.require_subcommand(1);

    std::map<std::string, CliOptions> opts;
    for (const char* name : {"verify", "kinematics", "xsec", "limit", "solve"}) {
        CLI::App* sub = app.add_subcommand(name);
        CliOptions& o = opts[name];
        sub->add_option("--config", o.config_path, "flat key=value config file");
        sub->add_option("--out", o.out_dir, "output directory");
        sub->add_option("--seed", o.seed, "RNG seed override");
        sub->add_flag("--no-timestamp", o.no_timestamp, "suppress timestamp header lines");
        sub->add_option("overrides", o.overrides, "key=value overrides");
    }

    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        const RunConfig cfg = load_config(opts[command], command);
        if (command == "verify") return run_verify(cfg);
        if (command == "kinematics") return run_kinematics(cfg);
        if (command == "xsec") return run_xsec(cfg);
        if (command == "limit") return run_limit(cfg);
        return run_solve(cfg);
    } catch (const ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
