#include "relboltz/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace relboltz {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, const std::string& where)
{
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return x;
    } catch (...) {
        throw ParseError(where + ": malformed number '" + v + "'");
    }
}

long parse_int(const std::string& v, const std::string& where)
{
    try {
        std::size_t pos = 0;
        const long x = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return x;
    } catch (...) {
        throw ParseError(where + ": malformed integer '" + v + "'");
    }
}

bool parse_bool(const std::string& v, const std::string& where)
{
    if (v == "on" || v == "true" || v == "1") return true;
    if (v == "off" || v == "false" || v == "0") return false;
    throw ParseError(where + ": expected on/off, got '" + v + "'");
}

std::vector<double> parse_list(const std::string& v, const std::string& where)
{
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw ParseError(where + ": empty list element");
        out.push_back(parse_double(item, where));
    }
    if (out.empty()) throw ParseError(where + ": empty list");
    return out;
}

void set_key(RunConfig& cfg, const std::string& key, const std::string& value,
             const std::string& where)
{
    if (key == "N") cfg.dim = static_cast<int>(parse_int(value, where));
    else if (key == "c") cfg.c = parse_double(value, where);
    else if (key == "c_list") cfg.c_list = parse_list(value, where);
    else if (key == "T") cfg.T = parse_double(value, where);
    else if (key == "n_t") cfg.n_t = static_cast<int>(parse_int(value, where));
    else if (key == "n_x") cfg.n_x = static_cast<int>(parse_int(value, where));
    else if (key == "n_p") cfg.n_p = static_cast<int>(parse_int(value, where));
    else if (key == "n_omega") cfg.n_omega = static_cast<int>(parse_int(value, where));
    else if (key == "L_x") cfg.L_x = parse_double(value, where);
    else if (key == "L_p") cfg.L_p = parse_double(value, where);
    else if (key == "alpha") cfg.alpha = parse_double(value, where);
    else if (key == "beta") cfg.beta = parse_double(value, where);
    else if (key == "b") cfg.b = parse_double(value, where);
    else if (key == "B") cfg.cutoff_B = parse_double(value, where);
    else if (key == "a") cfg.cutoff_a = parse_double(value, where);
    else if (key == "cutoff") cfg.cutoff_on = parse_bool(value, where);
    else if (key == "picard_max") cfg.picard_max = static_cast<int>(parse_int(value, where));
    else if (key == "picard_tol") cfg.picard_tol = parse_double(value, where);
    else if (key == "ks_envelope") cfg.ks_envelope = parse_double(value, where);
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_int(value, where));
    else if (key == "mc_samples") cfg.mc_samples = static_cast<int>(parse_int(value, where));
    else if (key == "sigma.kind") cfg.sigma_kind = value;
    else if (key == "sigma.constant") cfg.sigma_constant = parse_double(value, where);
    else if (key == "sigma.r0") cfg.sigma_r0 = parse_double(value, where);
    else if (key == "sigma.G") cfg.sigma_G = parse_double(value, where);
    else if (key == "sigma.hbar") cfg.sigma_hbar = parse_double(value, where);
    else if (key == "sigma.b_table") cfg.sigma_b_table = value;
    else if (key == "rep") cfg.rep = value;
    else if (key == "limit.kind") cfg.limit_kind = value;
    else if (key == "solve.dump") cfg.dump = value;
    else if (key == "out") cfg.out_dir = value;
    else throw ParseError(where + ": unknown key '" + key + "'");
}

} // namespace

RunConfig parse_config_file(const std::string& path)
{
    RunConfig cfg;
    if (path.empty()) return cfg;
    std::ifstream in(path);
    if (!in) throw ParseError("config file not found: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string where = path + ":" + std::to_string(lineno);
        if (eq == std::string::npos) throw ParseError(where + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError(where + ": empty key");
        set_key(cfg, key, value, where);
    }
    return cfg;
}

void apply_override(RunConfig& cfg, const std::string& assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ParseError("override '" + assignment + "': expected key=value");
    set_key(cfg, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)),
            "override '" + assignment + "'");
}

void validate(RunConfig& cfg)
{
    if (cfg.dim != 2 && cfg.dim != 3) throw ParseError("N must be 2 or 3");
    if (cfg.T <= 0.0) throw ParseError("T must be positive");
    if (cfg.n_t < 2 || cfg.n_x < 2 || cfg.n_p < 2 || cfg.n_omega < 2)
        throw ParseError("n_t, n_x, n_p, n_omega must be >= 2");
    if (cfg.L_x <= 0.0 || cfg.L_p <= 0.0) throw ParseError("L_x, L_p must be positive");
    if (cfg.alpha <= 0.0 || cfg.beta <= 0.0) throw ParseError("alpha, beta must be positive");
    if (cfg.b < 0.0) throw ParseError("b must be >= 0");
    if (cfg.cutoff_B <= 0.0) throw ParseError("B must be positive");
    if (cfg.cutoff_a < 0.0 || cfg.cutoff_a >= 1.0) throw ParseError("a must lie in [0,1)");
    if (cfg.picard_tol <= 0.0) throw ParseError("picard_tol must be positive");
    for (const double c : cfg.c_list)
        if (c <= 0.0) throw ParseError("c_list entries must be positive");
    if (cfg.rep != "cm" && cfg.rep != "gs") throw ParseError("rep must be cm or gs");
    if (cfg.dump != "none" && cfg.dump != "binary" && cfg.dump != "text")
        throw ParseError("solve.dump must be none, binary or text");

    static const char* kinds[] = {"hard_ball", "moller",  "compton", "neutrino",
                                  "israel",    "maxwell_particles", "envelope"};
    bool known = false;
    for (const char* k : kinds) known = known || cfg.sigma_kind == k;
    if (!known) throw ParseError("unknown sigma.kind '" + cfg.sigma_kind + "'");
    if ((cfg.sigma_kind == "israel" || cfg.sigma_kind == "maxwell_particles") &&
        cfg.sigma_b_table.empty())
        throw ParseError("sigma.kind=" + cfg.sigma_kind + " requires the key sigma.b_table");
    if (!cfg.sigma_b_table.empty()) {
        std::ifstream probe(cfg.sigma_b_table);
        if (!probe) throw ParseError("sigma.b_table file not found: " + cfg.sigma_b_table);
    }

    static const char* lkinds[] = {"solution",  "transport",   "phat_diff",
                                   "post_collision_diff", "kernel_diff", "juttner_diff",
                                   "cutoff_measure"};
    known = false;
    for (const char* k : lkinds) known = known || cfg.limit_kind == k;
    if (!known) throw ParseError("unknown limit.kind '" + cfg.limit_kind + "'");
}

CrossSection RunConfig::make_sigma() const
{
    CrossSection s;
    if (sigma_kind == "hard_ball") {
        s.kind = SigmaKind::HardBall;
        s.constant = sigma_constant;
    } else if (sigma_kind == "moller") {
        s.kind = SigmaKind::Moller;
        s.r0 = sigma_r0;
    } else if (sigma_kind == "compton") {
        s.kind = SigmaKind::Compton;
        s.r0 = sigma_r0;
    } else if (sigma_kind == "neutrino") {
        s.kind = SigmaKind::Neutrino;
        s.G = sigma_G;
        s.hbar = sigma_hbar;
    } else if (sigma_kind == "israel" || sigma_kind == "maxwell_particles") {
        s.kind = sigma_kind == "israel" ? SigmaKind::Israel : SigmaKind::MaxwellParticles;
        std::ifstream in(sigma_b_table);
        if (!in) throw ParseError("cannot open sigma.b_table: " + sigma_b_table);
        double th, val;
        while (in >> th >> val) {
            if (!s.b_table.theta.empty() && th <= s.b_table.theta.back())
                throw ParseError("sigma.b_table: theta must be strictly ascending");
            s.b_table.theta.push_back(th);
            s.b_table.value.push_back(val);
        }
        if (s.b_table.theta.size() < 2)
            throw ParseError("sigma.b_table: need at least two rows");
    } else if (sigma_kind == "envelope") {
        s.kind = SigmaKind::Envelope;
    }
    if (cutoff_on) s.cutoff = make_cutoff();
    return s;
}

CutoffParams RunConfig::make_cutoff() const
{
    return CutoffParams{cutoff_B, cutoff_a, alpha};
}

SolveConfig RunConfig::make_solve_config(double c_value) const
{
    SolveConfig sc;
    sc.c = c_value;
    sc.T = T;
    sc.n_t = n_t;
    sc.picard_max = picard_max;
    sc.picard_tol = picard_tol;
    sc.sigma = make_sigma();
    sc.weights = WeightParams{alpha, beta};
    sc.b = b;
    sc.rep = (rep == "gs") ? Rep::GS : Rep::CM;
    sc.xaxis = Axis{-L_x, L_x, n_x};
    sc.paxis = Axis{-L_p, L_p, n_p};
    sc.n_omega = n_omega;
    sc.use_cutoff = cutoff_on;
    sc.ks_envelope = ks_envelope;
    return sc;
}

std::string echo_config(const RunConfig& cfg)
{
    std::ostringstream os;
    os.precision(17);
    os << "N=" << cfg.dim << "\n";
    os << "c=" << cfg.c << "\n";
    os << "c_list=";
    for (std::size_t i = 0; i < cfg.c_list.size(); ++i)
        os << (i ? "," : "") << cfg.c_list[i];
    os << "\n";
    os << "T=" << cfg.T << "\n";
    os << "n_t=" << cfg.n_t << "\n";
    os << "n_x=" << cfg.n_x << "\n";
    os << "n_p=" << cfg.n_p << "\n";
    os << "n_omega=" << cfg.n_omega << "\n";
    os << "L_x=" << cfg.L_x << "\n";
    os << "L_p=" << cfg.L_p << "\n";
    os << "alpha=" << cfg.alpha << "\n";
    os << "beta=" << cfg.beta << "\n";
    os << "b=" << cfg.b << "\n";
    os << "B=" << cfg.cutoff_B << "\n";
    os << "a=" << cfg.cutoff_a << "\n";
    os << "cutoff=" << (cfg.cutoff_on ? "on" : "off") << "\n";
    os << "picard_max=" << cfg.picard_max << "\n";
    os << "picard_tol=" << cfg.picard_tol << "\n";
    os << "ks_envelope=" << cfg.ks_envelope << "\n";
    os << "seed=" << cfg.seed << "\n";
    os << "mc_samples=" << cfg.mc_samples << "\n";
    os << "sigma.kind=" << cfg.sigma_kind << "\n";
    os << "sigma.constant=" << cfg.sigma_constant << "\n";
    os << "sigma.r0=" << cfg.sigma_r0 << "\n";
    os << "sigma.G=" << cfg.sigma_G << "\n";
    os << "sigma.hbar=" << cfg.sigma_hbar << "\n";
    if (!cfg.sigma_b_table.empty()) os << "sigma.b_table=" << cfg.sigma_b_table << "\n";
    os << "rep=" << cfg.rep << "\n";
    os << "limit.kind=" << cfg.limit_kind << "\n";
    os << "solve.dump=" << cfg.dump << "\n";
    return os.str();
}

} // namespace relboltz
