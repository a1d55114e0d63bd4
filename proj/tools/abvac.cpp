// abvac: spectrum sweeps, radial density profiles and the self-check suite.
//
// Exit codes: 0 success, 1 selfcheck failure, 2 configuration error, 3 numerical failure.

#include <abvac/abvac.hpp>
#include <abvac/acceptance.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using json = nlohmann::ordered_json;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json jnum(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

// ---------------------------------------------------------------- config

struct GridSpec {
    double lo = 0.0, hi = 0.0;
    int n = 0;
    bool log = false;
    std::string text;
};

GridSpec parse_grid(const std::string& s) {
    GridSpec g;
    g.text = s;
    std::vector<std::string> parts;
    std::stringstream ss(s);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3 && parts.size() != 4) throw ConfigError("grid: expected min:max:n[:log], got '" + s + "'");
    try {
        std::size_t used = 0;
        g.lo = std::stod(parts[0], &used);
        g.hi = std::stod(parts[1], &used);
        g.n = std::stoi(parts[2], &used);
    } catch (const std::exception&) {
        throw ConfigError("grid: cannot parse '" + s + "'");
    }
    if (parts.size() == 4) {
        if (parts[3] != "log" && parts[3] != "lin") throw ConfigError("grid: spacing must be 'log' or 'lin'");
        g.log = parts[3] == "log";
    }
    if (g.n < 1) throw ConfigError("grid: empty range (n < 1)");
    if (!(g.hi >= g.lo) || (g.n > 1 && !(g.hi > g.lo))) throw ConfigError("grid: empty range (max <= min)");
    if (g.log && !(g.lo > 0.0)) throw ConfigError("grid: log spacing needs min > 0");
    return g;
}

std::vector<double> grid_points(const GridSpec& g) {
    std::vector<double> v;
    for (int i = 0; i < g.n; ++i) {
        const double t = g.n == 1 ? 0.0 : static_cast<double>(i) / (g.n - 1);
        if (i == g.n - 1 && g.n > 1) {
            v.push_back(g.hi);
        } else if (g.log) {
            v.push_back(g.lo * std::pow(g.hi / g.lo, t));
        } else {
            // 15 digits: 0.05:0.95:19 should hit 0.5, not 0.49999999999999989
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.15g", g.lo + (g.hi - g.lo) * t);
            v.push_back(std::strtod(buf, nullptr));
        }
    }
    return v;
}

// Flat key/value store: "key = value" lines, '#' comments, plus the
// "# config: key = value" header lines and JSON metadata.config of our own outputs.
using KeyValues = std::map<std::string, std::string>;

KeyValues load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    KeyValues kv;
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        json j;
        try {
            j = json::parse(text);
        } catch (const std::exception& e) {
            throw ConfigError(std::string("config: invalid JSON: ") + e.what());
        }
        const json* cfg = &j;
        if (j.contains("metadata") && j["metadata"].contains("config")) cfg = &j["metadata"]["config"];
        for (auto it = cfg->begin(); it != cfg->end(); ++it) {
            if (it.value().is_string()) kv[it.key()] = it.value().get<std::string>();
            else if (it.value().is_number_float()) kv[it.key()] = num(it.value().get<double>());
            else if (!it.value().is_object() && !it.value().is_array()) kv[it.key()] = it.value().dump();
        }
        return kv;
    }
    std::stringstream ss(text);
    for (std::string line; std::getline(ss, line);) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        static const std::string tag = "# config:";
        if (line.rfind(tag, 0) == 0) line = line.substr(tag.size());
        else if (const auto h = line.find('#'); h != std::string::npos) line = line.substr(0, h);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t") != std::string::npos && line.find(',') == std::string::npos)
                throw ConfigError("config: malformed line '" + line + "'");
            continue; // data rows of a CSV artifact
        }
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t"), b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

double to_double(const KeyValues& kv, const std::string& k) {
    try {
        std::size_t used = 0;
        const double v = std::stod(kv.at(k), &used);
        if (used != kv.at(k).size()) throw std::invalid_argument(k);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: '" + k + "' is not a number");
    }
}

struct RunConfig {
    std::string command;
    std::optional<double> beta, mu;
    double mass = 0.0;
    double radius = 1.0;
    double theta = 0.0;
    std::string grid;
    long lmax = 2000000;
    double delta = 0.02;
    double tol = 1e-8;
    double abs_tol = 1e-13;
    std::string tier = "default";
    std::string format = "csv";
    std::string out;
    std::string only;
    unsigned threads = 0;

    // resolved key/values written into every artifact; 'out' and 'threads' do not affect content
    std::vector<std::pair<std::string, std::string>> resolved() const {
        std::vector<std::pair<std::string, std::string>> v{{"command", command}};
        if (mu) v.emplace_back("mu", num(*mu));
        else if (beta) v.emplace_back("beta", num(*beta));
        v.emplace_back("mass", num(mass));
        v.emplace_back("radius", num(radius));
        v.emplace_back("theta", num(theta));
        v.emplace_back("grid", grid);
        v.emplace_back("lmax", std::to_string(lmax));
        v.emplace_back("delta", num(delta));
        v.emplace_back("tol", num(tol));
        v.emplace_back("abs_tol", num(abs_tol));
        v.emplace_back("tier", tier);
        v.emplace_back("format", format);
        return v;
    }
};

struct Tier {
    double rel, abs;
};

Tier tier_values(const std::string& t) {
    if (t == "fast") return {1e-6, 1e-11};
    if (t == "default") return {1e-8, 1e-13};
    if (t == "strict") return {1e-10, 1e-15};
    throw ConfigError("tolerance tier must be fast, default or strict (got '" + t + "')");
}

// ---------------------------------------------------------------- output

const char* units_block =
    "# units: hbar = c = 1; lengths in 1/m (1/lambda when m = 0), energies in m,\n"
    "# units: charge densities in e0 m^2, currents in e0 m^2 (per unit e0, e = -e0)\n";

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw ConfigError("cannot write '" + cfg.out + "'");
    f << text;
}

std::string csv_header(const RunConfig& cfg, const std::vector<std::string>& extra) {
    std::ostringstream os;
    os << "# abvac " << cfg.command << "\n" << units_block;
    for (auto& [k, v] : cfg.resolved()) os << "# config: " << k << " = " << v << "\n";
    for (auto& e : extra) os << "# " << e << "\n";
    return os.str();
}

json json_metadata(const RunConfig& cfg, const std::vector<std::string>& columns) {
    json m;
    m["tool"] = "abvac";
    m["command"] = cfg.command;
    m["units"] = {{"length", "1/m"}, {"energy", "m"}, {"density", "e0 m^2"}, {"current", "e0 m^2"}};
    json c = json::object();
    for (auto& [k, v] : cfg.resolved()) c[k] = v;
    m["config"] = c;
    m["columns"] = columns;
    return m;
}

std::string table(const RunConfig& cfg, const std::vector<std::string>& cols, const std::vector<std::vector<double>>& rows,
                  const std::vector<std::string>& extra, json extra_json) {
    if (cfg.format == "json") {
        json j;
        j["metadata"] = json_metadata(cfg, cols);
        for (auto it = extra_json.begin(); it != extra_json.end(); ++it) j["metadata"][it.key()] = it.value();
        json data = json::array();
        for (auto& r : rows) {
            json o;
            for (std::size_t i = 0; i < cols.size(); ++i) o[cols[i]] = jnum(r[i]);
            data.push_back(o);
        }
        j["rows"] = data;
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    os << csv_header(cfg, extra);
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << "\n";
    for (auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << num(r[i]);
        os << "\n";
    }
    return os.str();
}

// ---------------------------------------------------------------- commands

abvac::QuadratureSpec quad_spec(const RunConfig& cfg) {
    abvac::QuadratureSpec q;
    q.l_max = cfg.lmax;
    q.delta = cfg.delta;
    q.rel_tol = cfg.tol;
    q.abs_tol = cfg.abs_tol;
    q.validate();
    return q;
}

int cmd_spectrum(const RunConfig& cfg) {
    if (!(cfg.mass > 0.0)) throw ConfigError("spectrum: --mass must be positive");
    if (!(cfg.radius > 0.0)) throw ConfigError("spectrum: --radius must be positive");
    std::vector<double> betas;
    if (cfg.mu) betas.push_back(abvac::flux_decompose(*cfg.mu).beta);
    else if (cfg.beta) betas.push_back(*cfg.beta);
    else betas = grid_points(parse_grid(cfg.grid));
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const std::vector<std::string> cols{"beta", "lambda", "lambda_R", "E_particle", "E_antiparticle", "xi", "beyond_continuum"};
    std::vector<std::vector<double>> rows;
    for (double b : betas) {
        abvac::check_beta(b, "spectrum");
        const double lam = abvac::bound_lambda_closed(b, cfg.radius);
        const auto ep = abvac::bound_energy(lam, cfg.mass, abvac::Branch::particle);
        const auto ea = abvac::bound_energy(lam, cfg.mass, abvac::Branch::antiparticle);
        const double xi = b > 0.5 ? abvac::xi_from_R(b, cfg.mass, cfg.radius) : nan;
        rows.push_back({b, lam, lam * cfg.radius, ep ? *ep : nan, ea ? *ea : nan, xi, ep ? 0.0 : 1.0});
    }
    emit(cfg, table(cfg, cols, rows, {"rows with beyond_continuum = 1 have lambda > m (no energy)"}, json::object()));
    return 0;
}

int cmd_profile(const RunConfig& cfg) {
    abvac::ProfileParams pp;
    if (cfg.mu) pp.beta = abvac::flux_decompose(*cfg.mu).beta;
    else pp.beta = cfg.beta.value_or(0.25);
    if (!(cfg.mass >= 0.0)) throw ConfigError("profile: --mass must be nonnegative");
    pp.m = cfg.mass;
    pp.massive = cfg.mass > 0.0;
    pp.R = cfg.radius;
    pp.theta = cfg.theta;
    pp.threads = cfg.threads;
    const auto grid = grid_points(parse_grid(cfg.grid));
    const abvac::DensityProfile d = abvac::density_profile(pp, grid, quad_spec(cfg));
    const std::vector<std::string> cols{"r",           "j0_b",          "jphi_b",     "jphi_v",
                                        "jphi_v_err",  "jphi_total",    "jphi_closed", "jphi_closed_printed",
                                        "jphi_estimate", "jphi_estimate_printed", "ratio", "fs_cos", "fs_sin"};
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < d.r.size(); ++i) {
        const double est = d.jphi_estimate[i];
        const double ratio = est != 0.0 ? d.jphi_v[i] / est : std::numeric_limits<double>::quiet_NaN();
        rows.push_back({d.r[i], d.j0_b[i], d.jphi_b[i], d.jphi_v[i], d.jphi_v_err[i], d.jphi_total[i], d.jphi_closed[i],
                        d.jphi_closed_printed[i], est, d.jphi_estimate_printed[i], ratio, d.fs_cos[i], d.fs_sin[i]});
    }
    std::vector<std::string> extra{std::string("mode: ") + (pp.massive ? "massive" : "massless"), "beta: " + num(pp.beta)};
    json ej;
    ej["mode"] = pp.massive ? "massive" : "massless";
    ej["beta"] = pp.beta;
    if (d.bound) {
        extra.push_back("bound_state: lambda = " + num(d.bound->lambda) +
                        (d.bound->E ? ", E = " + num(*d.bound->E) : std::string(", beyond continuum")) +
                        (d.bound_included ? ", included" : ", not included"));
        ej["bound_state"] = {{"lambda", d.bound->lambda}, {"E", d.bound->E ? json(*d.bound->E) : json(nullptr)},
                             {"included", d.bound_included}};
    } else {
        extra.push_back("bound_state: none");
        ej["bound_state"] = nullptr;
    }
    emit(cfg, table(cfg, cols, rows, extra, ej));
    return 0;
}

int cmd_selfcheck(const RunConfig& cfg, bool tol_given) {
    abvac::acceptance::Options opt;
    if (tol_given) opt.tol = cfg.tol;
    opt.only = cfg.only;
    const auto res = abvac::acceptance::run(opt);
    if (res.empty()) throw ConfigError("selfcheck: --only '" + cfg.only + "' matches no criterion");
    bool ok = true;
    double total = 0.0;
    for (auto& r : res) {
        ok = ok && r.pass;
        total += r.seconds;
    }
    std::string text;
    if (cfg.format == "json") {
        json j;
        j["metadata"] = {{"tool", "abvac"}, {"command", "selfcheck"}, {"only", cfg.only},
                         {"tolerance_override", opt.tol ? json(*opt.tol) : json(nullptr)}};
        json arr = json::array();
        for (auto& r : res)
            arr.push_back({{"id", r.id},
                           {"name", r.name},
                           {"literal", r.literal},
                           {"pass", r.pass},
                           {"measured", jnum(r.measured)},
                           {"tolerance", r.tolerance},
                           {"seconds", r.seconds},
                           {"time_limit", r.time_limit},
                           {"detail", r.detail}});
        j["criteria"] = arr;
        j["all_pass"] = ok;
        j["runtime_seconds"] = total;
        text = j.dump(2) + "\n";
    } else {
        std::ostringstream os;
        for (auto& r : res) os << abvac::acceptance::format_line(r) << "\n";
        os << (ok ? "ALL PASS" : "FAILURES") << " runtime " << total << "s\n";
        text = os.str();
    }
    emit(cfg, text);
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Induced vacuum densities around a finite-radius flux tube"};
    app.require_subcommand(1);
    RunConfig cli;
    std::optional<double> beta, mu;
    std::string config_path;

    auto add_shared = [&](CLI::App* sc) {
        auto* ob = sc->add_option("--beta", beta, "fractional flux in (0,1)");
        auto* om = sc->add_option("--mu", mu, "total flux (beta = fractional part)");
        ob->excludes(om);
        sc->add_option("--mass", cli.mass, "fermion mass m");
        sc->add_option("--radius,-R", cli.radius, "tube radius R");
        sc->add_option("--theta", cli.theta, "self-adjoint extension angle in [0, 2 pi]");
        sc->add_option("--grid", cli.grid, "min:max:n[:log] (beta for spectrum, r for profile)");
        sc->add_option("--lmax", cli.lmax, "cap on |l| in direct l-sums");
        sc->add_option("--delta", cli.delta, "largest lower y-limit of the delta ladder");
        sc->add_option("--tol", cli.tol, "relative tolerance (selfcheck: replaces every criterion tolerance)");
        sc->add_option("--out", cli.out, "output path (default stdout)");
        sc->add_option("--format", cli.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sc->add_option("--config", config_path, "key = value file, or an earlier output artifact");
        sc->add_option("--threads", cli.threads, "worker threads for grid points (0: all cores)");
    };
    auto* sp = app.add_subcommand("spectrum", "bound-state spectrum over a beta sweep");
    auto* pr = app.add_subcommand("profile", "radial profile of the induced densities");
    auto* sc = app.add_subcommand("selfcheck", "run the acceptance suite");
    add_shared(sp);
    add_shared(pr);
    add_shared(sc);
    sc->add_option("--only", cli.only, "criterion id or name substring");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    CLI::App* used = app.get_subcommands().front();
    RunConfig cfg;
    cfg.command = used->get_name();
    bool tol_given = false;
    try {
        if (const char* t = std::getenv("ABVAC_TOL_TIER"); t && *t) cfg.tier = t;
        const Tier tier = tier_values(cfg.tier);
        cfg.tol = tier.rel;
        cfg.abs_tol = tier.abs;
        cfg.mass = cfg.command == "spectrum" ? 1.0 : 0.0;
        cfg.grid = cfg.command == "spectrum" ? "0.05:0.95:19" : "0.5:50:25:log";

        if (!config_path.empty()) {
            const KeyValues kv = load_config(config_path);
            for (auto& [k, v] : kv) {
                if (k == "command") {
                    if (v != cfg.command) throw ConfigError("config: written by '" + v + "', not '" + cfg.command + "'");
                } else if (k == "beta") cfg.beta = to_double(kv, k);
                else if (k == "mu") cfg.mu = to_double(kv, k);
                else if (k == "mass") cfg.mass = to_double(kv, k);
                else if (k == "radius") cfg.radius = to_double(kv, k);
                else if (k == "theta") cfg.theta = to_double(kv, k);
                else if (k == "grid") cfg.grid = v;
                else if (k == "lmax") cfg.lmax = static_cast<long>(to_double(kv, k));
                else if (k == "delta") cfg.delta = to_double(kv, k);
                else if (k == "tol") {
                    cfg.tol = to_double(kv, k);
                    tol_given = true;
                } else if (k == "abs_tol") cfg.abs_tol = to_double(kv, k);
                else if (k == "tier") {
                    cfg.tier = v;
                    const Tier t = tier_values(v);
                    if (!kv.count("tol")) cfg.tol = t.rel;
                    if (!kv.count("abs_tol")) cfg.abs_tol = t.abs;
                } else if (k == "format") cfg.format = v;
                else if (k == "only") cfg.only = v;
                else throw ConfigError("config: unknown key '" + k + "'");
            }
            if (cfg.beta && cfg.mu) throw ConfigError("config: give beta or mu, not both");
        }
        auto given = [&](const char* name) { return used->get_option(name)->count() > 0; };
        if (beta) {
            cfg.beta = beta;
            cfg.mu.reset();
        }
        if (mu) {
            cfg.mu = mu;
            cfg.beta.reset();
        }
        if (given("--mass")) cfg.mass = cli.mass;
        if (given("--radius")) cfg.radius = cli.radius;
        if (given("--theta")) cfg.theta = cli.theta;
        if (given("--grid")) cfg.grid = cli.grid;
        if (given("--lmax")) cfg.lmax = cli.lmax;
        if (given("--delta")) cfg.delta = cli.delta;
        if (given("--tol")) {
            cfg.tol = cli.tol;
            tol_given = true;
        }
        if (given("--format")) cfg.format = cli.format;
        if (cfg.format != "csv" && cfg.format != "json") throw ConfigError("format must be csv or json");
        cfg.out = cli.out;
        cfg.threads = cli.threads;
        if (cfg.command == "selfcheck" && used->get_option("--only")->count()) cfg.only = cli.only;

        if (cfg.command == "spectrum") return cmd_spectrum(cfg);
        if (cfg.command == "profile") return cmd_profile(cfg);
        return cmd_selfcheck(cfg, tol_given);
    } catch (const ConfigError& e) {
        std::cerr << "abvac " << cfg.command << ": " << e.what() << "\n";
        return 2;
    } catch (const abvac::DomainError& e) {
        std::cerr << "abvac " << cfg.command << ": " << e.what() << "\n";
        return 2;
    } catch (const abvac::ConvergenceError& e) {
        std::cerr << "abvac " << cfg.command << ": " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "abvac " << cfg.command << ": " << e.what() << "\n";
        return 3;
    }
}
