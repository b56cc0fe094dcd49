#include "hardwall/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hardwall/audit.hpp"
#include "hardwall/coulomb_gas.hpp"
#include "hardwall/energy.hpp"
#include "hardwall/errors.hpp"
#include "hardwall/kernels.hpp"
#include "hardwall/manifest.hpp"
#include "hardwall/orthopoly.hpp"

namespace hardwall {

namespace fs = std::filesystem;
using nlohmann::json;

std::string csv_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Options {
    double alpha = 0.0;
    double beta = 2.0;
    double sigma = -kInf;
    std::string format = "json";
    std::string out_dir;
    int n = 32;
    int sweeps = 200000;
    int burn_in = -1;
    std::uint64_t seed = 12345;
    int grid = 201;
    int bins = 40;
    int replicas = 0;
    std::string side = "right";
    double x = std::numeric_limits<double>::quiet_NaN();
    double from = std::numeric_limits<double>::quiet_NaN();
    double to = std::numeric_limits<double>::quiet_NaN();
    double mu = -1.0;
    std::vector<int> n_list;
    std::string manifest_in;
};

// JSON cannot hold non-finite numbers; they are written as strings.
json num(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

struct Run {
    const Options& o;
    fs::path dir;
    std::ostream& out;
    RunManifest manifest;

    fs::path file(const std::string& name) {
        manifest.outputs.push_back(name);
        return dir / name;
    }

    void emit(const json& j) {
        if (o.format == "csv") {
            std::string head, row;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (it.value().is_structured()) continue;
                head += (head.empty() ? "" : ",") + it.key();
                std::string cell;
                if (it.value().is_number_float()) cell = csv_number(it.value().get<double>());
                else if (it.value().is_string()) cell = it.value().get<std::string>();
                else cell = it.value().dump();
                row += (row.empty() ? "" : ",") + cell;
            }
            out << head << "\n" << row << "\n";
        } else {
            out << j.dump(2) << "\n";
        }
    }

    void write_json(const std::string& name, const json& j) {
        std::ofstream f(file(name));
        f << j.dump(2) << "\n";
    }
};

class CsvWriter {
public:
    CsvWriter(const fs::path& path, const std::vector<std::string>& columns) : f_(path) {
        if (!f_) throw ValidationError("cannot write " + path.string());
        for (std::size_t i = 0; i < columns.size(); ++i) f_ << (i ? "," : "") << columns[i];
        f_ << "\n";
    }
    void row(const std::vector<double>& values) {
        for (std::size_t i = 0; i < values.size(); ++i) f_ << (i ? "," : "") << csv_number(values[i]);
        f_ << "\n";
    }

private:
    std::ofstream f_;
};

EnsembleParams params_of(const Options& o) {
    EnsembleParams p{o.alpha, o.beta, o.sigma};
    p.validate();
    return p;
}

json edges_json(const SupportSolution& s) {
    json j;
    j["alpha"] = s.regime.params.alpha;
    j["sigma"] = num(s.regime.params.sigma);
    j["regime"] = to_string(s.regime.tag);
    j["a"] = s.edges.a;
    j["b"] = s.edges.b;
    j["residual_psi"] = s.residual_psi;
    j["residual_phi_slack"] = s.residual_phi_slack;
    return j;
}

void cmd_edges(Run& r) {
    const SupportSolution s = classify(params_of(r.o));
    json j = edges_json(s);
    if (r.o.alpha > 0.0) j["a_crit"] = a_crit(r.o.alpha);
    r.write_json("edges.json", j);
    r.emit(j);
}

void cmd_density(Run& r) {
    if (r.o.grid < 2) throw ValidationError("density: --grid must be >= 2");
    const DensityEval d = make_density(params_of(r.o));
    const double w = d.hi() - d.lo();
    const std::vector<double> xs = linspace(d.lo() + 1e-6 * w, d.hi() - 1e-6 * w, r.o.grid);
    const std::vector<double> fs = density_grid(d, xs, Exec::Parallel);
    CsvWriter csv(r.file("density.csv"), {"x", "f"});
    for (std::size_t i = 0; i < xs.size(); ++i) csv.row({xs[i], fs[i]});
    json j;
    j["regime"] = to_string(d.solution.regime.tag);
    j["form"] = to_string(d.form);
    j["a"] = d.lo();
    j["b"] = d.hi();
    j["mass"] = normalize_check(d);
    j["points"] = r.o.grid;
    r.manifest.stats = j;
    r.emit(j);
}

void cmd_energy(Run& r) {
    const EnergyReport e = energy(params_of(r.o));
    json j;
    j["alpha"] = e.params.alpha;
    j["sigma"] = num(e.params.sigma);
    j["regime"] = to_string(e.regime);
    j["a"] = e.edges.a;
    j["b"] = e.edges.b;
    j["robin"] = e.robin;
    j["second_moment"] = e.m2;
    j["log_moment"] = e.log_moment;
    j["energy"] = e.energy;
    j["closed_form_energy"] = e.closed_form_energy ? json(*e.closed_form_energy) : json(nullptr);
    j["discrepancy"] = e.discrepancy ? json(*e.discrepancy) : json(nullptr);
    r.write_json("energy.json", j);
    r.emit(j);
}

void cmd_theta(Run& r) {
    if (!(r.o.alpha >= 0.0)) throw ValidationError("theta: --alpha must be >= 0");
    const double t = theta(r.o.alpha);
    json j;
    j["alpha"] = r.o.alpha;
    j["theta"] = t;
    j["energy_fullline"] = energy_fullline(r.o.alpha);
    j["energy_critical"] = energy_fullline(r.o.alpha) + 2.0 * t;
    j["beta"] = r.o.beta;
    // log P_n ~ -beta theta n^2
    j["log_prob_rate"] = r.o.beta * t;
    r.write_json("theta.json", j);
    r.emit(j);
}

double rate_at(const Options& o, double x) {
    if (o.side == "right") return right_rate(x, EnsembleParams{o.alpha, o.beta, x});
    return left_rate(x, EnsembleParams{o.alpha, o.beta, 0.0});
}

void cmd_rate(Run& r) {
    const Options& o = r.o;
    if (o.side != "right" && o.side != "left") throw ValidationError("rate: --side must be right or left");
    if (!(o.alpha >= 0.0)) throw ValidationError("rate: --alpha must be >= 0");
    const bool curve = std::isfinite(o.from) && std::isfinite(o.to);
    if (curve) {
        if (o.grid < 2) throw ValidationError("rate: --grid must be >= 2");
        const std::vector<double> xs = linspace(o.from, o.to, o.grid);
        CsvWriter csv(r.file(o.side == "right" ? "rate_right.csv" : "rate_left.csv"),
                      {o.side == "right" ? "sigma" : "x", o.side == "right" ? "phi_plus" : "delta_e"});
        for (double x : xs) csv.row({x, rate_at(o, x)});
        json j;
        j["side"] = o.side;
        j["alpha"] = o.alpha;
        j["points"] = o.grid;
        j["from"] = o.from;
        j["to"] = o.to;
        r.emit(j);
        return;
    }
    if (!std::isfinite(o.x)) throw ValidationError("rate: give --x, or --from and --to");
    const double v = rate_at(o, o.x);
    json j;
    j["side"] = o.side;
    j["alpha"] = o.alpha;
    j["x"] = o.x;
    j["rate"] = v;
    if (o.alpha == 0.0 && o.side == "left")
        j["closed_form"] = left_rate_alpha0_closed(o.x);
    else if (o.alpha == 0.0 && o.x >= -std::sqrt(2.0))
        j["closed_form"] = right_rate_alpha0_closed(o.x);
    else if (o.side == "left")
        j["closed_form"] = delta_e_closed(o.x, o.alpha);
    // log P ~ -(beta/2) n^2 rate
    j["beta_exponent"] = o.beta / 2.0 * v;
    r.write_json("rate.json", j);
    r.emit(j);
}

void cmd_sample(Run& r) {
    const Options& o = r.o;
    const EnsembleParams p = params_of(o);
    const int burn_in = o.burn_in >= 0 ? o.burn_in : o.sweeps / 10;
    r.manifest.seed = o.seed;
    const SpectralHistogram h = run_and_histogram(p, o.n, o.sweeps, burn_in, o.seed, o.bins);
    const DensityEval d = make_density(p);
    const std::vector<double> c = h.centers(), est = h.density();
    {
        CsvWriter csv(r.file("sample_histogram.csv"), {"bin_center", "density_estimate"});
        for (std::size_t i = 0; i < c.size(); ++i) csv.row({c[i], est[i]});
    }
    {
        CsvWriter csv(r.file("sample_overlay.csv"), {"bin_center", "density_estimate", "analytic_density"});
        for (std::size_t i = 0; i < c.size(); ++i)
            csv.row({c[i], est[i], h.analytic_mass[i] / (h.edges[i + 1] - h.edges[i])});
    }
    json j;
    j["alpha"] = o.alpha;
    j["sigma"] = num(o.sigma);
    j["n"] = o.n;
    j["sweeps"] = o.sweeps;
    j["burn_in"] = burn_in;
    j["seed"] = o.seed;
    j["bins"] = o.bins;
    j["l1"] = h.l1;
    j["acceptance"] = h.acceptance;
    j["step_width"] = h.step_width;
    j["snapshots"] = h.snapshots;
    j["min_mean"] = h.min_mean;
    j["predicted_edge"] = d.lo();
    if (o.replicas > 0) {
        const auto series = min_eigenvalue_samples(p, o.n, o.replicas, o.sweeps, o.seed);
        CsvWriter csv(r.file("sample_min_series.csv"), {"replica", "sweep", "min_value"});
        const int rb = o.sweeps / 10;
        double sum = 0.0;
        std::size_t count = 0;
        for (std::size_t k = 0; k < series.size(); ++k)
            for (std::size_t i = 0; i < series[k].size(); ++i) {
                csv.row({static_cast<double>(k), static_cast<double>(rb + (i + 1) * kThinning), series[k][i]});
                sum += series[k][i];
                ++count;
            }
        j["replicas"] = o.replicas;
        j["replica_min_mean"] = count ? sum / count : 0.0;
    }
    r.manifest.stats = j;
    r.write_json("sample_summary.json", j);
    r.emit(j);
}

void cmd_approx(Run& r) {
    const Options& o = r.o;
    json j;
    if (!o.n_list.empty()) {
        const ConvergenceStudy s = convergence_study(o.alpha, o.n_list);
        CsvWriter csv(r.file("approx_convergence.csv"), {"n", "mu", "bits", "l1", "mass", "second_moment"});
        json rows = json::array();
        for (const auto& row : s.rows) {
            csv.row({static_cast<double>(row.n), row.mu, static_cast<double>(row.bits), row.l1, row.mass,
                     row.second_moment});
            rows.push_back({{"n", row.n}, {"mu", row.mu}, {"l1", row.l1}, {"mass", row.mass}});
        }
        j["alpha"] = o.alpha;
        j["trim_lo"] = s.trim_lo;
        j["trim_hi"] = s.trim_hi;
        j["limit_second_moment"] = s.limit_second_moment;
        j["monotone_within_slack"] = s.monotone_within_slack();
        j["rows"] = rows;
        r.manifest.stats = j;
        r.emit(j);
        return;
    }
    if (o.n < 1) throw ValidationError("approx: --n must be >= 1");
    if (o.grid < 2) throw ValidationError("approx: --grid must be >= 2");
    const double mu = o.mu >= 0.0 ? o.mu : o.alpha * o.n;
    const OrthoBasis b = build_basis(o.n, mu);
    const DensityEval lim = make_density(EnsembleParams{mu / o.n, 2.0, 0.0});
    const double top = 1.25 * lim.hi();
    const std::vector<double> xs = linspace(top / o.grid, top, o.grid);
    const std::vector<double> fn = finite_n_grid(b, xs, Exec::Parallel);
    const std::vector<double> fa = density_grid(lim, xs, Exec::Parallel);
    CsvWriter csv(r.file("approx_curve.csv"), {"x", "f_n", "f_alpha"});
    for (std::size_t i = 0; i < xs.size(); ++i) csv.row({xs[i], fn[i], fa[i]});
    j["n"] = o.n;
    j["mu"] = mu;
    j["alpha"] = mu / o.n;
    j["bits"] = b.bits();
    j["max_offdiag_residual"] = b.residuals().max_offdiag;
    j["mass"] = finite_n_mass(b);
    j["trimmed_l1"] = trimmed_l1(b);
    j["limit_a"] = lim.lo();
    j["limit_b"] = lim.hi();
    r.manifest.stats = j;
    r.emit(j);
}

void cmd_audit(Run& r) {
    const std::string text = render_discrepancy_report(discrepancy_report());
    const fs::path path = r.file("discrepancy_report.md");
    std::ofstream f(path);
    if (!f) throw ValidationError("audit: cannot write " + path.string());
    f << text;
    json j;
    j["report"] = path.string();
    r.emit(j);
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ValidationError*>(&e) || dynamic_cast<const DomainError*>(&e)) return kExitValidation;
    if (dynamic_cast<const TuningFailure*>(&e)) return kExitTuning;
    if (dynamic_cast<const PrecisionExhausted*>(&e)) return kExitPrecision;
    return kExitSolver;
}

// Argument list with the --out pair (or --out=...) removed.
std::vector<std::string> strip_out(const std::vector<std::string>& args) {
    std::vector<std::string> kept;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--out") {
            ++i;
            continue;
        }
        if (args[i].rfind("--out=", 0) == 0) continue;
        kept.push_back(args[i]);
    }
    return kept;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Constrained Gaussian ensemble with a hard wall: edges, densities, energies, rates, sampling"};
    app.name("hardwall");
    app.require_subcommand(1);
    app.add_option("--alpha", o.alpha, "Exponent ratio alpha >= 0");
    app.add_option("--beta", o.beta, "Dyson index beta > 0");
    app.add_option("--sigma", o.sigma, "Wall position; -inf for none");
    app.add_option("--format", o.format, "Summary format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", o.out_dir, std::string("Output directory (default $") + kOutDirEnv + " or .)");
    app.add_option("--n", o.n, "Number of eigenvalues / basis size");
    app.add_option("--sweeps", o.sweeps, "Monte Carlo sweeps");
    app.add_option("--burn-in", o.burn_in, "Burn-in sweeps (default sweeps/10)");
    app.add_option("--seed", o.seed, "Random seed");
    app.add_option("--grid", o.grid, "Grid points");
    app.add_option("--bins", o.bins, "Histogram bins");
    app.add_option("--replicas", o.replicas, "Min-eigenvalue replicas (sample)");
    app.add_option("--side", o.side, "Rate side: right or left");
    app.add_option("--x", o.x, "Evaluation point");
    app.add_option("--from", o.from, "Curve start");
    app.add_option("--to", o.to, "Curve end");
    app.add_option("--mu", o.mu, "Weight exponent mu (approx; default alpha n)");
    app.add_option("--n-list", o.n_list, "Basis sizes for the convergence study")->delimiter(',');

    const std::vector<std::pair<std::string, std::string>> subs = {
        {"edges", "Regime and support edges"},
        {"density", "Limiting density on a grid (CSV)"},
        {"energy", "Equilibrium energy with its components"},
        {"theta", "Constant theta(alpha) of the probability that all eigenvalues are positive"},
        {"rate", "Pushed (right) or pulled (left) rate function"},
        {"sample", "Metropolis sampling with histogram and analytic overlay"},
        {"approx", "Finite-n density from half-line orthogonal polynomials"},
        {"audit", "Discrepancy report of printed formulas"},
        {"replay", "Rerun from a manifest"},
    };
    for (const auto& [name, help] : subs) app.add_subcommand(name, help)->fallthrough();
    app.get_subcommand("replay")->add_option("--from-manifest", o.manifest_in, "Manifest to rerun")->required();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitValidation;
    }

    std::string sub;
    for (const auto& [name, help] : subs)
        if (app.got_subcommand(name)) sub = name;

    if (sub == "replay") {
        try {
            const RunManifest m = read_manifest(o.manifest_in);
            std::vector<std::string> again = m.args;
            if (!o.out_dir.empty()) {
                again.push_back("--out");
                again.push_back(o.out_dir);
            }
            return run_cli(again, out, err);
        } catch (const std::exception& e) {
            err << "error: " << e.what() << "\n";
            return exit_code_for(e);
        }
    }

    std::string dir = o.out_dir;
    if (dir.empty()) {
        const char* env = std::getenv(kOutDirEnv);
        dir = env && *env ? env : ".";
    }
    const auto t0 = std::chrono::steady_clock::now();
    try {
        fs::create_directories(dir);
        Run run{o, fs::path(dir), out, {}};
        run.manifest.subcommand = sub;
        run.manifest.args = strip_out(args);
        run.manifest.tool_version = tool_version();
        run.manifest.parameters = {{"alpha", o.alpha}, {"beta", o.beta}, {"sigma", num(o.sigma)},
                                   {"format", o.format}, {"n", o.n}, {"sweeps", o.sweeps},
                                   {"burn_in", o.burn_in}, {"seed", o.seed}, {"grid", o.grid},
                                   {"bins", o.bins}, {"replicas", o.replicas}, {"side", o.side},
                                   {"x", num(o.x)}, {"from", num(o.from)}, {"to", num(o.to)},
                                   {"mu", o.mu}, {"n_list", o.n_list}};
        if (sub == "edges") cmd_edges(run);
        else if (sub == "density") cmd_density(run);
        else if (sub == "energy") cmd_energy(run);
        else if (sub == "theta") cmd_theta(run);
        else if (sub == "rate") cmd_rate(run);
        else if (sub == "sample") cmd_sample(run);
        else if (sub == "approx") cmd_approx(run);
        else if (sub == "audit") cmd_audit(run);
        run.manifest.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        write_manifest(run.dir / (sub + "_manifest.json"), run.manifest);
        return kExitOk;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

}  // namespace hardwall
