// Command-line front end: closed-form QFI reports, trajectory dumps, canned
// figure sweeps and the verification battery.
//
// Exit codes: 0 ok, 1 usage/config error, 2 numerical failure,
// 3 verification failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sqzqfi/sqzqfi.hpp"

namespace {

using namespace sqzqfi;

struct ScenarioOptions {
    double gamma_t = 0.0;
    double lambda = 1.0;
    double r = 0.0;
    double theta = 0.0;
    double phi = 0.0;
    double kT = 0.0;
    std::string mode = "nonMarkovian";
    unsigned long nu = 1;

    EvolutionMode evolution_mode() const {
        if (mode == "markovian") return EvolutionMode::markovian;
        if (mode == "nonMarkovian" || mode == "non-markovian")
            return EvolutionMode::nonMarkovian;
        throw std::domain_error("mode must be 'nonMarkovian' or 'markovian', got '" + mode + "'");
    }

    ReservoirSpec bath() const {
        ReservoirSpec spec;
        spec.lambda_over_gamma = lambda;
        spec.r = r;
        spec.theta = theta;
        spec.kT_over_omega = kT;
        spec.validate();
        return spec;
    }
};

/// One `key = value` binding between a config file entry and a CLI option.
/// Command-line values win: the binding only applies when the option was not
/// given explicitly.
struct ConfigBinding {
    std::string key;
    CLI::Option* option = nullptr;
    std::function<void(const std::string&)> apply;
};

double parse_config_double(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        pos = std::string::npos;
    }
    if (pos != value.size())
        throw std::invalid_argument("config: key '" + key + "' needs a number, got '" + value +
                                    "'");
    return v;
}

void bind_double(std::vector<ConfigBinding>& bindings, const std::string& key,
                 CLI::Option* option, double& target) {
    bindings.push_back({key, option, [key, &target](const std::string& v) {
                            target = parse_config_double(key, v);
                        }});
}

void apply_config_file(const std::string& path, const std::vector<ConfigBinding>& bindings) {
    std::vector<std::string> keys;
    keys.reserve(bindings.size());
    for (const auto& b : bindings) keys.push_back(b.key);
    const auto kv = parse_config_file(path, keys);
    for (const auto& b : bindings) {
        const auto it = kv.find(b.key);
        if (it == kv.end()) continue;
        if (b.option && b.option->count() > 0) continue; // flag takes precedence
        b.apply(it->second);
    }
}

void add_scenario_options(CLI::App& cmd, ScenarioOptions& opt,
                          std::vector<ConfigBinding>& bindings) {
    bind_double(bindings, "gamma-t",
                cmd.add_option("--gamma-t", opt.gamma_t, "Elapsed time in units of 1/gamma (>= 0)"),
                opt.gamma_t);
    bind_double(bindings, "lambda",
                cmd.add_option("--lambda", opt.lambda, "Spectral width lambda/gamma (> 0)"),
                opt.lambda);
    bind_double(bindings, "r", cmd.add_option("--r", opt.r, "Squeezing magnitude (>= 0)"), opt.r);
    bind_double(bindings, "theta",
                cmd.add_option("--theta", opt.theta, "Squeezing reference phase [rad]"),
                opt.theta);
    bind_double(bindings, "phi", cmd.add_option("--phi", opt.phi, "Estimated phase [rad]"),
                opt.phi);
    bind_double(bindings, "kT",
                cmd.add_option("--kT", opt.kT, "Temperature in units of omega0 (>= 0)"), opt.kT);
    auto* mode_opt = cmd.add_option("--mode", opt.mode, "Evolution mode: nonMarkovian | markovian");
    bindings.push_back({"mode", mode_opt, [&opt](const std::string& v) { opt.mode = v; }});
    auto* nu_opt = cmd.add_option("--nu", opt.nu, "Repetition count for the Cramer-Rao bound (>= 1)");
    bindings.push_back({"nu", nu_opt, [&opt](const std::string& v) {
                            const double parsed = parse_config_double("nu", v);
                            if (parsed < 1.0 || parsed != std::floor(parsed))
                                throw std::invalid_argument(
                                    "config: key 'nu' needs a positive integer");
                            opt.nu = static_cast<unsigned long>(parsed);
                        }});
}

void echo_config(const ScenarioOptions& opt, const std::vector<std::pair<std::string, double>>& extra) {
    std::cout << "gamma-t = " << format_brief(opt.gamma_t) << '\n'
              << "lambda = " << format_brief(opt.lambda) << '\n'
              << "r = " << format_brief(opt.r) << '\n'
              << "theta = " << format_brief(opt.theta) << '\n'
              << "phi = " << format_brief(opt.phi) << '\n'
              << "kT = " << format_brief(opt.kT) << '\n'
              << "mode = " << opt.mode << '\n'
              << "nu = " << opt.nu << '\n';
    for (const auto& [key, value] : extra) std::cout << key << " = " << format_brief(value) << '\n';
}

int run_qfi(const ScenarioOptions& opt, const std::string& csv_path, bool print_config) {
    ReservoirSpec bath;
    EvolutionMode mode;
    try {
        bath = opt.bath();
        mode = opt.evolution_mode();
        if (opt.nu < 1) throw std::domain_error("nu must be >= 1");
        if (!(std::isfinite(opt.gamma_t) && opt.gamma_t >= 0.0))
            throw std::domain_error("gamma-t must be finite and >= 0");
        PhaseScenario scenario{opt.phi, opt.nu};
        scenario.validate();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    if (print_config) echo_config(opt, {});

    try {
        const double n = bath.mean_photon_number();
        const double vt = vartheta(opt.gamma_t, bath, mode);
        const auto coeffs = solution_coefficients(vt, n, opt.r);
        const auto rep = make_qfi_report(opt.phi, opt.theta, coeffs, n);
        const double bound = cramer_rao_bound(rep.qfi_analytic, opt.nu);

        std::cout << "vartheta = " << format_brief(vt) << '\n'
                  << "mean_photon_number = " << format_brief(n) << '\n'
                  << "qfi_analytic = " << format_brief(rep.qfi_analytic) << '\n'
                  << "qfi_eigen = " << format_brief(rep.qfi_eigen) << '\n'
                  << "qfi_bloch = " << format_brief(rep.qfi_bloch) << '\n'
                  << "max_pairwise_disagreement = " << format_brief(rep.max_pairwise_disagreement)
                  << '\n'
                  << "thermal_baseline = " << format_brief(rep.thermal_baseline) << '\n'
                  << "advantage = " << (rep.advantage ? "true" : "false") << '\n'
                  << "advantage_margin = " << format_brief(rep.advantage_margin) << '\n'
                  << "cos2_delta = " << format_brief(rep.cos2_delta) << '\n'
                  << "advantage_threshold = " << format_brief(rep.advantage_threshold) << '\n'
                  << "cramer_rao_delta_phi = " << format_brief(bound) << '\n';

        if (!csv_path.empty()) {
            std::ofstream out(csv_path, std::ios::binary);
            if (!out) throw std::invalid_argument("cannot open output file '" + csv_path + "'");
            write_csv_header(out, {"gamma_t", "lambda", "r", "theta", "phi", "kT", "markovian",
                                   "nu", "qfi_analytic", "qfi_eigen", "qfi_bloch",
                                   "max_pairwise_disagreement", "thermal_baseline", "advantage",
                                   "advantage_margin", "cramer_rao_delta_phi"});
            write_csv_row(out, {opt.gamma_t, opt.lambda, opt.r, opt.theta, opt.phi, opt.kT,
                                mode == EvolutionMode::markovian ? 1.0 : 0.0,
                                static_cast<double>(opt.nu), rep.qfi_analytic, rep.qfi_eigen,
                                rep.qfi_bloch, rep.max_pairwise_disagreement,
                                rep.thermal_baseline, rep.advantage ? 1.0 : 0.0,
                                rep.advantage_margin, bound});
        }
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    }
}

int run_evolve(const ScenarioOptions& opt, double t_end, double dt, long stride,
               const std::string& out_path, bool print_config) {
    ReservoirSpec bath;
    EvolutionMode mode;
    try {
        bath = opt.bath();
        mode = opt.evolution_mode();
        if (!(std::isfinite(t_end) && t_end >= 0.0))
            throw std::domain_error("t-end must be finite and >= 0");
        if (t_end > 0.0 && !(std::isfinite(dt) && dt > 0.0 && dt <= t_end))
            throw std::domain_error("dt must satisfy 0 < dt <= t-end");
        if (stride < 1) throw std::domain_error("stride must be >= 1");
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    if (print_config) echo_config(opt, {{"t-end", t_end}, {"dt", dt}});

    try {
        const auto traj = evolve_numeric(prepare_output_state(opt.phi), bath, mode, t_end, dt);

        std::ofstream file;
        std::ostream* os = &std::cout;
        if (!out_path.empty()) {
            file.open(out_path, std::ios::binary);
            if (!file) throw std::invalid_argument("cannot open output file '" + out_path + "'");
            os = &file;
        }
        write_csv_header(*os, {"gamma_t", "rho_ee", "re_rho_eg", "im_rho_eg", "purity"});
        const auto emit = [&](const TrajectoryPoint& pt) {
            write_csv_row(*os, {pt.t, pt.state.excited_population(), pt.state.coherence().real(),
                                pt.state.coherence().imag(), pt.state.purity()});
        };
        for (std::size_t i = 0; i < traj.size(); i += static_cast<std::size_t>(stride)) emit(traj[i]);
        if ((traj.size() - 1) % static_cast<std::size_t>(stride) != 0) emit(traj.back());
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    }
}

const char* kPlotScript = R"PY(#!/usr/bin/env python3
"""Plot the CSV written next to this script. Last column is the value; the
leading columns are sweep axes."""
import csv
import sys
from collections import OrderedDict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

CSV = "__CSV__"

with open(CSV, newline="") as fh:
    reader = csv.reader(fh)
    header = next(reader)
    rows = [[float(v) for v in row] for row in reader]

if len(header) < 2:
    sys.exit("nothing to plot")

x_name, y_name = header[0], header[-1]
fig, ax = plt.subplots()

if len(header) == 2:
    ax.plot([r[0] for r in rows], [r[1] for r in rows])
else:
    groups = OrderedDict()
    for r in rows:
        groups.setdefault(r[1], []).append((r[0], r[-1]))
    if len(groups) > 15 and len({r[0] for r in rows}) > 15:
        xs = sorted({r[0] for r in rows})
        ys = sorted(groups.keys())
        grid = [[dict((a, b) for a, b in groups[y])[x] for x in xs] for y in ys]
        pc = ax.pcolormesh(xs, ys, grid, shading="auto")
        fig.colorbar(pc, ax=ax, label=y_name)
        ax.set_ylabel(header[1])
    else:
        for key, pts in groups.items():
            pts.sort()
            ax.plot([p[0] for p in pts], [p[1] for p in pts],
                    label=f"{header[1]} = {key:g}")
        ax.legend()
        ax.set_ylabel(y_name)

ax.set_xlabel(x_name)
out = CSV.rsplit(".", 1)[0] + ".png"
fig.savefig(out, dpi=150)
print(f"wrote {out}")
)PY";

int run_figure(const std::string& id, int points, const std::string& out_dir,
               std::optional<double> lambda_override, bool plot_script) {
    SweepSpec spec;
    try {
        spec = figure_preset(id, points);
        if (lambda_override) {
            if (!(*lambda_override > 0.0))
                throw std::domain_error("lambda override must be > 0");
            if (spec.fixed.count("lambda")) spec.fixed["lambda"] = *lambda_override;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }

    try {
        const auto table = run_sweep(spec);
        const auto dir = std::filesystem::path(out_dir);
        const auto csv_path = dir / (id + ".csv");
        std::ofstream out(csv_path, std::ios::binary);
        if (!out) throw std::invalid_argument("cannot open output file '" + csv_path.string() + "'");
        table.write_csv(out);
        out.close();
        std::cout << "wrote " << csv_path.string() << " (" << table.rows.size() << " rows)\n";

        if (plot_script) {
            const auto py_path = dir / (id + "_plot.py");
            std::ofstream py(py_path, std::ios::binary);
            if (!py) throw std::invalid_argument("cannot open output file '" + py_path.string() + "'");
            std::string script = kPlotScript;
            const std::string token = "__CSV__";
            script.replace(script.find(token), token.size(), id + ".csv");
            py << script;
            std::cout << "wrote " << py_path.string() << '\n';
        }
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    }
}

int run_verify(int grid_density, const std::string& fault) {
    FaultInjection injection = FaultInjection::none;
    if (fault == "b1b2-swap") injection = FaultInjection::swap_b1_b2;
    else if (!fault.empty()) {
        std::cerr << "error: unknown fault '" << fault << "' (known: b1b2-swap)\n";
        return 1;
    }
    if (grid_density < 1) {
        std::cerr << "error: grid-density must be >= 1\n";
        return 1;
    }
    try {
        const auto report = verify_suite(grid_density, injection);
        print_verify_report(report, std::cout);
        return report.all_pass() ? 0 : 3;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Qubit phase estimation in a squeezed thermal reservoir: closed-form dynamics, "
                 "three cross-checking QFI routes, figure sweeps and a verification battery"};
    app.require_subcommand(1);

    ScenarioOptions qfi_opt;
    std::string qfi_csv, qfi_config;
    bool qfi_print_config = false;
    std::vector<ConfigBinding> qfi_bindings;
    auto* qfi_cmd = app.add_subcommand("qfi", "QFI report for one parameter point");
    add_scenario_options(*qfi_cmd, qfi_opt, qfi_bindings);
    qfi_cmd->add_option("--config", qfi_config,
                        "Flat key=value config file (flags take precedence)");
    qfi_cmd->add_option("--csv", qfi_csv, "Also write a single-row CSV to this path");
    qfi_cmd->add_flag("--print-config", qfi_print_config, "Echo the effective configuration");

    ScenarioOptions ev_opt;
    double ev_t_end = 5.0, ev_dt = 1e-3;
    long ev_stride = 1;
    std::string ev_out, ev_config;
    bool ev_print_config = false;
    std::vector<ConfigBinding> ev_bindings;
    auto* ev_cmd = app.add_subcommand("evolve", "Integrate the master equation and dump the "
                                                "trajectory as CSV");
    add_scenario_options(*ev_cmd, ev_opt, ev_bindings);
    ev_cmd->add_option("--config", ev_config,
                       "Flat key=value config file (flags take precedence)");
    bind_double(ev_bindings, "t-end",
                ev_cmd->add_option("--t-end", ev_t_end, "Final time in units of 1/gamma"),
                ev_t_end);
    bind_double(ev_bindings, "dt",
                ev_cmd->add_option("--dt", ev_dt, "RK4 step in units of 1/gamma"), ev_dt);
    auto* stride_opt = ev_cmd->add_option("--stride", ev_stride, "Emit every Nth stored sample");
    ev_bindings.push_back({"stride", stride_opt, [&ev_stride](const std::string& v) {
                               const double parsed = parse_config_double("stride", v);
                               if (parsed < 1.0 || parsed != std::floor(parsed))
                                   throw std::invalid_argument(
                                       "config: key 'stride' needs a positive integer");
                               ev_stride = static_cast<long>(parsed);
                           }});
    auto* out_opt = ev_cmd->add_option("--output,-o", ev_out, "Output CSV path (default: stdout)");
    ev_bindings.push_back({"output", out_opt, [&ev_out](const std::string& v) { ev_out = v; }});
    ev_cmd->add_flag("--print-config", ev_print_config, "Echo the effective configuration");

    std::string fig_id;
    int fig_points = 201;
    std::string fig_dir = ".";
    double fig_lambda = 0.0;
    bool fig_plot = false;
    auto* fig_cmd = app.add_subcommand("figure", "Run a canned figure sweep and write <id>.csv");
    fig_cmd->add_option("id", fig_id, "Figure id (fig2a, fig2b, fig3a, fig3b, fig4a, fig4b, "
                                      "fig4c, fig4d, fig5, fig6)")
        ->required();
    fig_cmd->add_option("--points", fig_points, "Samples per continuous axis (default 201)");
    fig_cmd->add_option("--output-dir", fig_dir, "Directory for the CSV (default .)");
    fig_cmd->add_option("--lambda", fig_lambda, "Override the preset spectral width");
    fig_cmd->add_flag("--plot-script", fig_plot, "Also write a matplotlib script for the CSV");

    int verify_density = 1;
    std::string verify_fault;
    auto* verify_cmd = app.add_subcommand("verify", "Run the full cross-check battery");
    verify_cmd->add_option("--grid-density", verify_density, "Sampling refinement factor (>= 1)");
    verify_cmd->add_option("--inject-fault", verify_fault, "Corrupt the evaluation path (test hook)")
        ->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 1;
    }

    try {
        if (qfi_cmd->parsed() && !qfi_config.empty())
            apply_config_file(qfi_config, qfi_bindings);
        if (ev_cmd->parsed() && !ev_config.empty()) apply_config_file(ev_config, ev_bindings);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }

    if (qfi_cmd->parsed()) return run_qfi(qfi_opt, qfi_csv, qfi_print_config);
    if (ev_cmd->parsed())
        return run_evolve(ev_opt, ev_t_end, ev_dt, ev_stride, ev_out, ev_print_config);
    if (fig_cmd->parsed())
        return run_figure(fig_id, fig_points, fig_dir,
                          fig_lambda > 0.0 ? std::optional<double>(fig_lambda) : std::nullopt,
                          fig_plot);
    if (verify_cmd->parsed()) return run_verify(verify_density, verify_fault);
    return 1;
}
