#include "biocell/cli/commands.hpp"

#include "biocell/io/atomic_file.hpp"
#include "biocell/io/csv.hpp"
#include "biocell/io/svg.hpp"
#include "biocell/kernels/decay.hpp"
#include "biocell/meanfield.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <map>
#include <sstream>

namespace biocell::cli {

using io::format_double;

std::string trajectory_csv(const Trajectory& traj) {
    std::string out = kTrajectoryHeader;
    out += '\n';
    out.reserve(traj.points.size() * 64);
    for (const auto& pt : traj.points) {
        out += format_double(pt.t);
        out += ',';
        out += format_double(pt.S);
        out += ',';
        out += format_double(pt.V);
        out += ',';
        out += format_double(pt.P);
        out += '\n';
    }
    return out;
}

std::string ensemble_csv(const EnsembleStats& stats) {
    std::string out = kEnsembleHeader;
    out += '\n';
    for (std::size_t i = 0; i < stats.times.size(); ++i) {
        out += io::join_row({format_double(stats.times[i]), format_double(stats.mean_P[i]),
                             format_double(stats.std_P[i]), format_double(stats.q05_P[i]),
                             format_double(stats.q50_P[i]), format_double(stats.q95_P[i]),
                             format_double(stats.mean_S[i])});
        out += '\n';
    }
    return out;
}

std::string sweep_csv(const SweepGrid& grid) {
    std::string out = kSweepHeader;
    out += '\n';
    for (std::size_t r = 0; r < grid.rows(); ++r) {
        for (std::size_t c = 0; c < grid.cols(); ++c) {
            out += io::join_row({grid.spec.y.name, format_double(grid.spec.y.values[r]), grid.spec.x.name,
                                 format_double(grid.spec.x.values[c]), format_double(grid.at(r, c))});
            out += '\n';
        }
    }
    return out;
}

namespace {

void write_outputs(const Outputs& outputs, std::string csv, std::optional<std::string> svg) {
    std::vector<io::PendingOutput> pending{{outputs.csv, std::move(csv)}};
    if (outputs.svg && svg) pending.push_back({*outputs.svg, std::move(*svg)});
    io::write_all(pending);
}

void report_steady(const ModelParams& params, std::ostream& report) {
    const SteadyState ss = steady_state(params);
    report << "steady-state regime: " << regime_name(ss.regime) << '\n';
    report << "steady-state r_uM_per_s: " << format_double(ss.r) << '\n';
    if (ss.S_star) {
        report << "steady-state S*_uM: " << format_double(*ss.S_star) << '\n';
        report << "steady-state P*_mW_cm2: " << format_double(ss.P_star) << '\n';
    } else {
        report << "steady-state S*_uM: unbounded\n";
        report << "steady-state P*_mW_cm2: " << format_double(ss.P_star) << " (asymptote)\n";
    }
}

}  // namespace

RunConfig make_config(const std::vector<Setting>& settings, const ParamSet& base) {
    RunConfig config;
    config.params = base;
    for (const auto& s : settings) apply_setting(config, s.key, s.value);
    return config;
}

void cmd_simulate(const RunConfig& config, const Outputs& outputs, std::ostream& report) {
    const ModelParams params(config.params);
    Trajectory traj = config.engine == Engine::monte_carlo ? simulate_trajectory(params, require_seed(config))
                                                           : integrate_mean_field(params);
    std::optional<std::string> svg;
    if (outputs.svg) {
        io::Series series{"P", {}, {}};
        for (const auto& pt : traj.points) {
            series.x.push_back(pt.t);
            series.y.push_back(pt.P);
        }
        svg = io::line_chart_svg({series}, {"Power density (" + traj.kind_label() + ")", "t (s)", "P (mW/cm^2)"});
    }
    write_outputs(outputs, trajectory_csv(traj), std::move(svg));

    const auto& last = traj.points.back();
    report << "engine: " << traj.kind_label() << '\n';
    report << "params: " << traj.params_digest << '\n';
    report << "final t_s: " << format_double(last.t) << '\n';
    report << "final S_uM: " << format_double(last.S) << '\n';
    report << "final P_mW_cm2: " << format_double(last.P) << '\n';
    report << "final-interval mean P_mW_cm2: " << format_double(terminal_period_power(params, traj)) << '\n';
    report_steady(params, report);
}

void cmd_ensemble(const RunConfig& config, const Outputs& outputs, std::ostream& report) {
    const ModelParams params(config.params);
    EnsembleOptions opts;
    opts.num_runs = config.runs;
    opts.master_seed = require_seed(config);
    opts.output_stride = config.stride;
    opts.threads = config.threads;
    const EnsembleStats stats = run_ensemble(params, opts);
    const auto gap = closure_gap(params, stats);

    std::optional<std::string> svg;
    if (outputs.svg) {
        io::Series mean{"mean P", stats.times, stats.mean_P};
        io::Series q05{"q05 P", stats.times, stats.q05_P};
        io::Series q95{"q95 P", stats.times, stats.q95_P};
        std::vector<double> mf(stats.times.size());
        for (std::size_t i = 0; i < mf.size(); ++i) mf[i] = stats.mean_P[i] - gap[i];
        io::Series meanfield{"mean-field P", stats.times, mf};
        svg = io::line_chart_svg({mean, q05, q95, meanfield}, {"Ensemble power density", "t (s)", "P (mW/cm^2)"});
    }
    write_outputs(outputs, ensemble_csv(stats), std::move(svg));

    const std::size_t last = stats.times.size() - 1;
    const double se = stats.std_P[last] / std::sqrt(static_cast<double>(stats.num_runs));
    report << "runs: " << stats.num_runs << '\n';
    report << "master seed: " << stats.master_seed << '\n';
    report << "final t_s: " << format_double(stats.times[last]) << '\n';
    report << "final mean_P_mW_cm2: " << format_double(stats.mean_P[last]) << " (standard error "
           << format_double(se) << ")\n";
    report << "final closure gap (mean_P - mean-field P): " << format_double(gap[last]) << '\n';
    report_steady(params, report);
}

SweepSpec build_sweep_spec(const std::vector<Setting>& settings, const SweepRequest& request) {
    SweepSpec spec;
    if (request.preset) {
        if (request.x_axis || request.y_axis) {
            throw ValidationError("preset", "--preset cannot be combined with --x/--y");
        }
        spec = preset(*request.preset);
    } else if (!request.x_axis || !request.y_axis) {
        throw ValidationError("axis", "give --preset or both --x and --y");
    }
    const RunConfig config = make_config(settings, spec.base);
    if (!request.preset) {
        spec.x = parse_axis(*request.x_axis);
        spec.y = parse_axis(*request.y_axis);
    }
    spec.base = config.params;
    spec.eval_time = config.eval_time;
    spec.threads = config.threads;
    spec.engine = config.engine == Engine::monte_carlo ? SweepEngine::monte_carlo : SweepEngine::mean_field;
    if (spec.engine == SweepEngine::monte_carlo) {
        spec.master_seed = require_seed(config);
        spec.num_runs = config.runs;
    }
    return spec;
}

void cmd_sweep(const SweepSpec& spec, const Outputs& outputs, std::ostream& report) {
    const SweepGrid grid = run_sweep(spec);
    std::optional<std::string> svg;
    if (outputs.svg) {
        svg = io::heatmap_svg(grid.spec.x.values, grid.spec.y.values, grid.values, grid.spec.base.P_max,
                              {"Power density at t = " + format_double(grid.spec.eval_time) + " s (mW/cm^2)",
                               grid.spec.x.name, grid.spec.y.name});
    }
    write_outputs(outputs, sweep_csv(grid), std::move(svg));
    double lo = grid.values.front(), hi = grid.values.front();
    for (double v : grid.values) lo = std::min(lo, v), hi = std::max(hi, v);
    report << "cells: " << grid.rows() << " x " << grid.cols() << " (" << grid.spec.y.name << " x "
           << grid.spec.x.name << ")\n";
    report << "power range_mW_cm2: " << format_double(lo) << " .. " << format_double(hi) << '\n';
}

void cmd_steady(const RunConfig& config, std::optional<double> fraction, const std::optional<std::string>& out,
                std::ostream& report) {
    const ModelParams params(config.params);
    std::ostringstream text;
    report_steady(params, text);
    if (fraction) {
        const auto t = time_to_fraction(params, *fraction);
        text << "time to " << format_double(*fraction) << " of P*_s: " << (t ? format_double(*t) : "not reached")
             << '\n';
    }
    if (out) io::write_file(*out, text.str());
    report << text.str();
}

void cmd_compare(const CompareRequest& request, const Outputs& outputs, std::ostream& report) {
    std::vector<BiocellRecord> records;
    if (request.include_builtin) records = builtin_records();
    for (const auto& path : request.inputs) {
        auto more = ingest_records_file(path);
        records.insert(records.end(), more.begin(), more.end());
    }
    std::vector<io::PendingOutput> pending{{outputs.csv, scatter_csv(records)}};
    if (outputs.svg) pending.push_back({*outputs.svg, scatter_svg(records)});
    if (request.records_out) pending.push_back({*request.records_out, records_csv(records)});
    io::write_all(pending);
    for (const auto& s : scatter_series(records)) {
        report << kind_name(s.kind) << ": " << s.points.size() << " record(s)\n";
    }
}

namespace {

struct FlagSpec {
    const char* flag;
    const char* key;
    const char* help;
};

constexpr FlagSpec kModelFlags[] = {
    {"--n", "n", "connected plants (count, integer >= 0)"},
    {"--g-i", "g_i", "glucose per successful extraction (uM)"},
    {"--p", "p", "extraction success probability per plant per interval (0..1)"},
    {"--t-i", "T_i", "signalling interval (s, multiple of --dt)"},
    {"--v-max", "V_max", "maximum catalytic rate (uM/s)"},
    {"--k-m", "K_m", "Michaelis-Menten constant (uM)"},
    {"--p-max", "P_max", "maximum power density (mW/cm^2)"},
    {"--s0", "s0", "initial anode glucose concentration (uM)"},
    {"--t-end", "t_end", "simulation horizon (s, multiple of --dt)"},
    {"--dt", "dt", "integrator step (s)"},
};

// Flags bound to optional strings; parsed later through apply_setting so the
// config file and the command line share one set of validation messages.
class FlagSet {
public:
    void add(CLI::App* app, const char* flag, const char* key, const char* help) {
        auto& slot = values_[key];
        app->add_option(flag, slot, help);
        order_.push_back(key);
    }

    void add_model(CLI::App* app) {
        for (const auto& f : kModelFlags) add(app, f.flag, f.key, f.help);
    }

    std::vector<Setting> settings() const {
        std::vector<Setting> out;
        for (const auto& key : order_) {
            const auto& v = values_.at(key);
            if (v) out.push_back({key, *v});
        }
        return out;
    }

private:
    std::map<std::string, std::optional<std::string>> values_;
    std::vector<std::string> order_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Respiration-biocell energy harvesting simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "biocell 1.0");

    std::string config_path;
    std::optional<std::string> svg_path;
    std::string sim_out = "trajectory.csv", ens_out = "ensemble.csv", sweep_out = "sweep.csv",
                compare_out = "compare.csv";

    auto common = [&](CLI::App* sub, std::string& out_path) {
        sub->add_option("--config", config_path, "config file of 'key = value' lines (overridden by flags)");
        sub->add_option("--out", out_path, "output CSV path")->capture_default_str();
        sub->add_option("--svg", svg_path, "also write an SVG chart to this path");
    };

    FlagSet sim_flags, ens_flags, sweep_flags, steady_flags;

    auto* simulate = app.add_subcommand("simulate", "integrate one trajectory (mean-field or one Monte Carlo run)");
    common(simulate, sim_out);
    sim_flags.add_model(simulate);
    sim_flags.add(simulate, "--engine", "engine", "mean-field (default) or monte-carlo");
    sim_flags.add(simulate, "--seed", "seed", "random seed (64-bit unsigned; required for monte-carlo)");
    sim_flags.add(simulate, "--threads", "threads", "worker cap (count; no effect on results)");

    auto* ensemble = app.add_subcommand("ensemble", "Monte Carlo ensemble statistics of power density");
    common(ensemble, ens_out);
    ens_flags.add_model(ensemble);
    ens_flags.add(ensemble, "--seed", "seed", "master seed (64-bit unsigned, required)");
    ens_flags.add(ensemble, "--runs", "runs", "number of realisations (count, default 1000)");
    ens_flags.add(ensemble, "--stride", "stride", "integrator steps between reported times (count, default 600)");
    ens_flags.add(ensemble, "--threads", "threads", "worker cap (count, 0 = all cores; no effect on results)");

    SweepRequest sweep_req;
    auto* sweep = app.add_subcommand("sweep", "two-parameter power density sweep");
    common(sweep, sweep_out);
    sweep->add_option("--preset", sweep_req.preset, "fig5a | fig5b | fig5c");
    sweep->add_option("--x", sweep_req.x_axis, "x axis: name=v1,v2,... or name=start:stop:step");
    sweep->add_option("--y", sweep_req.y_axis, "y axis: name=v1,v2,... or name=start:stop:step");
    sweep_flags.add_model(sweep);
    sweep_flags.add(sweep, "--eval-time", "eval_time", "time at which power is read (s, default 18000)");
    sweep_flags.add(sweep, "--engine", "engine", "mean-field (default) or monte-carlo");
    sweep_flags.add(sweep, "--seed", "seed", "master seed (64-bit unsigned; required for monte-carlo)");
    sweep_flags.add(sweep, "--runs", "runs", "realisations per cell for monte-carlo (count)");
    sweep_flags.add(sweep, "--threads", "threads", "worker cap (count, 0 = all cores; no effect on results)");

    std::optional<double> fraction;
    std::optional<std::string> steady_out;
    auto* steady = app.add_subcommand("steady", "closed-form steady state of the mean-field model");
    steady->add_option("--config", config_path, "config file of 'key = value' lines (overridden by flags)");
    steady->add_option("--out", steady_out, "also write the report to this path");
    steady->add_option("--fraction", fraction, "report the time to reach this fraction of P* (0..1, exclusive)");
    steady_flags.add_model(steady);

    CompareRequest compare_req;
    bool no_builtin = false;
    std::optional<std::string> records_out;
    auto* compare = app.add_subcommand("compare", "respiration vs photosynthetic biocell scatter");
    compare->add_option("inputs", compare_req.inputs, "record CSV files to merge with the built-in records");
    compare->add_option("--out", compare_out, "scatter CSV path (mA/cm^2 vs mW/cm^2)")->capture_default_str();
    compare->add_option("--svg", svg_path, "also write an SVG scatter plot to this path");
    compare->add_option("--records-out", records_out, "write the merged records in the input schema");
    compare->add_flag("--no-builtin", no_builtin, "omit the two built-in respiration records");

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        std::vector<Setting> settings;
        if (!config_path.empty()) settings = read_settings_file(config_path);
        auto with_flags = [&](const FlagSet& flags) {
            auto all = settings;
            for (auto& s : flags.settings()) all.push_back(std::move(s));
            return all;
        };
        if (simulate->parsed()) {
            cmd_simulate(make_config(with_flags(sim_flags)), {sim_out, svg_path}, out);
        } else if (ensemble->parsed()) {
            cmd_ensemble(make_config(with_flags(ens_flags)), {ens_out, svg_path}, out);
        } else if (sweep->parsed()) {
            cmd_sweep(build_sweep_spec(with_flags(sweep_flags), sweep_req), {sweep_out, svg_path}, out);
        } else if (steady->parsed()) {
            cmd_steady(make_config(with_flags(steady_flags)), fraction, steady_out, out);
        } else if (compare->parsed()) {
            compare_req.include_builtin = !no_builtin;
            compare_req.records_out = records_out;
            cmd_compare(compare_req, {compare_out, svg_path}, out);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace biocell::cli
