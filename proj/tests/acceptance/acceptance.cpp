// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "biocell/cli/commands.hpp"
#include "biocell/compare.hpp"
#include "biocell/kernels/decay.hpp"
#include "biocell/kinetics.hpp"
#include "biocell/meanfield.hpp"
#include "biocell/montecarlo.hpp"
#include "biocell/sweep.hpp"
#include "support/oracles.hpp"

#include <chrono>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include <unistd.h>

using namespace biocell;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void criterion(int number, const char* title, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome result;
    try {
        result = body();
    } catch (const std::exception& e) {
        result = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!result.pass) ++failures;
    std::printf("%s %d %s [%.2fs] %s\n", result.pass ? "PASS" : "FAIL", number, title, secs, result.detail.c_str());
    std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char* format, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, format, a, b, c);
    return buf;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ParamSet reference_setting() {
    ParamSet v;
    v.n = 1;
    v.g_i = 10;
    v.p = 0.5;
    v.T_i = 60;
    v.V_max = 0.25;
    v.K_m = 30;
    v.P_max = 1;
    return v;
}

Outcome half_saturation() {
    std::mt19937_64 rng(1);
    double worst = 0;
    int bad = 0;
    for (int i = 0; i < 100; ++i) {
        const auto v = oracle::random_params(rng);
        const double v_err = std::abs(mm_rate(v.K_m, v.V_max, v.K_m) - v.V_max / 2) / (v.V_max / 2);
        const double p_err = std::abs(power_density(v.K_m, v.P_max, v.K_m) - v.P_max / 2) / (v.P_max / 2);
        worst = std::max({worst, v_err, p_err});
        if (v_err > 2.3e-16 || p_err > 2.3e-16) ++bad;
    }
    return {bad == 0, fmt("100 sets, worst relative error %.3g", worst)};
}

Outcome steady_state_reproduction() {
    const auto start = std::chrono::steady_clock::now();
    auto v = reference_setting();
    v.t_end = 1e5;
    const ModelParams params(v);
    const auto traj = integrate_mean_field(params);
    const auto spi = params.steps_per_interval();
    const auto from = static_cast<std::int64_t>(std::llround(0.9e5 / v.dt));
    const auto to = params.total_steps() / spi * spi;
    const double avg = average_power(params, traj, from, to);
    const double p_star = oracle::equilibrium(1, 10, 0.5, 60, 0.25, 30, 1).p_star;
    const double secs = seconds_since(start);
    const double err = std::abs(avg - p_star);
    return {err <= 1e-3 && secs < 5, fmt("mean P over [0.9e5, 1e5] s = %.9f, P* = %.9f, runtime %.2fs", avg, p_star, secs)};
}

Outcome preset_monotonicity() {
    const auto start = std::chrono::steady_clock::now();
    int violations = 0;
    std::string detail;
    for (auto name : preset_names()) {
        const auto grid = run_sweep(preset(name));
        const int y_sign = name == "fig5c" ? -1 : +1;
        int here = 0;
        for (std::size_t r = 0; r < grid.rows(); ++r)
            for (std::size_t c = 1; c < grid.cols(); ++c)
                if (grid.at(r, c) < grid.at(r, c - 1)) ++here;
        for (std::size_t c = 0; c < grid.cols(); ++c)
            for (std::size_t r = 1; r < grid.rows(); ++r)
                if (y_sign * (grid.at(r, c) - grid.at(r - 1, c)) < 0) ++here;
        violations += here;
        detail += std::string(name) + " " + std::to_string(grid.rows()) + "x" + std::to_string(grid.cols()) + ": " +
                  std::to_string(here) + " violations; ";
    }
    const double secs = seconds_since(start);
    return {violations == 0 && secs < 60, detail + fmt("runtime %.2fs", secs)};
}

Outcome near_zero_regime() {
    const auto grid = run_sweep(preset("fig5b"));
    double worst = 0;
    int cells = 0;
    for (std::size_t r = 0; r < grid.rows(); ++r) {
        if (grid.spec.y.values[r] >= 1.0) continue;
        for (std::size_t c = 0; c < grid.cols(); ++c, ++cells) worst = std::max(worst, grid.at(r, c));
    }
    return {cells > 0 && worst < 0.07, fmt("%g cells with g_i < 1 uM, max P = %.6f mW/cm^2", cells, worst)};
}

Outcome degenerate_equivalence() {
    std::mt19937_64 rng(5);
    int mismatches = 0;
    for (int i = 0; i < 20; ++i) {
        auto v = oracle::random_params(rng, 3600);
        v.p = i % 2 == 0 ? 0.0 : 1.0;
        const ModelParams params(v);
        const auto mc = simulate_trajectory(params, derive_seed(2024, i));
        const auto mf = integrate_mean_field(params);
        if (mc.points.size() != mf.points.size() ||
            std::memcmp(mc.points.data(), mf.points.data(), mc.points.size() * sizeof(TrajectoryPoint)) != 0)
            ++mismatches;
    }
    return {mismatches == 0, fmt("20 sets (10 with p = 0, 10 with p = 1), %g not bit-identical", mismatches)};
}

Outcome statistical_soundness() {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> unit(0, 1);
    std::uniform_int_distribution<int> n_dist(1, 20), t_dist(10, 300);
    bool ok = true;
    double worst_z = 0, worst_seed_z = 0, slowest = 0;
    for (int set = 0; set < 5; ++set) {
        const auto start = std::chrono::steady_clock::now();
        auto v = reference_setting();
        if (set > 0) {
            v.n = n_dist(rng);
            v.g_i = 0.1 + 20 * unit(rng);
            v.p = 0.05 + 0.9 * unit(rng);
            v.T_i = t_dist(rng);
        }
        v.t_end = 18000;
        const ModelParams params(v);
        EnsembleOptions opts;
        opts.num_runs = 1000;
        opts.output_stride = params.total_steps();
        opts.master_seed = 100 + set;
        const auto a = run_ensemble(params, opts);
        opts.master_seed = 200 + set;
        const auto b = run_ensemble(params, opts);

        const double impulses = std::floor(18000 / v.T_i + 1e-9);
        const double expect = impulses * static_cast<double>(v.n) * v.g_i * v.p;
        const double se = a.std_injected.back() / std::sqrt(1000.0);
        const double z = se > 0 ? std::abs(a.mean_injected.back() - expect) / se : 0.0;
        const double seed_se = std::hypot(a.std_P.back(), b.std_P.back()) / std::sqrt(1000.0);
        const double seed_z = seed_se > 0 ? std::abs(a.mean_P.back() - b.mean_P.back()) / seed_se : 0.0;
        const double secs = seconds_since(start);
        worst_z = std::max(worst_z, z);
        worst_seed_z = std::max(worst_seed_z, seed_z);
        slowest = std::max(slowest, secs);
        if (z > 3 || seed_z > 3 || secs >= 60) ok = false;
    }
    return {ok, fmt("5 sets x 1000 runs: injected |z| <= %.3f, seed agreement |z| <= %.3f, slowest set %.2fs", worst_z,
                    worst_seed_z, slowest)};
}

Outcome conservation_and_convergence() {
    std::mt19937_64 rng(7);
    double worst_balance = 0, worst_dt = 0;
    for (int i = 0; i < 10; ++i) {
        const ModelParams params(oracle::random_params(rng, 7200));
        const auto mf = integrate_mean_field(params);
        const auto mc = simulate_trajectory(params, derive_seed(77, i));
        for (const Trajectory* traj : {&mf, &mc}) {
            const std::size_t upto = traj->points.size() - 1;
            const auto bal = oracle::mass_balance(params, *traj, upto);
            const double hours = traj->points[upto].t / 3600.0;
            worst_balance = std::max(worst_balance, std::abs(bal.residual) / std::max(bal.throughput, 1e-12) / hours);
        }
        auto fine = params.values();
        fine.dt = params.dt() / 2;
        if (fine.s0 < 1.0) fine.s0 = 1.0;
        auto coarse = fine;
        coarse.dt = params.dt();
        const double a = integrate_mean_field(ModelParams(coarse)).points.back().S;
        const double b = integrate_mean_field(ModelParams(fine)).points.back().S;
        if (b > 0) worst_dt = std::max(worst_dt, std::abs(a - b) / b);
    }
    return {worst_balance <= 1e-6 && worst_dt < 1e-8,
            fmt("worst balance residual %.3g relative per hour, worst dt-halving change %.3g", worst_balance, worst_dt)};
}

Outcome thread_determinism() {
    const fs::path dir = fs::temp_directory_path() / ("biocell_accept_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    cli::RunConfig config;
    config.params = reference_setting();
    config.engine = cli::Engine::monte_carlo;
    config.seed = 42;
    config.runs = 1000;
    std::ostringstream sink;
    config.threads = 1;
    cli::cmd_ensemble(config, {(dir / "one.csv").string(), std::nullopt}, sink);
    config.threads = 8;
    cli::cmd_ensemble(config, {(dir / "eight.csv").string(), std::nullopt}, sink);
    const std::string a = slurp(dir / "one.csv"), b = slurp(dir / "eight.csv");
    fs::remove_all(dir);
    return {!a.empty() && a == b, fmt("--threads 1 vs 8: %g bytes each, identical", static_cast<double>(a.size()))};
}

Outcome comparison_fidelity() {
    const fs::path dir = fs::temp_directory_path() / ("biocell_accept_cmp_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    cli::CompareRequest request;
    request.records_out = (dir / "records.csv").string();
    std::ostringstream sink;
    cli::cmd_compare(request, {(dir / "scatter.csv").string(), std::nullopt}, sink);
    const auto records = ingest_records_file((dir / "records.csv").string());
    std::ifstream scatter(dir / "scatter.csv");
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(scatter, line)) lines.push_back(line);
    fs::remove_all(dir);

    bool ok = records.size() == 2 && lines.size() == 3;
    ok = ok && records[0].max_power_density == 0.91 && records[0].max_current_density == 3.1;
    ok = ok && records[1].max_power_density == 1.21 && records[1].max_current_density == 6.42;
    ok = ok && records[0].kind == BiocellKind::respiration && records[1].kind == BiocellKind::respiration;
    ok = ok && lines[1] == "respiration,PET-nanochannel biocell,3.1,0.91" &&
         lines[2] == "respiration,SPEEK-fiber biocell,6.42,1.21";
    std::istringstream again(records_csv(records));
    const bool lossless = ingest_records(again) == records && records == builtin_records();
    return {ok && lossless, std::string("two records (0.91 mW/cm^2 @ 3.1 mA/cm^2, 1.21 mW/cm^2 @ 6.42 mA/cm^2); ") +
                                (lossless ? "round-trip lossless" : "round-trip changed records")};
}

}  // namespace

int main() {
    std::printf("kernel variant: %s\n", std::string(kernels::isa_name(kernels::active_isa())).c_str());
    criterion(1, "half-saturation exactness", half_saturation);
    criterion(2, "steady-state reproduction", steady_state_reproduction);
    criterion(3, "preset grid monotonicity", preset_monotonicity);
    criterion(4, "near-zero-power regime", near_zero_regime);
    criterion(5, "degenerate equivalence", degenerate_equivalence);
    criterion(6, "Monte Carlo statistical soundness", statistical_soundness);
    criterion(7, "conservation and convergence", conservation_and_convergence);
    criterion(8, "determinism under parallelism", thread_determinism);
    criterion(9, "comparison fidelity", comparison_fidelity);
    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
