#include "biocell/sweep.hpp"

#include "biocell/io/csv.hpp"
#include "biocell/kernels/decay.hpp"
#include "biocell/kinetics.hpp"
#include "biocell/montecarlo.hpp"
#include "biocell/parallel.hpp"
#include "biocell/rng.hpp"

#include <algorithm>
#include <array>
#include <map>

namespace biocell {

namespace {

constexpr std::size_t kLanesPerTask = 64;

constexpr std::array<std::string_view, 7> kAxisNames = {"p", "n", "g_i", "T_i", "V_max", "K_m", "s0"};

void check_axis(const Axis& axis, const char* which) {
    if (!is_sweep_axis(axis.name)) {
        throw ValidationError(which, "axis parameter '" + axis.name + "' is not one of p, n, g_i, T_i, V_max, K_m, s0");
    }
    if (axis.values.empty()) throw ValidationError(which, "axis has no values");
}

// Mean-field cells that share an impulse schedule, advanced together lane by lane.
struct LaneGroup {
    std::int64_t steps_per_interval;
    std::vector<std::size_t> cells;
};

void run_mean_field_lanes(const std::vector<ModelParams>& cells, const std::vector<std::size_t>& lanes,
                          std::int64_t spi, std::int64_t last, std::vector<double>& out) {
    const std::size_t count = lanes.size();
    const kernels::StepSize h(cells[lanes[0]].dt());
    std::vector<double> s(count), v_max(count), k_m(count), jump(count);
    for (std::size_t j = 0; j < count; ++j) {
        const ModelParams& c = cells[lanes[j]];
        s[j] = c.s0();
        v_max[j] = c.V_max();
        k_m[j] = c.K_m();
        jump[j] = expected_influx(c.n(), c.g_i(), c.p());
    }
    std::int64_t cur = 0;
    while (cur < last) {
        const std::int64_t next = std::min((cur / spi + 1) * spi, last);
        kernels::advance(s, v_max, k_m, h, static_cast<std::size_t>(next - cur));
        cur = next;
        if (cur % spi == 0) {
            for (std::size_t j = 0; j < count; ++j) s[j] += jump[j];
        }
    }
    for (std::size_t j = 0; j < count; ++j) {
        const ModelParams& c = cells[lanes[j]];
        out[lanes[j]] = c.P_max() * s[j] / (c.K_m() + s[j]);
    }
}

}  // namespace

bool is_sweep_axis(std::string_view name) {
    return std::find(kAxisNames.begin(), kAxisNames.end(), name) != kAxisNames.end();
}

ModelParams cell_params(const SweepSpec& spec, std::size_t row, std::size_t col) {
    const double xv = spec.x.values.at(col);
    const double yv = spec.y.values.at(row);
    try {
        ParamSet values = spec.base;
        values.t_end = spec.eval_time;
        set_param(values, spec.x.name, xv);
        set_param(values, spec.y.name, yv);
        return ModelParams(values);
    } catch (const ValidationError& e) {
        const std::string coords = "(" + spec.y.name + "=" + io::format_double(yv) + ", " + spec.x.name + "=" +
                                   io::format_double(xv) + ")";
        throw SweepCellError(row, col, coords, e);
    }
}

SweepGrid run_sweep(const SweepSpec& spec) {
    check_axis(spec.x, "axis_x");
    check_axis(spec.y, "axis_y");
    if (spec.x.name == spec.y.name) throw ValidationError("axis_y", "both axes sweep '" + spec.x.name + "'");

    const std::size_t rows = spec.y.values.size();
    const std::size_t cols = spec.x.values.size();
    std::vector<ModelParams> cells;
    cells.reserve(rows * cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) cells.push_back(cell_params(spec, r, c));
    }

    SweepGrid grid{spec, std::vector<double>(cells.size(), 0.0)};

    if (spec.engine == SweepEngine::monte_carlo) {
        if (spec.num_runs < 1) throw ValidationError("num_runs", "must be >= 1");
        parallel_for(cells.size(), spec.threads, [&](std::size_t i) {
            EnsembleOptions opts;
            opts.num_runs = spec.num_runs;
            opts.master_seed = derive_seed(spec.master_seed, i);
            opts.output_stride = cells[i].total_steps();
            opts.threads = 1;
            grid.values[i] = run_ensemble(cells[i], opts).mean_P.back();
        });
        return grid;
    }

    // Cells in a task share T_i/dt; the total step count is common to all cells.
    std::map<std::int64_t, std::vector<std::size_t>> by_schedule;
    for (std::size_t i = 0; i < cells.size(); ++i) by_schedule[cells[i].steps_per_interval()].push_back(i);
    std::vector<LaneGroup> tasks;
    for (auto& [spi, members] : by_schedule) {
        for (std::size_t off = 0; off < members.size(); off += kLanesPerTask) {
            const auto end = std::min(members.size(), off + kLanesPerTask);
            tasks.push_back({spi, std::vector<std::size_t>(members.begin() + off, members.begin() + end)});
        }
    }
    const std::int64_t last = cells.front().total_steps();
    parallel_for(tasks.size(), spec.threads, [&](std::size_t t) {
        run_mean_field_lanes(cells, tasks[t].cells, tasks[t].steps_per_interval, last, grid.values);
    });
    return grid;
}

std::vector<double> probability_axis() {
    std::vector<double> values;
    for (int i = 0; i <= 20; ++i) values.push_back(i / 20.0);
    return values;
}

std::vector<std::string_view> preset_names() { return {"fig5a", "fig5b", "fig5c"}; }

SweepSpec preset(std::string_view name) {
    SweepSpec spec;
    spec.base = ParamSet{};
    spec.base.P_max = 1.0;
    spec.base.V_max = 0.25;
    spec.base.K_m = 30.0;
    spec.base.s0 = 0.0;
    spec.base.dt = 0.1;
    spec.eval_time = 18000.0;
    spec.x = {"p", probability_axis()};

    if (name == "fig5a") {
        spec.base.g_i = 1.0;
        spec.base.T_i = 60.0;
        spec.y.name = "n";
        for (int n = 1; n <= 50; ++n) spec.y.values.push_back(n);
    } else if (name == "fig5b") {
        spec.base.T_i = 60.0;
        spec.base.n = 1;
        spec.y.name = "g_i";
        spec.y.values.push_back(0.1);
        for (int i = 1; i <= 40; ++i) spec.y.values.push_back(i / 2.0);
    } else if (name == "fig5c") {
        spec.base.g_i = 10.0;
        spec.base.n = 1;
        spec.y.name = "T_i";
        // every cell is then read at an impulse boundary
        for (int t = 10; t <= 600; ++t) {
            if (18000 % t == 0) spec.y.values.push_back(t);
        }
    } else {
        throw ValidationError("preset", "unknown preset '" + std::string(name) + "' (expected fig5a, fig5b, fig5c)");
    }
    spec.base.t_end = spec.eval_time;
    return spec;
}

}  // namespace biocell
