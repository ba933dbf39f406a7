#include "biocell/montecarlo.hpp"

#include "biocell/kernels/decay.hpp"
#include "biocell/meanfield.hpp"
#include "biocell/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace biocell {

double sample_extraction(std::int64_t n, double p, double g_i, RandomStream& stream) {
    std::int64_t successes = 0;
    for (std::int64_t j = 0; j < n; ++j) {
        if (uniform01(stream) < p) ++successes;
    }
    return static_cast<double>(successes) * g_i;
}

Trajectory simulate_trajectory(const ModelParams& params, std::uint64_t seed) {
    RandomStream stream(seed);
    Trajectory traj = integrate_impulsive(params, [&](std::int64_t) {
        return sample_extraction(params.n(), params.p(), params.g_i(), stream);
    });
    traj.kind = EngineKind::monte_carlo;
    traj.seed = seed;
    return traj;
}

std::vector<std::int64_t> output_steps(const ModelParams& params, std::int64_t stride) {
    if (stride < 1) throw ValidationError("output_stride", "must be >= 1");
    std::vector<std::int64_t> steps;
    const std::int64_t last = params.total_steps();
    for (std::int64_t k = 0; k <= last; k += stride) steps.push_back(k);
    if (steps.back() != last) steps.push_back(last);
    return steps;
}

double nearest_rank(const std::vector<double>& sorted, double q) {
    const auto n = sorted.size();
    auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
    rank = std::clamp<std::size_t>(rank, 1, n);
    return sorted[rank - 1];
}

namespace {

constexpr std::size_t kBlockRuns = 32;

// Values of every run at every output step, laid out [output][run].
struct RunMatrix {
    std::size_t runs;
    std::vector<double> S, P, injected;

    RunMatrix(std::size_t outputs, std::size_t num_runs)
        : runs(num_runs), S(outputs * num_runs), P(outputs * num_runs), injected(outputs * num_runs) {}
};

void simulate_block(const ModelParams& params, std::uint64_t master_seed, std::size_t first_run,
                    std::size_t count, const std::vector<std::int64_t>& outputs, RunMatrix& out) {
    const kernels::StepSize h(params.dt());
    std::vector<double> s(count, params.s0());
    const std::vector<double> v_max(count, params.V_max());
    const std::vector<double> k_m(count, params.K_m());
    std::vector<double> injected(count, 0.0);
    std::vector<RandomStream> streams;
    streams.reserve(count);
    for (std::size_t j = 0; j < count; ++j) streams.emplace_back(derive_seed(master_seed, first_run + j));

    const double p_max = params.P_max();
    const double km = params.K_m();
    auto record = [&](std::size_t o) {
        for (std::size_t j = 0; j < count; ++j) {
            const std::size_t at = o * out.runs + first_run + j;
            out.S[at] = s[j];
            out.P[at] = p_max * s[j] / (km + s[j]);
            out.injected[at] = injected[j];
        }
    };

    const std::int64_t spi = params.steps_per_interval();
    const std::int64_t last = params.total_steps();
    std::size_t next_output = 0;
    if (outputs[0] == 0) record(next_output++);
    std::int64_t cur = 0;
    while (cur < last) {
        const std::int64_t next_impulse = (cur / spi + 1) * spi;
        std::int64_t next = std::min(next_impulse, last);
        if (next_output < outputs.size()) next = std::min(next, outputs[next_output]);
        kernels::advance(s, v_max, k_m, h, static_cast<std::size_t>(next - cur));
        cur = next;
        if (cur == next_impulse) {
            for (std::size_t j = 0; j < count; ++j) {
                const double amount = sample_extraction(params.n(), params.p(), params.g_i(), streams[j]);
                s[j] += amount;
                injected[j] += amount;
            }
        }
        if (next_output < outputs.size() && outputs[next_output] == cur) record(next_output++);
    }
}

struct Moments {
    double mean;
    double stddev;
};

// Shifted accumulation: identical inputs give mean == input and stddev == 0 exactly.
Moments moments(const double* values, std::size_t n) {
    const double ref = values[0];
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += values[i] - ref;
    const double mean = ref + sum / static_cast<double>(n);
    if (n < 2) return {mean, 0.0};
    const double shift = sum / static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = (values[i] - ref) - shift;
        ss += d * d;
    }
    return {mean, std::sqrt(ss / static_cast<double>(n - 1))};
}

}  // namespace

EnsembleStats run_ensemble(const ModelParams& params, const EnsembleOptions& options) {
    if (options.num_runs < 1) throw ValidationError("num_runs", "must be >= 1");
    const auto outputs = output_steps(params, options.output_stride);
    const std::size_t runs = options.num_runs;
    RunMatrix matrix(outputs.size(), runs);

    const std::size_t blocks = (runs + kBlockRuns - 1) / kBlockRuns;
    parallel_for(blocks, options.threads, [&](std::size_t b) {
        const std::size_t first = b * kBlockRuns;
        simulate_block(params, options.master_seed, first, std::min(kBlockRuns, runs - first), outputs, matrix);
    });

    EnsembleStats stats;
    stats.num_runs = runs;
    stats.master_seed = options.master_seed;
    const std::size_t n_out = outputs.size();
    for (auto* column : {&stats.times, &stats.mean_P, &stats.std_P, &stats.q05_P, &stats.q50_P,
                         &stats.q95_P, &stats.mean_S, &stats.mean_injected, &stats.std_injected}) {
        column->resize(n_out);
    }
    std::vector<double> sorted(runs);
    for (std::size_t o = 0; o < n_out; ++o) {
        const double* p_row = matrix.P.data() + o * runs;
        const auto p_mom = moments(p_row, runs);
        const auto inj_mom = moments(matrix.injected.data() + o * runs, runs);
        stats.times[o] = params.time_at(outputs[o]);
        stats.mean_P[o] = p_mom.mean;
        stats.std_P[o] = p_mom.stddev;
        stats.mean_S[o] = moments(matrix.S.data() + o * runs, runs).mean;
        stats.mean_injected[o] = inj_mom.mean;
        stats.std_injected[o] = inj_mom.stddev;
        std::copy(p_row, p_row + runs, sorted.begin());
        std::sort(sorted.begin(), sorted.end());
        stats.q05_P[o] = nearest_rank(sorted, 0.05);
        stats.q50_P[o] = nearest_rank(sorted, 0.50);
        stats.q95_P[o] = nearest_rank(sorted, 0.95);
    }
    return stats;
}

std::vector<double> closure_gap(const ModelParams& params, const EnsembleStats& stats) {
    const Trajectory mf = integrate_mean_field(params);
    std::vector<double> gap(stats.times.size());
    for (std::size_t o = 0; o < gap.size(); ++o) {
        const auto k = static_cast<std::size_t>(std::llround(stats.times[o] / params.dt()));
        gap[o] = stats.mean_P[o] - mf.points.at(k).P;
    }
    return gap;
}

}  // namespace biocell
