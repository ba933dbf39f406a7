#pragma once

#include "biocell/params.hpp"
#include "biocell/rng.hpp"
#include "biocell/trajectory.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace biocell {

/// g_i * B with B ~ Binomial(n, p), drawn as n Bernoulli trials in plant order:
/// plant j succeeds iff uniform01(stream) < p. Consumes exactly n draws.
double sample_extraction(std::int64_t n, double p, double g_i, RandomStream& stream);

/// One stochastic realisation. The stream is std::mt19937_64 seeded with `seed`
/// directly; impulse schedule and integrator are the mean-field ones.
Trajectory simulate_trajectory(const ModelParams& params, std::uint64_t seed);

struct EnsembleStats {
    std::vector<double> times;  // s
    std::vector<double> mean_P, std_P, q05_P, q50_P, q95_P;  // mW/cm^2
    std::vector<double> mean_S;                              // uM
    // cumulative injected glucose per run (uM); not part of the CSV contract
    std::vector<double> mean_injected, std_injected;
    std::size_t num_runs = 0;
    std::uint64_t master_seed = 0;
};

struct EnsembleOptions {
    std::size_t num_runs = 1000;
    std::uint64_t master_seed = 0;
    std::int64_t output_stride = 600;  // integrator steps between reported points
    unsigned threads = 0;              // 0 = hardware concurrency
};

/// Runs `num_runs` realisations; run i uses seed derive_seed(master_seed, i).
/// Reported times are steps 0, stride, 2*stride, ... plus the final step.
/// std_P is the sample standard deviation (0 for a single run); quantiles use
/// nearest rank on the sorted run values. Results do not depend on `threads`.
EnsembleStats run_ensemble(const ModelParams& params, const EnsembleOptions& options);

/// Output step indices used by run_ensemble for the given stride.
std::vector<std::int64_t> output_steps(const ModelParams& params, std::int64_t stride);

/// Nearest-rank quantile of already-sorted values: element ceil(q*N) (1-based).
double nearest_rank(const std::vector<double>& sorted, double q);

/// Delta(t) = mean_P(t) - P_meanfield(t) on the ensemble grid.
std::vector<double> closure_gap(const ModelParams& params, const EnsembleStats& stats);

}  // namespace biocell
