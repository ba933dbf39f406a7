#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace biocell {

struct TrajectoryPoint {
    double t;  // s
    double S;  // uM
    double V;  // uM/s
    double P;  // mW/cm^2
};

/// Glucose added at an impulse step. For mean-field runs the amount is the
/// expectation n*g_i*p; for Monte Carlo runs it is the realised draw.
struct Injection {
    std::int64_t step;
    double amount;
};

enum class EngineKind { mean_field, monte_carlo };

struct Trajectory {
    std::vector<TrajectoryPoint> points;  // points[k].t == k*dt; post-impulse at impulse steps
    std::vector<Injection> injections;    // one per impulse step, in time order
    std::string params_digest;
    EngineKind kind = EngineKind::mean_field;
    std::optional<std::uint64_t> seed;  // set iff kind == monte_carlo

    std::string kind_label() const;
};

}  // namespace biocell
