#include "biocell/meanfield.hpp"

#include <algorithm>
#include <cassert>

namespace biocell {

Trajectory integrate_mean_field(const ModelParams& params) {
    const double amount = expected_influx(params.n(), params.g_i(), params.p());
    Trajectory traj = integrate_impulsive(params, [amount](std::int64_t) { return amount; });
    traj.kind = EngineKind::mean_field;
    return traj;
}

SteadyState steady_state(const ModelParams& params) {
    SteadyState out;
    out.r = expected_influx(params.n(), params.g_i(), params.p()) / params.T_i();
    if (out.r < params.V_max()) {
        out.regime = Regime::bounded;
        out.S_star = params.K_m() * out.r / (params.V_max() - out.r);
        out.P_star = params.P_max() * out.r / params.V_max();
    } else {
        out.regime = Regime::saturating;
        out.P_star = params.P_max();
    }
    return out;
}

const char* regime_name(Regime regime) {
    return regime == Regime::bounded ? "bounded" : "saturating";
}

std::optional<double> time_to_fraction(const ModelParams& params, const Trajectory& traj,
                                       double fraction) {
    if (!(fraction > 0.0 && fraction < 1.0)) {
        throw ValidationError("fraction", "must lie in (0, 1)");
    }
    const SteadyState ss = steady_state(params);
    if (ss.regime == Regime::saturating) {
        throw DomainError("time_to_fraction: saturating regime has no finite steady power");
    }
    if (ss.P_star <= 0.0) return std::nullopt;
    const double threshold = fraction * ss.P_star;
    for (const auto& pt : traj.points) {
        if (pt.P >= threshold) return pt.t;
    }
    return std::nullopt;
}

std::optional<double> time_to_fraction(const ModelParams& params, double fraction) {
    if (!(fraction > 0.0 && fraction < 1.0)) {
        throw ValidationError("fraction", "must lie in (0, 1)");
    }
    if (steady_state(params).regime == Regime::saturating) {
        throw DomainError("time_to_fraction: saturating regime has no finite steady power");
    }
    return time_to_fraction(params, integrate_mean_field(params), fraction);
}

double average_power(const ModelParams& params, const Trajectory& traj, std::int64_t step_from,
                     std::int64_t step_to) {
    const auto& pts = traj.points;
    assert(step_from >= 0 && step_to < static_cast<std::int64_t>(pts.size()));
    if (step_to <= step_from) return pts[static_cast<std::size_t>(step_from)].P;

    auto inj = std::lower_bound(traj.injections.begin(), traj.injections.end(), step_from + 1,
                                [](const Injection& a, std::int64_t k) { return a.step < k; });
    double integral = 0.0;
    for (std::int64_t k = step_from + 1; k <= step_to; ++k) {
        const auto& left = pts[static_cast<std::size_t>(k - 1)];
        const auto& right = pts[static_cast<std::size_t>(k)];
        double right_p = right.P;
        if (inj != traj.injections.end() && inj->step == k) {
            const double s_pre = std::max(right.S - inj->amount, 0.0);
            right_p = params.P_max() * s_pre / (params.K_m() + s_pre);
            ++inj;
        }
        integral += 0.5 * (left.P + right_p) * (right.t - left.t);
    }
    const double span = pts[static_cast<std::size_t>(step_to)].t - pts[static_cast<std::size_t>(step_from)].t;
    return integral / span;
}

double terminal_period_power(const ModelParams& params, const Trajectory& traj, int periods) {
    const std::int64_t spi = params.steps_per_interval();
    const std::int64_t last = params.total_steps() / spi * spi;
    const std::int64_t first = std::max<std::int64_t>(0, last - static_cast<std::int64_t>(periods) * spi);
    if (last == 0) return average_power(params, traj, 0, params.total_steps());
    return average_power(params, traj, first, last);
}

}  // namespace biocell
