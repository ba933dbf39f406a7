#pragma once

#include "biocell/kernels/decay.hpp"
#include "biocell/kinetics.hpp"
#include "biocell/params.hpp"
#include "biocell/trajectory.hpp"

#include <cstdint>
#include <optional>

namespace biocell {

/// Drives the impulsive dynamics shared by both engines: S jumps by
/// `jump(step)` at every step k with k % steps_per_interval == 0, k > 0, and
/// decays by clamped RK4 otherwise. Points are emitted every dt; the value at
/// an impulse step is the post-impulse state.
template <class JumpFn>
Trajectory integrate_impulsive(const ModelParams& params, JumpFn&& jump) {
    const kernels::StepSize h(params.dt());
    const double v_max = params.V_max();
    const double k_m = params.K_m();
    const double p_max = params.P_max();
    const std::int64_t steps = params.total_steps();

    Trajectory traj;
    traj.params_digest = params.digest();
    traj.points.reserve(static_cast<std::size_t>(steps) + 1);
    traj.injections.reserve(static_cast<std::size_t>(steps / params.steps_per_interval()));

    auto emit = [&](std::int64_t k, double s) {
        traj.points.push_back({params.time_at(k), s, v_max * s / (k_m + s), p_max * s / (k_m + s)});
    };

    double s = params.s0();
    emit(0, s);
    for (std::int64_t k = 1; k <= steps; ++k) {
        s = kernels::rk4_step(s, h, v_max, k_m);
        if (params.is_impulse_step(k)) {
            const double amount = jump(k);
            s += amount;
            traj.injections.push_back({k, amount});
        }
        emit(k, s);
    }
    return traj;
}

/// Expected-value dynamics: every impulse adds n*g_i*p.
Trajectory integrate_mean_field(const ModelParams& params);

enum class Regime { bounded, saturating };

struct SteadyState {
    Regime regime = Regime::bounded;
    std::optional<double> S_star;  // uM, bounded regime only
    double P_star = 0.0;           // mW/cm^2 (asymptote P_max when saturating)
    double r = 0.0;                // mean influx rate, uM/s
};

/// Closed-form equilibrium: consumption balances the mean influx r = n*g_i*p/T_i.
SteadyState steady_state(const ModelParams& params);

const char* regime_name(Regime regime);

/// First emitted time at which the mean-field power reaches fraction*P_star.
/// Returns nullopt when the threshold is never reached within t_end (including
/// P_star == 0). Throws DomainError in the saturating regime and
/// ValidationError for fraction outside (0, 1).
std::optional<double> time_to_fraction(const ModelParams& params, double fraction);
std::optional<double> time_to_fraction(const ModelParams& params, const Trajectory& traj,
                                       double fraction);

/// Time-average of P over emitted steps [step_from, step_to], trapezoidal, with
/// the pre-impulse value used on the left side of every jump.
double average_power(const ModelParams& params, const Trajectory& traj, std::int64_t step_from,
                     std::int64_t step_to);

/// Average of P over the last `periods` whole signalling intervals ending at the
/// last impulse step at or before t_end. Falls back to the full horizon when
/// fewer intervals fit.
double terminal_period_power(const ModelParams& params, const Trajectory& traj, int periods = 1);

}  // namespace biocell
