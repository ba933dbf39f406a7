#pragma once

// Fixed-step RK4 integration of the inter-impulse consumption ODE
//   dS/dt = -V_max * S / (K_m + S)
// over many independent states at once. The scalar kernel is the reference;
// vector variants must reproduce it bit for bit, which holds as long as no
// variant contracts multiply-add pairs (the build passes -ffp-contract=off and
// never enables FMA for these translation units).

#include <cstddef>
#include <span>
#include <string_view>

namespace biocell::kernels {

/// Step constants shared by every variant so they round identically.
struct StepSize {
    double dt;
    double half;   // dt / 2
    double sixth;  // dt / 6

    explicit StepSize(double h) : dt(h), half(0.5 * h), sixth(h / 6.0) {}
};

inline double consumption(double s, double v_max, double k_m) {
    return -(v_max * s) / (k_m + s);
}

/// One clamped RK4 step. Evaluation order here defines the reference bits.
inline double rk4_step(double s, const StepSize& h, double v_max, double k_m) {
    const double k1 = consumption(s, v_max, k_m);
    const double k2 = consumption(s + h.half * k1, v_max, k_m);
    const double k3 = consumption(s + h.half * k2, v_max, k_m);
    const double k4 = consumption(s + h.dt * k3, v_max, k_m);
    const double next = s + h.sixth * (((k1 + 2.0 * k2) + 2.0 * k3) + k4);
    // also maps -0.0 and NaN to +0.0, matching _mm256_max_pd(next, 0)
    return next > 0.0 ? next : 0.0;
}

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

/// Best variant the running CPU supports (and the binary was built with).
Isa detected_isa();

/// Variant used by advance(). Defaults to detected_isa(); the environment
/// variable BIOCELL_FORCE_SCALAR=1 pins it to the scalar reference.
Isa active_isa();

/// Overrides the dispatch target; requesting an unsupported variant falls back
/// to scalar. Intended for tests and benchmarking.
void set_active_isa(Isa isa);

/// Advances states[j] by `steps` RK4 steps using per-lane constants
/// v_max[j], k_m[j]. All three spans must have equal length.
void advance_scalar(std::span<double> states, std::span<const double> v_max,
                    std::span<const double> k_m, const StepSize& h, std::size_t steps);

#if defined(BIOCELL_HAVE_AVX2)
void advance_avx2(std::span<double> states, std::span<const double> v_max,
                  std::span<const double> k_m, const StepSize& h, std::size_t steps);
#endif

/// Runtime-dispatched advance.
void advance(std::span<double> states, std::span<const double> v_max,
             std::span<const double> k_m, const StepSize& h, std::size_t steps);

}  // namespace biocell::kernels
