#pragma once

#include <cstdint>

namespace biocell {

/// Saturation factor S/(K_m+S) shared by the consumption rate and the power map.
double saturation(double s, double k_m);

/// Michaelis-Menten consumption rate V_max*S/(K_m+S) in uM/s.
/// Throws ValidationError for S < 0 or non-positive constants.
double mm_rate(double s, double v_max, double k_m);

/// Power density P_max*S/(K_m+S) in mW/cm^2.
double power_density(double s, double p_max, double k_m);

/// Mean glucose injected per signalling interval, n*g_i*p (uM).
double expected_influx(std::int64_t n, double g_i, double p);

}  // namespace biocell
