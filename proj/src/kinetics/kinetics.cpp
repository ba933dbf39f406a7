#include "biocell/kinetics.hpp"

#include "biocell/params.hpp"

#include <cmath>

namespace biocell {

namespace {

void check_substrate(double s) {
    if (!(s >= 0.0) || std::isinf(s)) throw ValidationError("S", "must be finite and >= 0");
}

void check_constant(double value, const char* field) {
    if (!(value > 0.0) || !std::isfinite(value)) throw ValidationError(field, "must be finite and > 0");
}

}  // namespace

double saturation(double s, double k_m) {
    return s / (k_m + s);
}

double mm_rate(double s, double v_max, double k_m) {
    check_substrate(s);
    check_constant(v_max, "V_max");
    check_constant(k_m, "K_m");
    return v_max * s / (k_m + s);
}

double power_density(double s, double p_max, double k_m) {
    check_substrate(s);
    check_constant(p_max, "P_max");
    check_constant(k_m, "K_m");
    return p_max * s / (k_m + s);
}

double expected_influx(std::int64_t n, double g_i, double p) {
    if (n < 0) throw ValidationError("n", "must be >= 0");
    if (!(g_i >= 0.0)) throw ValidationError("g_i", "must be >= 0");
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("p", "must lie in [0, 1]");
    return static_cast<double>(n) * g_i * p;
}

}  // namespace biocell
