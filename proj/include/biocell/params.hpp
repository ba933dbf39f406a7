#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace biocell {

/// Raised when a parameter record or configuration violates its invariants.
/// The message always names the offending field.
class ValidationError : public std::invalid_argument {
public:
    ValidationError(std::string field, const std::string& what)
        : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Raised when an operation is asked for a quantity that does not exist
/// for the given parameters (e.g. a steady-state fraction in the saturating regime).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Unvalidated parameter values. Units: concentrations in uM, rates in uM/s,
/// power density in mW/cm^2, times in seconds.
struct ParamSet {
    std::int64_t n = 1;     // connected plants
    double g_i = 10.0;      // glucose increment per successful extraction
    double p = 0.5;         // extraction success probability
    double T_i = 60.0;      // signalling interval
    double V_max = 0.25;
    double K_m = 30.0;
    double P_max = 1.0;
    double s0 = 0.0;        // initial anode concentration
    double t_end = 18000.0;
    double dt = 0.1;

    bool operator==(const ParamSet&) const = default;
};

/// Validated model parameters. Construction enforces every invariant, so the
/// engines downstream never re-check.
class ModelParams {
public:
    explicit ModelParams(const ParamSet& values);
    ModelParams() : ModelParams(ParamSet{}) {}

    const ParamSet& values() const noexcept { return v_; }

    std::int64_t n() const noexcept { return v_.n; }
    double g_i() const noexcept { return v_.g_i; }
    double p() const noexcept { return v_.p; }
    double T_i() const noexcept { return v_.T_i; }
    double V_max() const noexcept { return v_.V_max; }
    double K_m() const noexcept { return v_.K_m; }
    double P_max() const noexcept { return v_.P_max; }
    double s0() const noexcept { return v_.s0; }
    double t_end() const noexcept { return v_.t_end; }
    double dt() const noexcept { return v_.dt; }

    /// Integrator steps per signalling interval (T_i / dt, exact).
    std::int64_t steps_per_interval() const noexcept { return steps_per_interval_; }
    /// Total integrator steps; emitted points are t_k = k*dt for k = 0..total_steps().
    std::int64_t total_steps() const noexcept { return total_steps_; }
    double time_at(std::int64_t step) const noexcept { return static_cast<double>(step) * v_.dt; }
    bool is_impulse_step(std::int64_t step) const noexcept {
        return step > 0 && step % steps_per_interval_ == 0;
    }

    /// Stable 16-hex-digit identifier of the parameter values.
    std::string digest() const;

    /// Copy with one named parameter replaced; the result is validated.
    ModelParams with(std::string_view name, double value) const;

private:
    ParamSet v_;
    std::int64_t steps_per_interval_ = 0;
    std::int64_t total_steps_ = 0;
};

/// Assigns a named parameter on a raw ParamSet. Names follow the model symbols:
/// n, g_i, p, T_i, V_max, K_m, P_max, s0, t_end, dt.
void set_param(ParamSet& values, std::string_view name, double value);
double get_param(const ParamSet& values, std::string_view name);
bool is_param_name(std::string_view name);

/// Exact number of steps of size `dt` in `span`, or a ValidationError naming `field`
/// when `span` is not an integer multiple of `dt`.
std::int64_t whole_steps(double span, double dt, const std::string& field);

}  // namespace biocell
