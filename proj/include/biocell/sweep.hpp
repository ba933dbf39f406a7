#pragma once

#include "biocell/params.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace biocell {

struct Axis {
    std::string name;  // one of p, n, g_i, T_i, V_max, K_m, s0
    std::vector<double> values;
};

enum class SweepEngine { mean_field, monte_carlo };

struct SweepSpec {
    Axis x;
    Axis y;
    ParamSet base;
    double eval_time = 18000.0;  // s
    SweepEngine engine = SweepEngine::mean_field;
    std::size_t num_runs = 1000;    // monte_carlo only
    std::uint64_t master_seed = 0;  // monte_carlo only
    unsigned threads = 0;
};

struct SweepGrid {
    SweepSpec spec;
    std::vector<double> values;  // P at eval_time, row-major by (y, x)

    std::size_t rows() const { return spec.y.values.size(); }
    std::size_t cols() const { return spec.x.values.size(); }
    double at(std::size_t row, std::size_t col) const { return values[row * cols() + col]; }
};

/// A cell whose substituted parameters fail validation. Carries the grid
/// coordinates of the first offending cell in row-major order.
class SweepCellError : public ValidationError {
public:
    SweepCellError(std::size_t row, std::size_t col, const std::string& coordinates,
                   const ValidationError& cause)
        : ValidationError(cause.field(), std::string("cell ") + coordinates + ": " + cause.what()),
          row_(row), col_(col) {}

    std::size_t row() const noexcept { return row_; }
    std::size_t col() const noexcept { return col_; }

private:
    std::size_t row_, col_;
};

bool is_sweep_axis(std::string_view name);

/// Validated parameters of cell (row, col): base with t_end = eval_time and both
/// axis values substituted.
ModelParams cell_params(const SweepSpec& spec, std::size_t row, std::size_t col);

/// Evaluates every cell with the selected engine. Monte Carlo cells use master
/// seed derive_seed(master_seed, row*cols + col). Deterministic for any thread count.
SweepGrid run_sweep(const SweepSpec& spec);

/// Named presets at t = 5 h with the default constants (P_max = 1, V_max = 0.25, K_m = 30).
///  fig5a: x = p in 0..1 step 0.05, y = n in 1..50;  g_i = 1 uM, T_i = 60 s
///  fig5b: x = p, y = g_i in {0.1, 0.5, 1.0, 1.5, ..., 20} uM;  T_i = 60 s, n = 1
///  fig5c: x = p, y = T_i = divisors of 18000 in [10, 600] s;  g_i = 10 uM, n = 1
SweepSpec preset(std::string_view name);
std::vector<std::string_view> preset_names();

std::vector<double> probability_axis();

}  // namespace biocell
