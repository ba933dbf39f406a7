#include "biocell/params.hpp"

#include "biocell/io/csv.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

namespace biocell {

namespace {

void require_finite(double value, const char* field) {
    if (!std::isfinite(value)) throw ValidationError(field, "must be finite");
}

void require_positive(double value, const char* field) {
    require_finite(value, field);
    if (!(value > 0.0)) throw ValidationError(field, "must be > 0");
}

void require_non_negative(double value, const char* field) {
    require_finite(value, field);
    if (value < 0.0) throw ValidationError(field, "must be >= 0");
}

}  // namespace

std::int64_t whole_steps(double span, double dt, const std::string& field) {
    const double ratio = span / dt;
    const double rounded = std::round(ratio);
    // relative slack absorbs decimal representation error (e.g. 0.3 / 0.1)
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, rounded)) {
        throw ValidationError(field, "must be a positive integer multiple of dt");
    }
    return static_cast<std::int64_t>(rounded);
}

ModelParams::ModelParams(const ParamSet& values) : v_(values) {
    if (v_.n < 0) throw ValidationError("n", "must be >= 0");
    require_non_negative(v_.g_i, "g_i");
    require_finite(v_.p, "p");
    if (v_.p < 0.0 || v_.p > 1.0) throw ValidationError("p", "must lie in [0, 1]");
    require_non_negative(v_.s0, "s0");
    require_positive(v_.T_i, "T_i");
    require_positive(v_.V_max, "V_max");
    require_positive(v_.K_m, "K_m");
    require_positive(v_.P_max, "P_max");
    require_positive(v_.t_end, "t_end");
    require_positive(v_.dt, "dt");
    if (v_.dt > v_.T_i) throw ValidationError("dt", "must not exceed T_i");
    steps_per_interval_ = whole_steps(v_.T_i, v_.dt, "T_i");
    total_steps_ = whole_steps(v_.t_end, v_.dt, "t_end");
}

std::string ModelParams::digest() const {
    // FNV-1a over the shortest round-trip decimal form of every field
    std::string canon = std::to_string(v_.n);
    for (double x : {v_.g_i, v_.p, v_.T_i, v_.V_max, v_.K_m, v_.P_max, v_.s0, v_.t_end, v_.dt}) {
        canon += ';';
        canon += io::format_double(x);
    }
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canon) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::array<char, 17> buf{};
    std::snprintf(buf.data(), buf.size(), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf.data());
}

ModelParams ModelParams::with(std::string_view name, double value) const {
    ParamSet copy = v_;
    set_param(copy, name, value);
    return ModelParams(copy);
}

bool is_param_name(std::string_view name) {
    static constexpr std::array<std::string_view, 10> names = {
        "n", "g_i", "p", "T_i", "V_max", "K_m", "P_max", "s0", "t_end", "dt"};
    for (auto candidate : names) {
        if (candidate == name) return true;
    }
    return false;
}

void set_param(ParamSet& values, std::string_view name, double value) {
    if (name == "n") {
        if (!std::isfinite(value) || value != std::floor(value)) {
            throw ValidationError("n", "must be a whole number");
        }
        if (value < 0.0) throw ValidationError("n", "must be >= 0");
        values.n = static_cast<std::int64_t>(value);
    } else if (name == "g_i") {
        values.g_i = value;
    } else if (name == "p") {
        values.p = value;
    } else if (name == "T_i") {
        values.T_i = value;
    } else if (name == "V_max") {
        values.V_max = value;
    } else if (name == "K_m") {
        values.K_m = value;
    } else if (name == "P_max") {
        values.P_max = value;
    } else if (name == "s0") {
        values.s0 = value;
    } else if (name == "t_end") {
        values.t_end = value;
    } else if (name == "dt") {
        values.dt = value;
    } else {
        throw ValidationError(std::string(name), "unknown parameter");
    }
}

double get_param(const ParamSet& values, std::string_view name) {
    if (name == "n") return static_cast<double>(values.n);
    if (name == "g_i") return values.g_i;
    if (name == "p") return values.p;
    if (name == "T_i") return values.T_i;
    if (name == "V_max") return values.V_max;
    if (name == "K_m") return values.K_m;
    if (name == "P_max") return values.P_max;
    if (name == "s0") return values.s0;
    if (name == "t_end") return values.t_end;
    if (name == "dt") return values.dt;
    throw ValidationError(std::string(name), "unknown parameter");
}

}  // namespace biocell
