#pragma once

#include "biocell/params.hpp"
#include "biocell/sweep.hpp"

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace biocell::cli {

enum class Engine { mean_field, monte_carlo };

/// Everything a command needs besides its output paths. Built from, in
/// increasing precedence: built-in defaults, a config file, command-line flags.
struct RunConfig {
    ParamSet params;
    Engine engine = Engine::mean_field;
    std::optional<std::uint64_t> seed;
    std::size_t runs = 1000;
    std::int64_t stride = 600;
    unsigned threads = 0;
    double eval_time = 18000.0;
};

/// A config key and its textual value, in config-file spelling.
struct Setting {
    std::string key;
    std::string value;
};

/// Keys accepted in a config file: the model parameters (n, g_i, p, T_i, V_max,
/// K_m, P_max, s0, t_end, dt) plus engine, seed, runs, stride, threads, eval_time.
/// Format: one "key = value" per line; '#' starts a comment. Unknown keys,
/// duplicate keys and unparsable values raise ValidationError naming the key.
void apply_config(RunConfig& config, std::istream& in);

/// Parses a config file into settings without applying them; keys are checked.
std::vector<Setting> read_settings(std::istream& in);
std::vector<Setting> read_settings_file(const std::string& path);

/// Sets one key (config-file spelling) from its textual value.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

Engine parse_engine(const std::string& text);
const char* engine_name(Engine engine);

/// "name=v1,v2,..." or "name=start:stop:step" (inclusive of stop).
Axis parse_axis(const std::string& text);

/// Monte Carlo requires an explicit seed; raises ValidationError("seed", ...) otherwise.
std::uint64_t require_seed(const RunConfig& config);

}  // namespace biocell::cli
