#include "biocell/cli/config.hpp"

#include "biocell/io/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

namespace biocell::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double number(const std::string& key, const std::string& text) {
    auto v = io::parse_double(text);
    if (!v) throw ValidationError(key, "not a number: '" + text + "'");
    return *v;
}

template <class Int>
Int integer(const std::string& key, const std::string& text) {
    Int value{};
    const std::string t = trim(text);
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
        throw ValidationError(key, "not a non-negative integer: '" + text + "'");
    }
    return value;
}

}  // namespace

Engine parse_engine(const std::string& text) {
    if (text == "mean-field") return Engine::mean_field;
    if (text == "monte-carlo") return Engine::monte_carlo;
    throw ValidationError("engine", "expected mean-field or monte-carlo, got '" + text + "'");
}

const char* engine_name(Engine engine) {
    return engine == Engine::mean_field ? "mean-field" : "monte-carlo";
}

void apply_setting(RunConfig& config, const std::string& key, const std::string& value) {
    if (is_param_name(key)) {
        set_param(config.params, key, number(key, value));
    } else if (key == "engine") {
        config.engine = parse_engine(trim(value));
    } else if (key == "seed") {
        config.seed = integer<std::uint64_t>(key, value);
    } else if (key == "runs") {
        config.runs = integer<std::size_t>(key, value);
        if (config.runs < 1) throw ValidationError(key, "must be >= 1");
    } else if (key == "stride") {
        config.stride = integer<std::int64_t>(key, value);
        if (config.stride < 1) throw ValidationError(key, "must be >= 1");
    } else if (key == "threads") {
        config.threads = integer<unsigned>(key, value);
    } else if (key == "eval_time") {
        config.eval_time = number(key, value);
    } else {
        throw ValidationError(key, "unknown configuration key");
    }
}

std::vector<Setting> read_settings(std::istream& in) {
    std::vector<Setting> settings;
    std::set<std::string> seen;
    RunConfig probe;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ValidationError("line " + std::to_string(line_no), "expected 'key = value'");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (!seen.insert(key).second) throw ValidationError(key, "duplicate key");
        apply_setting(probe, key, value);  // rejects unknown keys and bad values early
        settings.push_back({std::move(key), std::move(value)});
    }
    return settings;
}

std::vector<Setting> read_settings_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("config", "cannot open '" + path + "'");
    return read_settings(in);
}

void apply_config(RunConfig& config, std::istream& in) {
    for (const auto& s : read_settings(in)) apply_setting(config, s.key, s.value);
}

Axis parse_axis(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ValidationError("axis", "expected name=values in '" + text + "'");
    Axis axis;
    axis.name = trim(text.substr(0, eq));
    if (!is_sweep_axis(axis.name)) {
        throw ValidationError("axis", "'" + axis.name + "' cannot be swept (use p, n, g_i, T_i, V_max, K_m, s0)");
    }
    const std::string body = trim(text.substr(eq + 1));
    if (body.empty()) throw ValidationError("axis", "no values for '" + axis.name + "'");

    if (body.find(':') != std::string::npos) {
        const auto c1 = body.find(':');
        const auto c2 = body.find(':', c1 + 1);
        if (c2 == std::string::npos || body.find(':', c2 + 1) != std::string::npos) {
            throw ValidationError("axis", "range must be start:stop:step in '" + text + "'");
        }
        const double start = number("axis", body.substr(0, c1));
        const double stop = number("axis", body.substr(c1 + 1, c2 - c1 - 1));
        const double step = number("axis", body.substr(c2 + 1));
        if (!(step > 0.0) || stop < start) throw ValidationError("axis", "empty or invalid range in '" + text + "'");
        const auto count = static_cast<std::int64_t>(std::floor((stop - start) / step + 1e-9)) + 1;
        if (count > 1000000) throw ValidationError("axis", "range too long in '" + text + "'");
        for (std::int64_t i = 0; i < count; ++i) axis.values.push_back(start + static_cast<double>(i) * step);
    } else {
        std::size_t pos = 0;
        while (pos <= body.size()) {
            const auto comma = body.find(',', pos);
            const std::string item = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            axis.values.push_back(number("axis", item));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }
    return axis;
}

std::uint64_t require_seed(const RunConfig& config) {
    if (!config.seed) throw ValidationError("seed", "the monte-carlo engine needs an explicit --seed");
    return *config.seed;
}

}  // namespace biocell::cli
