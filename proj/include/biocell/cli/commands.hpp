#pragma once

#include "biocell/cli/config.hpp"
#include "biocell/compare.hpp"
#include "biocell/montecarlo.hpp"
#include "biocell/sweep.hpp"
#include "biocell/trajectory.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace biocell::cli {

inline constexpr const char* kTrajectoryHeader = "t_s,S_uM,V_uM_per_s,P_mW_cm2";
inline constexpr const char* kEnsembleHeader = "t_s,mean_P,std_P,q05_P,q50_P,q95_P,mean_S_uM";
inline constexpr const char* kSweepHeader = "y_name,y_value,x_name,x_value,power_mw_cm2";

std::string trajectory_csv(const Trajectory& traj);
std::string ensemble_csv(const EnsembleStats& stats);
std::string sweep_csv(const SweepGrid& grid);

struct Outputs {
    std::string csv;
    std::optional<std::string> svg;
};

void cmd_simulate(const RunConfig& config, const Outputs& outputs, std::ostream& report);
void cmd_ensemble(const RunConfig& config, const Outputs& outputs, std::ostream& report);

/// Applies settings in order (later wins) on top of `base` model parameters.
RunConfig make_config(const std::vector<Setting>& settings, const ParamSet& base = ParamSet{});

/// Either a named preset or both explicit axes. With a preset, the preset's
/// parameters form the base and `settings` are applied over them.
struct SweepRequest {
    std::optional<std::string> preset;
    std::optional<std::string> x_axis;
    std::optional<std::string> y_axis;
};
SweepSpec build_sweep_spec(const std::vector<Setting>& settings, const SweepRequest& request);
void cmd_sweep(const SweepSpec& spec, const Outputs& outputs, std::ostream& report);

/// Steady-state report; `fraction` adds the mean-field time to reach it.
void cmd_steady(const RunConfig& config, std::optional<double> fraction, const std::optional<std::string>& out,
                std::ostream& report);

struct CompareRequest {
    std::vector<std::string> inputs;
    bool include_builtin = true;
    std::optional<std::string> records_out;
};
void cmd_compare(const CompareRequest& request, const Outputs& outputs, std::ostream& report);

/// Entry point shared by the executable and the tests. args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace biocell::cli
