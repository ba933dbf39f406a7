#include "biocell/trajectory.hpp"

namespace biocell {

std::string Trajectory::kind_label() const {
    if (kind == EngineKind::mean_field) return "mean-field";
    return "monte-carlo(" + std::to_string(seed.value_or(0)) + ")";
}

}  // namespace biocell
