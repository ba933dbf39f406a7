#include "biocell/kernels/decay.hpp"

#include <cassert>

namespace biocell::kernels {

void advance_scalar(std::span<double> states, std::span<const double> v_max,
                    std::span<const double> k_m, const StepSize& h, std::size_t steps) {
    assert(states.size() == v_max.size() && states.size() == k_m.size());
    for (std::size_t j = 0; j < states.size(); ++j) {
        double s = states[j];
        const double vm = v_max[j];
        const double km = k_m[j];
        for (std::size_t k = 0; k < steps; ++k) s = rk4_step(s, h, vm, km);
        states[j] = s;
    }
}

}  // namespace biocell::kernels
