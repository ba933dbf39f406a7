#include "biocell/kernels/decay.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace biocell::kernels {

namespace {

Isa probe() {
#if defined(BIOCELL_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    if (__builtin_cpu_supports("avx2")) return Isa::avx2;
#endif
    return Isa::scalar;
}

Isa initial_choice() {
    const char* force = std::getenv("BIOCELL_FORCE_SCALAR");
    if (force != nullptr && std::strcmp(force, "0") != 0 && *force != '\0') return Isa::scalar;
    return probe();
}

std::atomic<Isa>& active() {
    static std::atomic<Isa> isa{initial_choice()};
    return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) {
    switch (isa) {
        case Isa::avx2: return "avx2";
        case Isa::scalar: return "scalar";
    }
    return "scalar";
}

Isa detected_isa() {
    static const Isa isa = probe();
    return isa;
}

Isa active_isa() { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
    if (isa == Isa::avx2 && detected_isa() != Isa::avx2) isa = Isa::scalar;
    active().store(isa, std::memory_order_relaxed);
}

void advance(std::span<double> states, std::span<const double> v_max,
             std::span<const double> k_m, const StepSize& h, std::size_t steps) {
#if defined(BIOCELL_HAVE_AVX2)
    if (active_isa() == Isa::avx2) {
        advance_avx2(states, v_max, k_m, h, steps);
        return;
    }
#endif
    advance_scalar(states, v_max, k_m, h, steps);
}

}  // namespace biocell::kernels
