#include "biocell/kernels/decay.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <bit>
#include <cstring>
#include <random>
#include <vector>

using namespace biocell::kernels;

namespace {

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

struct Batch {
    std::vector<double> s, v_max, k_m;
};

Batch random_batch(std::mt19937_64& rng, std::size_t count) {
    std::uniform_real_distribution<double> unit(0, 1);
    Batch b;
    for (std::size_t j = 0; j < count; ++j) {
        const double pick = unit(rng);
        double s;
        if (pick < 0.1) s = 0.0;
        else if (pick < 0.2) s = 1e-300 * unit(rng);
        else if (pick < 0.3) s = 1e6 * unit(rng);
        else s = 100 * unit(rng);
        b.s.push_back(s);
        b.v_max.push_back(0.001 + 5 * unit(rng));
        b.k_m.push_back(0.01 + 200 * unit(rng));
    }
    return b;
}

}  // namespace

TEST_CASE("rk4_step clamps at zero and keeps zero fixed") {
    const StepSize h(0.1);
    CHECK(rk4_step(0.0, h, 0.25, 30) == 0.0);
    CHECK_FALSE(std::signbit(rk4_step(0.0, h, 0.25, 30)));
    // huge step relative to K_m overshoots below zero without the clamp
    const StepSize big(1000.0);
    CHECK(rk4_step(1e-3, big, 10.0, 1e-3) == 0.0);
}

TEST_CASE("scalar kernel matches the closed-form implicit solution to 4th order") {
    const double v_max = 0.25, k_m = 30.0, s0 = 80.0, horizon = 600.0;
    const double exact = oracle::decay_exact(s0, v_max, k_m, horizon);
    double errors[3];
    int i = 0;
    for (double dt : {1.0, 0.5, 0.25}) {
        std::vector<double> s{s0}, vm{v_max}, km{k_m};
        advance_scalar(s, vm, km, StepSize(dt), static_cast<std::size_t>(horizon / dt));
        errors[i++] = std::abs(s[0] - exact);
    }
    CHECK(errors[0] < 1e-8);
    // halving dt shrinks the error by ~2^4
    CHECK(errors[0] / errors[1] == doctest::Approx(16.0).epsilon(0.1));
    CHECK(errors[1] / errors[2] == doctest::Approx(16.0).epsilon(0.1));

    std::vector<double> s{s0}, vm{v_max}, km{k_m};
    advance_scalar(s, vm, km, StepSize(0.1), 6000);
    CHECK(s[0] == doctest::Approx(exact).epsilon(1e-12));
}

TEST_CASE("advance composes: k1 + k2 steps equal k1 then k2") {
    std::mt19937_64 rng(11);
    auto b = random_batch(rng, 13);
    auto c = b;
    advance_scalar(b.s, b.v_max, b.k_m, StepSize(0.1), 250);
    advance_scalar(c.s, c.v_max, c.k_m, StepSize(0.1), 100);
    advance_scalar(c.s, c.v_max, c.k_m, StepSize(0.1), 150);
    CHECK(same_bits(b.s, c.s));
}

TEST_CASE("dispatch reports and honours the selected variant") {
    const Isa detected = detected_isa();
    INFO("detected " << isa_name(detected));
    set_active_isa(Isa::scalar);
    CHECK(active_isa() == Isa::scalar);
    set_active_isa(Isa::avx2);
    CHECK(active_isa() == detected);
    set_active_isa(detected);
}

#if defined(BIOCELL_HAVE_AVX2)
TEST_CASE("AVX2 kernel is bit-identical to the scalar reference") {
    if (detected_isa() != Isa::avx2) {
        MESSAGE("CPU lacks AVX2; equivalence not exercised");
        return;
    }
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<std::size_t> count_dist(0, 37);
    std::uniform_int_distribution<std::size_t> steps_dist(0, 900);
    std::uniform_real_distribution<double> dt_dist(0.001, 2.0);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t count = count_dist(rng);
        auto ref = random_batch(rng, count);
        auto vec = ref;
        const StepSize h(trial % 3 == 0 ? 0.1 : dt_dist(rng));
        const std::size_t steps = steps_dist(rng);
        advance_scalar(ref.s, ref.v_max, ref.k_m, h, steps);
        advance_avx2(vec.s, vec.v_max, vec.k_m, h, steps);
        REQUIRE(same_bits(ref.s, vec.s));
    }
}

TEST_CASE("dispatched advance equals scalar whichever variant is active") {
    std::mt19937_64 rng(5);
    auto base = random_batch(rng, 67);
    for (Isa isa : {Isa::scalar, Isa::avx2}) {
        set_active_isa(isa);
        auto ref = base, got = base;
        advance_scalar(ref.s, ref.v_max, ref.k_m, StepSize(0.1), 600);
        advance(got.s, got.v_max, got.k_m, StepSize(0.1), 600);
        CHECK(same_bits(ref.s, got.s));
    }
    set_active_isa(detected_isa());
}
#endif
