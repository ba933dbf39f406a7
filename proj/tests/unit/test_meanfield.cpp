#include "biocell/meanfield.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <random>

using namespace biocell;

namespace {

ParamSet reference_setting() {
    ParamSet v;
    v.n = 1;
    v.g_i = 10;
    v.p = 0.5;
    v.T_i = 60;
    v.V_max = 0.25;
    v.K_m = 30;
    v.P_max = 1;
    v.s0 = 0;
    v.t_end = 18000;
    v.dt = 0.1;
    return v;
}

}  // namespace

TEST_CASE("no influx and no substrate stays at zero") {
    auto v = reference_setting();
    v.p = 0;
    const auto traj = integrate_mean_field(ModelParams(v));
    REQUIRE(traj.points.size() == 180001);
    for (const auto& pt : traj.points) {
        CHECK(pt.S == 0.0);
        CHECK(pt.P == 0.0);
    }
}

TEST_CASE("trajectory layout: time grid, impulse schedule, derived columns") {
    const ModelParams params(reference_setting());
    const auto traj = integrate_mean_field(params);
    REQUIRE(traj.points.size() == 180001);
    CHECK(traj.points.front().t == 0.0);
    CHECK(traj.points.back().t == doctest::Approx(18000.0).epsilon(1e-15));
    CHECK(traj.kind == EngineKind::mean_field);
    CHECK(traj.kind_label() == "mean-field");
    CHECK(traj.params_digest == params.digest());
    REQUIRE(traj.injections.size() == 300);
    CHECK(traj.injections.front().step == 600);
    CHECK(traj.injections.back().step == 180000);
    // nothing before the first interval, jump of n*g_i*p at t = T_i
    CHECK(traj.points[599].S == 0.0);
    CHECK(traj.points[600].S == 5.0);
    for (std::size_t k = 1; k < traj.points.size(); ++k) {
        const auto& pt = traj.points[k];
        CHECK(pt.t > traj.points[k - 1].t);
        CHECK(pt.S >= 0.0);
        CHECK(pt.V == params.V_max() * pt.S / (params.K_m() + pt.S));
        CHECK(pt.P == params.P_max() * pt.S / (params.K_m() + pt.S));
        CHECK(pt.P < params.P_max());
    }
}

TEST_CASE("steady_state examples") {
    const ModelParams params(reference_setting());
    const SteadyState ss = steady_state(params);
    CHECK(ss.regime == Regime::bounded);
    CHECK(ss.r == doctest::Approx(1.0 / 12.0).epsilon(1e-15));
    REQUIRE(ss.S_star);
    CHECK(*ss.S_star == doctest::Approx(15.0).epsilon(1e-14));
    CHECK(ss.P_star == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

    const SteadyState none = steady_state(params.with("p", 0));
    CHECK(none.regime == Regime::bounded);
    CHECK(*none.S_star == 0.0);
    CHECK(none.P_star == 0.0);

    auto low = reference_setting();
    low.g_i = 0.5;
    low.p = 1;
    // r/V_max = (0.5/60)/0.25
    CHECK(steady_state(ModelParams(low)).P_star == doctest::Approx(0.5 / 60 / 0.25).epsilon(1e-14));
    CHECK(steady_state(ModelParams(low)).P_star == doctest::Approx(0.0333).epsilon(1e-3));

    auto sat = reference_setting();
    sat.n = 100;
    sat.p = 0.9;
    const SteadyState s = steady_state(ModelParams(sat));
    CHECK(s.regime == Regime::saturating);
    CHECK_FALSE(s.S_star);
    CHECK(s.P_star == 1.0);
    CHECK(s.r == doctest::Approx(15.0).epsilon(1e-14));
}

TEST_CASE("steady_state agrees with the independent algebra") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 500; ++i) {
        const ModelParams params(oracle::random_params(rng));
        const auto ref = oracle::equilibrium(params.n(), params.g_i(), params.p(), params.T_i(), params.V_max(),
                                             params.K_m(), params.P_max());
        const auto ss = steady_state(params);
        CHECK(ss.r == doctest::Approx(ref.r).epsilon(1e-14));
        CHECK((ss.regime == Regime::bounded) == ref.bounded);
        CHECK(ss.P_star == doctest::Approx(ref.p_star).epsilon(1e-13));
        if (ref.bounded) CHECK(*ss.S_star == doctest::Approx(ref.s_star).epsilon(1e-12));
    }
}

TEST_CASE("reference setting: terminal interval power is P* within 2%; long horizon within 1e-3") {
    const ModelParams params(reference_setting());
    const auto traj = integrate_mean_field(params);
    CHECK(std::abs(terminal_period_power(params, traj) - 1.0 / 3.0) < 0.02 / 3.0);

    auto v = reference_setting();
    v.t_end = 1e5;
    const ModelParams long_params(v);
    const auto long_traj = integrate_mean_field(long_params);
    const auto from = static_cast<std::int64_t>(0.9e5 / 0.1);
    const auto to = long_params.total_steps() / 600 * 600;
    CHECK(std::abs(average_power(long_params, long_traj, from, to) - 1.0 / 3.0) < 1e-3);
}

TEST_CASE("saturating regime grows without bound and power approaches P_max") {
    auto v = reference_setting();
    v.n = 100;
    v.p = 0.9;
    const ModelParams params(v);
    const auto traj = integrate_mean_field(params);
    const auto& end = traj.points.back();
    const auto& mid = traj.points[traj.points.size() / 2];
    CHECK(end.S > mid.S);
    CHECK(end.P > mid.P);
    CHECK(end.P < 1.0);
    CHECK(end.P > 0.999);
    // sampled at impulse boundaries the power never decreases
    double prev = -1;
    for (std::size_t k = 600; k < traj.points.size(); k += 600) {
        CHECK(traj.points[k].P >= prev);
        prev = traj.points[k].P;
    }
    CHECK_THROWS_AS(time_to_fraction(params, 0.5), DomainError);
}

TEST_CASE("inter-impulse decay matches the implicit closed form") {
    auto v = reference_setting();
    v.p = 0;
    v.s0 = 120;
    v.t_end = 3600;
    const ModelParams params(v);
    const auto traj = integrate_mean_field(params);
    for (std::size_t k = 0; k < traj.points.size(); k += 1200) {
        const double exact = oracle::decay_exact(120, 0.25, 30, traj.points[k].t);
        CHECK(traj.points[k].S == doctest::Approx(exact).epsilon(1e-11));
    }
    for (std::size_t k = 1; k < traj.points.size(); ++k) CHECK(traj.points[k].S < traj.points[k - 1].S);
}

TEST_CASE("time_to_fraction") {
    const ModelParams params(reference_setting());
    const auto t_small = time_to_fraction(params, 1e-9);
    REQUIRE(t_small);
    CHECK(*t_small == 60.0);

    const auto t95 = time_to_fraction(params, 0.95);
    REQUIRE(t95);
    CHECK(*t95 < 18000.0);
    CHECK(*t95 >= 60.0);
    // brute-force scan of the emitted trajectory
    const auto traj = integrate_mean_field(params);
    double first = -1;
    for (const auto& pt : traj.points) {
        if (pt.P >= 0.95 / 3.0) { first = pt.t; break; }
    }
    CHECK(*t95 == first);

    CHECK_FALSE(time_to_fraction(params.with("p", 0), 0.5));
    CHECK_FALSE(time_to_fraction(params.with("p", 0).with("s0", 10), 0.5));
    CHECK_FALSE(time_to_fraction(params.with("t_end", 30), 0.5));
    CHECK_THROWS_AS(time_to_fraction(params, 0.0), ValidationError);
    CHECK_THROWS_AS(time_to_fraction(params, 1.0), ValidationError);
}

TEST_CASE("mass conservation within 1e-6 relative per simulated hour") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 25; ++i) {
        auto v = oracle::random_params(rng, 7200);
        const ModelParams params(v);
        const auto traj = integrate_mean_field(params);
        for (std::size_t upto : {std::size_t{36000}, std::size_t{72000}}) {
            const auto bal = oracle::mass_balance(params, traj, upto);
            const double hours = traj.points[upto].t / 3600.0;
            const double scale = std::max(bal.throughput, 1e-12);
            INFO("params " << params.digest() << " upto " << upto);
            CHECK(std::abs(bal.residual) / scale <= 1e-6 * hours);
        }
    }
}

TEST_CASE("halving dt changes S(t_end) by less than 1e-8 relative") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 10; ++i) {
        auto v = oracle::random_params(rng, 3600);
        v.s0 = std::max(v.s0, 1.0);
        const auto coarse = integrate_mean_field(ModelParams(v));
        v.dt = 0.05;
        const auto fine = integrate_mean_field(ModelParams(v));
        const double a = coarse.points.back().S;
        const double b = fine.points.back().S;
        INFO("S coarse " << a << " fine " << b);
        CHECK(std::abs(a - b) <= 1e-8 * std::abs(b));
    }
}

TEST_CASE("period-averaged power converges to P* for bounded regimes with r <= 0.9 V_max") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unit(0, 1);
    int checked = 0;
    while (checked < 12) {
        auto v = oracle::random_params(rng);
        v.dt = 0.5;
        v.T_i = 0.5 * (1 + static_cast<int>(unit(rng) * 60));
        const double r = static_cast<double>(v.n) * v.g_i * v.p / v.T_i;
        if (r > 0.9 * v.V_max) continue;
        const double horizon = 20 * v.K_m / (v.V_max - r);
        if (horizon > 2e5) continue;
        v.t_end = std::ceil(horizon / v.T_i) * v.T_i * 1.0;
        const ModelParams params(v);
        const auto traj = integrate_mean_field(params);
        const std::int64_t spi = params.steps_per_interval();
        const std::int64_t last = params.total_steps() / spi * spi;
        std::int64_t periods = std::max<std::int64_t>(1, last / 10 / spi);
        const double avg = average_power(params, traj, last - periods * spi, last);
        const double p_star = steady_state(params).P_star;
        INFO("r=" << r << " V_max=" << v.V_max << " horizon=" << horizon);
        CHECK(std::abs(avg - p_star) <= 1e-3 * v.P_max);
        ++checked;
    }
}

TEST_CASE("P* is monotone in p, n, g_i (increasing) and T_i (decreasing) in the bounded regime") {
    const ModelParams base(reference_setting());
    double prev = -1;
    for (int i = 0; i <= 20; ++i) {
        const double now = steady_state(base.with("p", i / 20.0)).P_star;
        CHECK(now > prev);
        prev = now;
    }
    prev = -1;
    for (int n = 0; n <= 2; ++n) {
        const double now = steady_state(base.with("n", n)).P_star;
        CHECK(now > prev);
        prev = now;
    }
    prev = -1;
    for (double g : {0.0, 0.1, 1.0, 5.0, 10.0, 20.0, 29.0}) {
        const double now = steady_state(base.with("g_i", g)).P_star;
        CHECK(now > prev);
        prev = now;
    }
    prev = 2;
    for (double t : {30.0, 60.0, 120.0, 600.0}) {
        const double now = steady_state(base.with("T_i", t)).P_star;
        CHECK(now < prev);
        prev = now;
    }
}

TEST_CASE("average_power handles single-point and whole-horizon spans") {
    const ModelParams params(reference_setting());
    const auto traj = integrate_mean_field(params);
    CHECK(average_power(params, traj, 700, 700) == traj.points[700].P);
    // piecewise-constant zero before the first impulse
    CHECK(average_power(params, traj, 0, 599) == 0.0);
    const double whole = average_power(params, traj, 0, params.total_steps());
    CHECK(whole > 0.0);
    CHECK(whole < 1.0 / 3.0);
}
