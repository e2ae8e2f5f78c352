#include "oracle_values.hpp"
#include "support.hpp"

#include "tstab/simulator.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

using namespace tstab;
using Catch::Matchers::WithinAbs;

namespace {

Scenario wscc() { return load_scenario(support::data("wscc9.json")); }
Scenario smib() { return load_scenario(support::data("smib.json")); }

double terminal_error(const Scenario& sc, const Trajectory& ref) {
    const Trajectory tr = simulate(sc);
    const Index k = tr.samples() - 1;
    const Index kr = ref.samples() - 1;
    double err = (tr.angles.row(k) - ref.angles.row(kr)).cwiseAbs().maxCoeff();
    err = std::max(err, (tr.speeds.row(k) - ref.speeds.row(kr)).cwiseAbs().maxCoeff());
    return err;
}

}  // namespace

TEST_CASE("undisturbed system stays at its equilibrium", "[simulate]") {
    Scenario sc = wscc();
    sc.model.during_fault = sc.model.pre_fault;
    sc.model.post_fault = sc.model.pre_fault;
    const Trajectory tr = simulate(sc);
    const Vector sep = initial_state_angles(sc);
    for (Index k = 0; k < tr.samples(); ++k) {
        CHECK((tr.angles.row(k).transpose() - sep).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK(tr.speeds.row(k).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("sample grid and network switching", "[simulate]") {
    const Scenario sc = wscc();
    const Trajectory tr = simulate(sc);
    CHECK(tr.samples() == sc.steps() + 1);
    CHECK(tr.clear_index == 100);
    CHECK(tr.stage_at(99) == Stage::DuringFault);
    CHECK(tr.stage_at(100) == Stage::PostFault);
    CHECK(tr.times[1000] == 1000 * sc.dt);
    CHECK(tr.speeds.row(0).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("WSCC 9-bus checkpoints agree with the high-order reference", "[simulate][wscc]") {
    const Trajectory tr = simulate(wscc());
    const std::pair<Index, const std::array<double, 6>*> points[] = {
        {500, &oracle::kStateT05}, {1000, &oracle::kStateT1}, {2000, &oracle::kStateT2}};
    for (const auto& [k, ref] : points) {
        for (Index i = 0; i < 3; ++i) {
            CHECK_THAT(tr.angles(k, i), WithinAbs((*ref)[static_cast<std::size_t>(i)], 1e-5));
            CHECK_THAT(tr.speeds(k, i), WithinAbs((*ref)[static_cast<std::size_t>(3 + i)], 1e-5));
        }
    }
}

TEST_CASE("RK4 error falls by about 16 when dt halves", "[simulate][order]") {
    const Scenario sc = wscc();
    const Trajectory ref = simulate(with_dt(sc, 1e-4));
    const double e2 = terminal_error(with_dt(sc, 2e-3), ref);
    const double e1 = terminal_error(with_dt(sc, 1e-3), ref);
    const double ratio = e2 / e1;
    INFO("error 2 ms " << e2 << ", 1 ms " << e1 << ", ratio " << ratio);
    CHECK(ratio >= 12.0);
    CHECK(ratio <= 20.0);
}

TEST_CASE("two-machine first swing on either side of the equal-area time", "[simulate][eac]") {
    const Scenario base = smib();
    const double dt = base.dt;
    const double below = std::floor(oracle::kSmibCct / dt - 2.0) * dt;
    const double above = std::ceil(oracle::kSmibCct / dt + 2.0) * dt;

    const Trajectory stable = simulate(with_clear_time(base, below));
    const Vector rel_s = stable.angles.col(0) - stable.angles.col(1);
    const double delta_max = std::numbers::pi - std::asin(0.8 / 1.5);
    CHECK(rel_s.maxCoeff() < delta_max);
    CHECK_FALSE(is_separated(stable));

    const Trajectory unstable = simulate(with_clear_time(base, above));
    const Vector rel_u = unstable.angles.col(0) - unstable.angles.col(1);
    CHECK(is_separated(unstable));
    // once past the critical angle the relative angle never turns back
    Index start = unstable.clear_index;
    while (rel_u[start] < oracle::kSmibCriticalAngle) ++start;
    for (Index k = start + 1; k < unstable.samples(); ++k) CHECK(rel_u[k] > rel_u[k - 1]);
}

TEST_CASE("two-machine critical clearing matches equal area", "[cct][eac]") {
    const Scenario sc = smib();
    const CriticalClearing cc = find_critical_clearing(sc, sc.dt);
    INFO("found " << cc.time << ", analytic " << oracle::kSmibCct);
    CHECK(std::abs(cc.time - oracle::kSmibCct) <= 2 * sc.dt);
    CHECK(cc.unstable_time - cc.stable_time <= sc.dt + 1e-12);
}

TEST_CASE("WSCC 9-bus critical clearing brackets the fine-scan value", "[cct][wscc]") {
    const Scenario sc = wscc();
    const CriticalClearing cc = find_critical_clearing(sc, sc.dt);
    CHECK(cc.stable_time <= oracle::kWsccCctHigh + sc.dt);
    CHECK(cc.unstable_time >= oracle::kWsccCctLow - sc.dt);
    CHECK_THAT(cc.time, WithinAbs(0.5 * (oracle::kWsccCctLow + oracle::kWsccCctHigh), sc.dt));
}

TEST_CASE("critical clearing needs a stable lower bracket", "[cct]") {
    Scenario sc = smib();
    sc.model.post_fault.susceptance << -0.5, 0.5, 0.5, -0.5;  // below P_m: no post-fault equilibrium
    CHECK_THROWS_AS(find_critical_clearing(sc, sc.dt), Error);
}

TEST_CASE("scenario timing must lie on the step grid", "[scenario]") {
    const Scenario sc = wscc();
    CHECK_THROWS_AS(with_clear_time(sc, 0.1005), ValidationError);
    CHECK_THROWS_AS(with_dt(sc, 0.003), ValidationError);
    CHECK_NOTHROW(with_dt(sc, 0.002));
}

TEST_CASE("angle spread drives the separation verdict", "[simulate]") {
    Trajectory tr;
    tr.times = Vector::LinSpaced(3, 0.0, 0.2);
    tr.angles = Matrix::Zero(3, 2);
    tr.speeds = Matrix::Zero(3, 2);
    tr.angles(2, 0) = 2 * std::numbers::pi + 0.01;
    CHECK(max_angle_spread(tr) == tr.angles(2, 0));
    CHECK(is_separated(tr));
    tr.angles(2, 0) = 6.0;
    CHECK_FALSE(is_separated(tr));
}
