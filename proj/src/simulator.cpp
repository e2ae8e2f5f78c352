#include "tstab/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tstab {

SwingDerivative swing_derivative(const SystemModel& model, const ReducedNetwork& net, const Vector& angles,
                                 const Vector& speeds) {
    const Vector p = accelerating_power(angles, net, model.machines);
    return SwingDerivative{speeds, p.cwiseQuotient(model.inertias())};
}

Vector initial_state_angles(const Scenario& sc) {
    return sep_solve(sc.model.pre_fault, sc.model.machines, sc.initial_angles).angles;
}

namespace {

struct State {
    Vector angles;
    Vector speeds;
};

State rk4_step(const SystemModel& model, const ReducedNetwork& net, const State& s, double h) {
    const auto k1 = swing_derivative(model, net, s.angles, s.speeds);
    const auto k2 = swing_derivative(model, net, s.angles + 0.5 * h * k1.angle_rate, s.speeds + 0.5 * h * k1.speed_rate);
    const auto k3 = swing_derivative(model, net, s.angles + 0.5 * h * k2.angle_rate, s.speeds + 0.5 * h * k2.speed_rate);
    const auto k4 = swing_derivative(model, net, s.angles + h * k3.angle_rate, s.speeds + h * k3.speed_rate);
    return State{
        s.angles + (h / 6.0) * (k1.angle_rate + 2.0 * k2.angle_rate + 2.0 * k3.angle_rate + k4.angle_rate),
        s.speeds + (h / 6.0) * (k1.speed_rate + 2.0 * k2.speed_rate + 2.0 * k3.speed_rate + k4.speed_rate)};
}

}  // namespace

Trajectory simulate(const Scenario& sc) {
    validate(sc);
    const Index n = sc.model.size();
    const Index steps = sc.steps();

    Trajectory traj;
    traj.dt = sc.dt;
    traj.clear_index = sc.clear_index();
    traj.times.resize(steps + 1);
    traj.angles.resize(steps + 1, n);
    traj.speeds.resize(steps + 1, n);

    State s{initial_state_angles(sc), Vector::Zero(n)};
    for (Index k = 0; k <= steps; ++k) {
        traj.times[k] = static_cast<double>(k) * sc.dt;
        traj.angles.row(k) = s.angles.transpose();
        traj.speeds.row(k) = s.speeds.transpose();
        if (k == steps) break;
        // Interval [k, k+1] lies entirely on one side of the switch.
        const ReducedNetwork& net = k < traj.clear_index ? sc.model.during_fault : sc.model.post_fault;
        s = rk4_step(sc.model, net, s, sc.dt);
        if (!s.angles.allFinite() || !s.speeds.allFinite()) {
            throw SimulationError("simulate: non-finite state at step " + std::to_string(k + 1), k + 1);
        }
    }
    return traj;
}

double max_angle_spread(const Trajectory& traj) {
    if (traj.samples() == 0) return 0.0;
    return (traj.angles.rowwise().maxCoeff() - traj.angles.rowwise().minCoeff()).maxCoeff();
}

bool is_separated(const Trajectory& traj) { return max_angle_spread(traj) > kSeparationSpread; }

CriticalClearing find_critical_clearing(const Scenario& tmpl, double tolerance) {
    validate(tmpl);
    CriticalClearing out;
    const Index last = tmpl.steps() - 1;
    auto unstable = [&](Index k) {
        ++out.simulations;
        return is_separated(simulate(with_clear_time(tmpl, static_cast<double>(k) * tmpl.dt)));
    };

    Index lo = 1;
    if (unstable(lo)) {
        throw Error("find_critical_clearing: unstable already at the lower bracket t_cl = " +
                    std::to_string(tmpl.dt) + " s");
    }
    Index hi = 2;
    while (true) {
        if (hi > last) {
            if (lo == last || !unstable(last)) {
                throw Error("find_critical_clearing: no unstable clearing time found within the horizon");
            }
            hi = last;
            break;
        }
        if (unstable(hi)) break;
        lo = hi;
        hi *= 2;
    }

    const Index tol_steps = std::max<Index>(1, static_cast<Index>(std::floor(tolerance / tmpl.dt)));
    while (hi - lo > tol_steps) {
        const Index mid = lo + (hi - lo) / 2;
        if (unstable(mid)) hi = mid;
        else lo = mid;
    }
    out.stable_time = static_cast<double>(lo) * tmpl.dt;
    out.unstable_time = static_cast<double>(hi) * tmpl.dt;
    out.time = 0.5 * (out.stable_time + out.unstable_time);
    return out;
}

}  // namespace tstab
