#pragma once

#include "tstab/scenario.hpp"

namespace tstab {

/// Fixed-step samples of the synchronous-frame motion. Row k is t = k·dt.
struct Trajectory {
    Vector times;
    Matrix angles;  // T×n, rad
    Matrix speeds;  // T×n, rad/s deviation from synchronous
    Index clear_index = 0;
    double dt = 0.0;

    Index samples() const { return times.size(); }
    Index machines() const { return angles.cols(); }
    /// Network in force for sample k: during-fault before clear_index, post-fault from it on.
    Stage stage_at(Index k) const { return k < clear_index ? Stage::DuringFault : Stage::PostFault; }
};

/// d/dt of (δ, ω) for the classical swing equations on one network.
struct SwingDerivative {
    Vector angle_rate;  // ω
    Vector speed_rate;  // (P_m − P_e)/M
};

SwingDerivative swing_derivative(const SystemModel& model, const ReducedNetwork& net, const Vector& angles,
                                 const Vector& speeds);

/// Classic RK4 from the pre-fault equilibrium at rest. Throws SimulationError
/// on a non-finite state.
Trajectory simulate(const Scenario& sc);

/// Pre-fault equilibrium used as the initial state.
Vector initial_state_angles(const Scenario& sc);

/// max_t (max_i δ_i − min_i δ_i).
double max_angle_spread(const Trajectory& traj);

constexpr double kSeparationSpread = 2.0 * 3.14159265358979323846;

/// Angle spread exceeded 2π somewhere within the horizon.
bool is_separated(const Trajectory& traj);

struct CriticalClearing {
    double time = 0.0;         // bracket midpoint
    double stable_time = 0.0;  // largest stable clear time found
    double unstable_time = 0.0;
    int simulations = 0;
};

/// Bisection on clear_time over the dt grid. Throws Error if t_cl = dt is
/// already unstable or no unstable clear time exists before the horizon.
CriticalClearing find_critical_clearing(const Scenario& tmpl, double tolerance);

}  // namespace tstab
