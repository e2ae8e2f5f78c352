#pragma once

// Relative-motion references. Every series keeps the stage-correct force f
// (network actually in force) and the post-fault force f^(PF) side by side, so
// downstream energy integrals all read the same stored samples.

#include "tstab/simulator.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tstab {

/// Motion reference: inertia-weighted centre of the member machines.
struct ReferenceSpec {
    std::string tag;  // "SYS" for the whole system, "CR" for a group
    std::vector<int> members;
    Vector member_inertias;

    double total_inertia() const { return member_inertias.sum(); }

    static ReferenceSpec system(const SystemModel& model);
    static ReferenceSpec group(const SystemModel& model, const std::vector<int>& members, std::string tag = "CR");
};

/// Ω_CR with its aggregate inertia.
struct GroupSpec {
    std::vector<int> members;
    double inertia = 0.0;

    static GroupSpec from(const SystemModel& model, const std::vector<int>& members);
};

/// Straight path in machine-angle space from the post-fault equilibrium to the
/// first trajectory sample; PE integrals start along it so that PE = 0 at δ^s.
inline constexpr Index kDefaultApproachSteps = 2000;

struct FrameSeries {
    std::string reference;
    std::vector<int> machines;  // column → machine id
    Vector inertias;
    Vector times;
    Index clear_index = 0;

    Matrix angle;     // δ_{i-REF}
    Matrix speed;     // ω_{i-REF}
    Matrix force;     // f_{i-REF}, stage-correct network
    Matrix force_pf;  // f_{i-REF}^(PF), post-fault network

    std::optional<RowVector> sep_angle;  // δ^s in this frame
    Matrix approach_angle;               // rows: δ^s … sample 0
    Matrix approach_force_pf;

    Index samples() const { return angle.rows(); }
    Index columns() const { return angle.cols(); }
    /// Column of machine `id`; throws ValidationError if absent.
    Index column_of(int id) const;
};

/// Machine-CR in the SYS frame.
struct EquivalentMachineSeries {
    std::vector<int> members;
    double inertia = 0.0;  // M_CR
    Vector times;
    Index clear_index = 0;

    Vector angle;  // δ_CR-SYS
    Vector speed;  // ω_CR-SYS
    Vector force;  // f_CR-SYS
    Vector force_pf;

    std::optional<double> sep_angle;
    Vector approach_angle;
    Vector approach_force_pf;

    Index samples() const { return angle.size(); }
};

/// δ_{i-REF} = δ_i − δ_REF, ω likewise, f_{i-REF} = P_i − (M_i/M_REF)·P_REF,
/// with P_i recomputed on the network in force at each sample.
FrameSeries to_reference(const Trajectory& traj, const SystemModel& model, const ReferenceSpec& ref);

/// As above, with the PE anchor: `post_sep` is the post-fault equilibrium in
/// synchronous-frame angles.
FrameSeries to_reference(const Trajectory& traj, const SystemModel& model, const ReferenceSpec& ref,
                         const Vector& post_sep, Index approach_steps = kDefaultApproachSteps);

/// Motion equivalence: inertia-weighted angle and speed, summed force.
EquivalentMachineSeries equivalent_machine(const FrameSeries& fs, const GroupSpec& g);

/// Members relative to the group centre: δ_{i-CR} = δ_{i-SYS} − δ_CR-SYS,
/// f_{i-CR} = f_{i-SYS} − (M_i/M_CR)·f_CR-SYS.
FrameSeries inner_group(const FrameSeries& fs, const GroupSpec& g);

/// Post-fault equilibrium reached from the pre-fault one.
Vector post_fault_equilibrium(const Scenario& sc);

}  // namespace tstab
