#pragma once

// Classical-model system data: machines behind transient reactance, networks
// reduced to the machine internal nodes, power injections and equilibria.

#include "tstab/common.hpp"

#include <optional>
#include <vector>

namespace tstab {

struct MachineParams {
    int id = 0;
    double inertia = 0.0;     // M_i, pu·s²/rad
    double mech_power = 0.0;  // P_mi, pu
    double emf = 0.0;         // |E_i|, pu
};

/// Y_red = G + jB over machine internal nodes.
struct ReducedNetwork {
    Matrix conductance;
    Matrix susceptance;

    Index size() const { return conductance.rows(); }
};

enum class Stage { PreFault, DuringFault, PostFault };

const char* stage_name(Stage s);

struct SystemModel {
    std::vector<MachineParams> machines;
    ReducedNetwork pre_fault;
    ReducedNetwork during_fault;
    ReducedNetwork post_fault;
    double base_freq = 60.0;

    Index size() const { return static_cast<Index>(machines.size()); }
    const ReducedNetwork& network(Stage s) const;
    Vector inertias() const;
    Vector mech_powers() const;
    Vector emfs() const;
    double total_inertia() const;
};

/// Throws ValidationError naming the broken invariant.
void validate(const ReducedNetwork& net, Index machines, const char* label);
void validate(const SystemModel& model);

struct Branch {
    int from = 0;
    int to = 0;
    double r = 0.0;
    double x = 0.0;
    double b = 0.0;  // total line charging
};

struct ShuntAdmittance {
    int bus = 0;
    double g = 0.0;
    double b = 0.0;
};

struct MachineLink {
    int machine = 0;
    int bus = 0;
    double xd_prime = 0.0;
};

/// Bus-level network. Machine internal nodes are attached through their
/// transient reactances and are never load buses.
struct RawNetwork {
    std::vector<int> buses;
    std::vector<Branch> branches;
    std::vector<ShuntAdmittance> loads;
    std::vector<MachineLink> machine_links;
    std::vector<int> bolted_buses;  // buses held at zero voltage

    /// Augmented admittance matrix, machine internal nodes first, then the
    /// buses in `buses` order with bolted buses removed.
    ComplexMatrix augmented_admittance() const;
    Index machine_count() const { return static_cast<Index>(machine_links.size()); }
};

/// Eliminates every non-machine node: Y_mm − Y_mb·Y_bb⁻¹·Y_bm.
ReducedNetwork kron_reduce(const RawNetwork& raw);
ReducedNetwork kron_reduce(const ComplexMatrix& augmented, Index machine_nodes);

/// P_ei for every machine at the given angles.
Vector electrical_power(const Vector& angles, const ReducedNetwork& net,
                        const std::vector<MachineParams>& machines);
Vector electrical_power(const Vector& angles, const ReducedNetwork& net, const Vector& emf);

/// P_i = P_mi − P_ei.
Vector accelerating_power(const Vector& angles, const ReducedNetwork& net,
                          const std::vector<MachineParams>& machines);

/// ∂P_ei/∂δ_k.
Matrix electrical_power_jacobian(const Vector& angles, const ReducedNetwork& net, const Vector& emf);

struct SepOptions {
    double tolerance = 1e-10;
    int max_iterations = 50;
};

struct SepResult {
    Vector angles;  // COI-referenced: Σ M_i δ_i = 0
    int iterations = 0;
    double residual = 0.0;
};

/// Stable equilibrium in the COI frame: P_i − (M_i/M_T)·ΣP_j = 0 for all i.
/// Newton with half-step damping; throws ConvergenceError.
SepResult sep_solve(const ReducedNetwork& net, const std::vector<MachineParams>& machines,
                    const Vector& initial_angles, const SepOptions& opts = {});

/// ∞-norm of the COI-frame equilibrium residual.
double sep_residual(const ReducedNetwork& net, const std::vector<MachineParams>& machines,
                    const Vector& angles);

}  // namespace tstab
