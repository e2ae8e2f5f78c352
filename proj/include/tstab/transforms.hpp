#pragma once

// Individual-to-equivalent machine transformations.
//
// Energy correction (ECIM) subtracts the inner-group machine energy from the
// individual machine energy. The sum over the group reproduces the equivalent
// machine energy, but the corrected machine has no motion of its own: its
// kinetic energy can go negative, and a trajectory rebuilt from it is broken.
//
// Trajectory correction (TCIM) replaces each member's motion by Machine-CR's
// while keeping the member inertia, so every TCIM energy is the M_i/M_CR
// scale-down of the equivalent machine energy.

#include "tstab/energy.hpp"

#include <vector>

namespace tstab {

struct EcimSeries {
    std::string entity;
    Vector times;
    Index clear_index = 0;
    Vector ke;  // IMKE − IGMKE, may be negative
    Vector pe;  // IMPE − IGMPE
    Vector total;
    std::vector<bool> reconstructable;  // ke ≥ 0
};

EcimSeries ecim_energy(const EnergySeries& imte_i, const EnergySeries& igmte_i);

struct SuperpositionCheck {
    Deviation total;  // |Σ ECIMTE − EMTE| / max(1, |EMTE|)
    Deviation ke;
    Deviation pe;
};

/// Compares the group sum of ECIM energies against Machine-CR's energy.
SuperpositionCheck ecim_superposition_check(const std::vector<EcimSeries>& ecims, const EnergySeries& emte);

/// Per-sample value of (f̄_CR^(PF)/M_CR)·Σ M_i Δδ_{i-CR}, the term that must
/// vanish for the PE superposition to hold. Element 0 carries the largest
/// magnitude over the approach path; element k the step ending at sample k.
Vector inner_group_cross_term(const FrameSeries& inner, const EquivalentMachineSeries& em);

struct EcimTrajectory {
    std::string entity;
    Vector times;
    Vector angle;     // NaN where undefined
    Vector velocity;  // NaN where undefined
    std::vector<bool> valid;
    bool broken = false;  // some sample has no real velocity

    Index defined_samples() const;
};

/// Rebuilds a trajectory from the corrected kinetic energy only:
/// ω^(EC) = sign(ω_{i-SYS})·sqrt(2·ECIMKE/M_i) where ECIMKE ≥ 0, and
/// δ^(EC)_{k+1} = δ^(EC)_k + ω^(EC)_k·Δt from δ_{i-SYS}(0). After an undefined
/// gap the angle resumes from its last defined value.
EcimTrajectory ecim_reconstruct_trajectory(const EnergySeries& imte_i, const EnergySeries& igmte_i,
                                           const FrameSeries& sys, int machine);

struct TcimSeries {
    std::string entity;
    int machine = 0;
    double inertia = 0.0;        // M_i
    double group_inertia = 0.0;  // M_CR
    Vector times;
    Index clear_index = 0;
    Vector ke;
    Vector pe;
    Vector total;
    // Borrowed motion of Machine-CR.
    Vector angle;
    Vector speed;
    Vector force_pf;  // (M_i/M_CR)·f_CR-SYS^(PF)
};

TcimSeries tcim(const EquivalentMachineSeries& em, const EnergySeries& emte, int machine, double inertia);

struct DeltaVSeries {
    std::string entity;
    Vector times;
    Vector dke;
    Vector dpe;
    Vector dtotal;
};

DeltaVSeries delta_v(const EnergySeries& imte_i, const TcimSeries& tcim_i);

/// Samples nearest to each crossing of ω_a − ω_b (two-machine groups), at or
/// after `from`.
std::vector<Index> equal_speed_samples(const FrameSeries& sys, const GroupSpec& g, Index from = 1);

/// Samples nearest to each zero crossing of a series, at or after `from`.
std::vector<Index> zero_crossings(const Vector& v, Index from = 1);

}  // namespace tstab
