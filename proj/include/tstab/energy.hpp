#pragma once

#include "tstab/frames.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tstab {

/// Kinetic, potential and total transient energy of one entity on the
/// trajectory's sample grid.
struct EnergySeries {
    std::string entity;
    Vector times;
    Index clear_index = 0;
    Vector ke;
    Vector pe;
    Vector total;

    Index samples() const { return total.size(); }
};

/// ∫ −f dδ by trapezoids: first along the approach path (from δ^s), then
/// along the trajectory samples. Element k is the PE at sample k.
Vector accumulate_potential(const Vector& approach_angle, const Vector& approach_force, const Vector& angle,
                            const Vector& force);

/// Individual machine in the SYS frame; `fs` must carry its SEP anchor.
EnergySeries imte(const FrameSeries& fs, int machine);
/// Machine-CR in the SYS frame.
EnergySeries emte(const EquivalentMachineSeries& em);
/// Inner-group machine in the CR frame.
EnergySeries igmte(const FrameSeries& inner, int machine);
/// Elementwise sum of individual-machine energies.
EnergySeries smte(const std::vector<EnergySeries>& imtes);

/// Same length and bit-identical times; throws ValidationError otherwise.
void require_same_grid(const EnergySeries& a, const EnergySeries& b, const char* op);

struct DlpReport {
    std::string entity;
    std::optional<Index> index;
    std::optional<double> time;
    bool separated = false;  // the motion passed its post-fault PE maximum
};

/// First sample after clear_index where f^(PF) goes from negative to
/// non-negative while δ is increasing.
DlpReport detect_dlp(const Vector& times, const Vector& force_pf, const Vector& angle, Index clear_index,
                     std::string entity = {});

struct Deviation {
    double value = 0.0;
    Index worst_index = 0;
};

/// max over t ≥ t_cl of |V(t) − V(t_cl)| / scale, where scale is the larger of
/// |V(t_cl)| and the peak post-fault KE (0 for an entity that never moves).
Deviation post_fault_drift(const EnergySeries& e);

}  // namespace tstab
