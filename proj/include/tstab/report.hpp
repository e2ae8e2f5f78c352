#pragma once

// End-to-end analysis of one scenario and the identity-check report built
// from it. Artifact writers live here so the CLI stays thin.

#include "tstab/csv.hpp"
#include "tstab/newton_demo.hpp"
#include "tstab/transforms.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace tstab {

struct Tolerances {
    double coi = 1e-9;
    double ke_identity = 1e-10;
    double superposition = 1e-6;  // total and PE splits
    double cross_term = 1e-12;
    double tcim = 1e-12;          // scale-down and superposition
    double conservation = 1e-4;   // post-fault drift
    double newton = 1e-12;
};

/// "name=value,name=value"; unknown names or bad numbers raise ParseError.
Tolerances apply_overrides(Tolerances tol, const std::string& overrides);

struct Analysis {
    Scenario scenario;
    Trajectory trajectory;
    Vector post_sep;
    FrameSeries sys;
    std::vector<EnergySeries> imtes;
    EnergySeries smte;
    std::vector<DlpReport> dlps;  // IM of every machine, then EM and TCIMs when grouped

    std::optional<GroupSpec> group;
    std::optional<EquivalentMachineSeries> em;
    std::optional<FrameSeries> inner;
    std::optional<EnergySeries> emte;
    std::vector<EnergySeries> igmtes;  // group order
    std::vector<EcimSeries> ecims;
    std::vector<EcimTrajectory> ecim_trajectories;
    std::vector<TcimSeries> tcims;
    std::vector<DeltaVSeries> delta_vs;

    const EnergySeries& imte_of(int machine) const;
};

/// Empty `group` skips the group-dependent parts.
Analysis analyze(const Scenario& sc, const std::vector<int>& group);

struct CheckEntry {
    std::string name;
    double value = 0.0;
    Index worst_index = 0;
    double tolerance = 0.0;

    bool pass() const { return value <= tolerance; }
};

struct IdentityReport {
    std::vector<CheckEntry> checks;

    bool passed() const;
    const CheckEntry* find(const std::string& name) const;
    std::string to_json() const;
};

struct ReportToggles {
    bool coi = true;
    bool conservation = false;
    bool ecim = false;
    bool tcim = false;
    bool dlp = false;
};

IdentityReport identity_report(const Analysis& a, const Tolerances& tol, const ReportToggles& on);

/// Newton demo: per-ball conservation and the t = 0 energies.
IdentityReport newton_report(const std::vector<newton::DemoRow>& rows, const Tolerances& tol);

/// Interval [k−1, k] holding each sign change of a series, reported as k.
std::vector<Index> sign_change_intervals(const Vector& v, Index from = 1);

// CSV tables. Angles in rad, speeds in rad/s, energies in pu·s.
CsvTable trajectory_table(const Trajectory& traj, const SystemModel& model);
CsvTable frame_table(const FrameSeries& fs);
CsvTable equivalent_machine_table(const EquivalentMachineSeries& em);
CsvTable energy_table(const EnergySeries& e);
CsvTable ecim_table(const EcimSeries& e);
CsvTable ecim_trajectory_table(const EcimTrajectory& tr);
CsvTable tcim_table(const TcimSeries& t);
CsvTable delta_v_table(const DeltaVSeries& d);
CsvTable newton_table(const std::vector<newton::DemoRow>& rows);

std::string dlp_json(const std::vector<DlpReport>& dlps);

}  // namespace tstab
