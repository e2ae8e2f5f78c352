#pragma once

#include "tstab/network.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace tstab {

/// A fault-on / fault-clear study. The fault is applied at t = 0 and cleared
/// at clear_time by switching to the post-fault network.
struct Scenario {
    std::string name;
    SystemModel model;
    Vector initial_angles;  // guess for the pre-fault equilibrium, rad
    double clear_time = 0.0;
    double horizon = 0.0;
    double dt = 1e-3;
    std::vector<int> group;  // optional critical-group membership

    Index steps() const;        // number of dt intervals up to horizon
    Index clear_index() const;  // sample index of clear_time
};

/// Throws ValidationError if the timing or model invariants do not hold.
void validate(const Scenario& sc);

/// Same scenario on a different step; clear_time must stay on the grid.
Scenario with_dt(const Scenario& sc, double dt);
Scenario with_clear_time(const Scenario& sc, double clear_time);

/// JSON scenario. Networks are either pre-reduced ("networks": pre/fault/post
/// with row-major "G"/"B" arrays) or raw ("network": buses, branches, loads,
/// machine_links, fault, post), in which case they are Kron-reduced here.
Scenario parse_scenario(std::string_view json_text, const std::string& source = "<scenario>");
Scenario load_scenario(const std::filesystem::path& path);

/// Pre-reduced JSON form; parsing it back yields a bit-identical model.
std::string scenario_to_json(const Scenario& sc);

/// Raw-network section of a scenario as three stage networks.
struct StagedRawNetwork {
    RawNetwork pre;
    RawNetwork fault;
    RawNetwork post;
};

}  // namespace tstab
