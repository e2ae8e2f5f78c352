#include "tstab/scenario.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace tstab {

using nlohmann::json;

namespace {

constexpr double kGridTol = 1e-9;

Index grid_steps(double span, double dt) {
    return static_cast<Index>(std::llround(span / dt));
}

bool on_grid(double span, double dt) {
    const double k = std::round(span / dt);
    return std::abs(k * dt - span) <= kGridTol * std::max(1.0, std::abs(span));
}

const json& require(const json& j, const char* key, const std::string& path) {
    if (!j.is_object()) throw ParseError(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(path + "/" + key, "missing field");
    return *it;
}

double number(const json& j, const std::string& path) {
    if (!j.is_number()) throw ParseError(path, "expected a number");
    return j.get<double>();
}

double number_at(const json& j, const char* key, const std::string& path) {
    return number(require(j, key, path), path + "/" + key);
}

int integer_at(const json& j, const char* key, const std::string& path) {
    const json& v = require(j, key, path);
    if (!v.is_number_integer()) throw ParseError(path + "/" + key, "expected an integer");
    return v.get<int>();
}

std::vector<int> int_list(const json& j, const std::string& path) {
    if (!j.is_array()) throw ParseError(path, "expected an array");
    std::vector<int> out;
    for (std::size_t k = 0; k < j.size(); ++k) {
        if (!j[k].is_number_integer()) throw ParseError(path + "/" + std::to_string(k), "expected an integer");
        out.push_back(j[k].get<int>());
    }
    return out;
}

Matrix square_matrix(const json& j, Index n, const std::string& path) {
    if (!j.is_array()) throw ParseError(path, "expected a row-major array");
    if (static_cast<Index>(j.size()) != n * n) {
        throw ParseError(path, "expected " + std::to_string(n * n) + " entries, found " + std::to_string(j.size()));
    }
    Matrix m(n, n);
    for (Index r = 0; r < n; ++r) {
        for (Index c = 0; c < n; ++c) {
            const auto k = static_cast<std::size_t>(r * n + c);
            m(r, c) = number(j[k], path + "/" + std::to_string(k));
        }
    }
    return m;
}

ReducedNetwork reduced_network(const json& j, Index n, const std::string& path) {
    return ReducedNetwork{square_matrix(require(j, "G", path), n, path + "/G"),
                          square_matrix(require(j, "B", path), n, path + "/B")};
}

RawNetwork raw_base(const json& j, const std::string& path) {
    RawNetwork raw;
    raw.buses = int_list(require(j, "buses", path), path + "/buses");
    const json& branches = require(j, "branches", path);
    if (!branches.is_array()) throw ParseError(path + "/branches", "expected an array");
    for (std::size_t k = 0; k < branches.size(); ++k) {
        const std::string p = path + "/branches/" + std::to_string(k);
        const json& b = branches[k];
        raw.branches.push_back(Branch{integer_at(b, "from", p), integer_at(b, "to", p), number_at(b, "r", p),
                                      number_at(b, "x", p), b.contains("b") ? number_at(b, "b", p) : 0.0});
    }
    if (j.contains("loads")) {
        const json& loads = j["loads"];
        if (!loads.is_array()) throw ParseError(path + "/loads", "expected an array");
        for (std::size_t k = 0; k < loads.size(); ++k) {
            const std::string p = path + "/loads/" + std::to_string(k);
            raw.loads.push_back(
                ShuntAdmittance{integer_at(loads[k], "bus", p), number_at(loads[k], "g", p), number_at(loads[k], "b", p)});
        }
    }
    const json& links = require(j, "machine_links", path);
    if (!links.is_array()) throw ParseError(path + "/machine_links", "expected an array");
    for (std::size_t k = 0; k < links.size(); ++k) {
        const std::string p = path + "/machine_links/" + std::to_string(k);
        raw.machine_links.push_back(MachineLink{integer_at(links[k], "machine", p), integer_at(links[k], "bus", p),
                                                number_at(links[k], "xd_prime", p)});
    }
    return raw;
}

RawNetwork apply_stage(RawNetwork raw, const json& stage, const std::string& path) {
    if (stage.contains("bolted_buses")) {
        for (int bus : int_list(stage["bolted_buses"], path + "/bolted_buses")) raw.bolted_buses.push_back(bus);
    }
    if (stage.contains("shunts")) {
        const json& shunts = stage["shunts"];
        if (!shunts.is_array()) throw ParseError(path + "/shunts", "expected an array");
        for (std::size_t k = 0; k < shunts.size(); ++k) {
            const std::string p = path + "/shunts/" + std::to_string(k);
            raw.loads.push_back(
                ShuntAdmittance{integer_at(shunts[k], "bus", p), number_at(shunts[k], "g", p), number_at(shunts[k], "b", p)});
        }
    }
    if (stage.contains("open_branches")) {
        const json& open = stage["open_branches"];
        if (!open.is_array()) throw ParseError(path + "/open_branches", "expected an array");
        for (std::size_t k = 0; k < open.size(); ++k) {
            const std::string p = path + "/open_branches/" + std::to_string(k);
            const int from = integer_at(open[k], "from", p);
            const int to = integer_at(open[k], "to", p);
            auto it = std::find_if(raw.branches.begin(), raw.branches.end(), [&](const Branch& b) {
                return (b.from == from && b.to == to) || (b.from == to && b.to == from);
            });
            if (it == raw.branches.end()) {
                throw ParseError(p, "no branch " + std::to_string(from) + "-" + std::to_string(to) + " to open");
            }
            raw.branches.erase(it);
        }
    }
    return raw;
}

StagedRawNetwork staged_raw(const json& j, const std::string& path) {
    RawNetwork base = raw_base(j, path);
    StagedRawNetwork staged{base, base, base};
    if (j.contains("fault")) staged.fault = apply_stage(base, j["fault"], path + "/fault");
    // Post-fault modifications apply to the pre-fault network, not the faulted one.
    if (j.contains("post")) staged.post = apply_stage(base, j["post"], path + "/post");
    return staged;
}

}  // namespace

Index Scenario::steps() const { return grid_steps(horizon, dt); }
Index Scenario::clear_index() const { return grid_steps(clear_time, dt); }

void validate(const Scenario& sc) {
    validate(sc.model);
    if (sc.initial_angles.size() != sc.model.size()) {
        throw ValidationError("initial_angles: length must equal machine count");
    }
    if (!(sc.dt > 0.0)) throw ValidationError("scenario: dt must be > 0");
    if (!(sc.clear_time > 0.0 && sc.clear_time < sc.horizon)) {
        throw ValidationError("scenario: requires 0 < clear_time < horizon");
    }
    if (!on_grid(sc.clear_time, sc.dt)) {
        throw ValidationError("scenario: clear_time must be an integer multiple of dt");
    }
    if (!on_grid(sc.horizon, sc.dt)) {
        throw ValidationError("scenario: horizon must be an integer multiple of dt");
    }
    for (int id : sc.group) {
        if (id < 0 || id >= static_cast<int>(sc.model.size())) {
            throw ValidationError("scenario: group member " + std::to_string(id) + " is not a machine id");
        }
    }
}

Scenario with_dt(const Scenario& sc, double dt) {
    Scenario out = sc;
    out.dt = dt;
    validate(out);
    return out;
}

Scenario with_clear_time(const Scenario& sc, double clear_time) {
    Scenario out = sc;
    out.clear_time = clear_time;
    validate(out);
    return out;
}

Scenario parse_scenario(std::string_view json_text, const std::string& source) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(source, std::string("malformed JSON: ") + e.what());
    }

    Scenario sc;
    sc.name = doc.value("name", source);
    sc.model.base_freq = doc.contains("base_freq") ? number_at(doc, "base_freq", "") : 60.0;

    const json& machines = require(doc, "machines", "");
    if (!machines.is_array() || machines.empty()) throw ParseError("/machines", "expected a non-empty array");
    for (std::size_t k = 0; k < machines.size(); ++k) {
        const std::string p = "/machines/" + std::to_string(k);
        sc.model.machines.push_back(MachineParams{integer_at(machines[k], "id", p), number_at(machines[k], "M", p),
                                                  number_at(machines[k], "Pm", p), number_at(machines[k], "E", p)});
    }
    const Index n = sc.model.size();

    if (doc.contains("networks")) {
        const json& nets = doc["networks"];
        sc.model.pre_fault = reduced_network(require(nets, "pre", "/networks"), n, "/networks/pre");
        sc.model.during_fault = reduced_network(require(nets, "fault", "/networks"), n, "/networks/fault");
        sc.model.post_fault = reduced_network(require(nets, "post", "/networks"), n, "/networks/post");
    } else if (doc.contains("network")) {
        const StagedRawNetwork staged = staged_raw(doc["network"], "/network");
        if (staged.pre.machine_count() != n) {
            throw ParseError("/network/machine_links", "must list one link per machine");
        }
        sc.model.pre_fault = kron_reduce(staged.pre);
        sc.model.during_fault = kron_reduce(staged.fault);
        sc.model.post_fault = kron_reduce(staged.post);
    } else {
        throw ParseError("/networks", "missing field (or raw /network section)");
    }

    sc.initial_angles = Vector::Zero(n);
    if (doc.contains("initial_angles_deg")) {
        const json& a = doc["initial_angles_deg"];
        if (!a.is_array() || static_cast<Index>(a.size()) != n) {
            throw ParseError("/initial_angles_deg", "expected one angle per machine");
        }
        for (Index i = 0; i < n; ++i) {
            sc.initial_angles[i] =
                number(a[static_cast<std::size_t>(i)], "/initial_angles_deg/" + std::to_string(i)) * std::numbers::pi / 180.0;
        }
    }

    const json& s = require(doc, "scenario", "");
    sc.clear_time = number_at(s, "clear_time", "/scenario");
    sc.horizon = number_at(s, "horizon", "/scenario");
    sc.dt = s.contains("dt") ? number_at(s, "dt", "/scenario") : 1e-3;
    if (s.contains("group")) sc.group = int_list(s["group"], "/scenario/group");

    validate(sc);
    return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open scenario file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_scenario(text.str(), path.string());
}

std::string scenario_to_json(const Scenario& sc) {
    auto flat = [](const Matrix& m) {
        json arr = json::array();
        for (Index r = 0; r < m.rows(); ++r)
            for (Index c = 0; c < m.cols(); ++c) arr.push_back(m(r, c));
        return arr;
    };
    auto net = [&](const ReducedNetwork& n) { return json{{"G", flat(n.conductance)}, {"B", flat(n.susceptance)}}; };

    json doc;
    doc["name"] = sc.name;
    doc["base_freq"] = sc.model.base_freq;
    json machines = json::array();
    for (const auto& m : sc.model.machines) {
        machines.push_back({{"id", m.id}, {"M", m.inertia}, {"Pm", m.mech_power}, {"E", m.emf}});
    }
    doc["machines"] = machines;
    json angles = json::array();
    for (Index i = 0; i < sc.initial_angles.size(); ++i) {
        angles.push_back(sc.initial_angles[i] * 180.0 / std::numbers::pi);
    }
    doc["initial_angles_deg"] = angles;
    doc["networks"] = {{"pre", net(sc.model.pre_fault)},
                       {"fault", net(sc.model.during_fault)},
                       {"post", net(sc.model.post_fault)}};
    doc["scenario"] = {{"clear_time", sc.clear_time}, {"horizon", sc.horizon}, {"dt", sc.dt}, {"group", sc.group}};
    return doc.dump(2) + "\n";
}

}  // namespace tstab
