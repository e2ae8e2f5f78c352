#include "tstab/frames.hpp"

#include <algorithm>
#include <set>

namespace tstab {

namespace {

void check_members(const SystemModel& model, const std::vector<int>& members, const char* what) {
    if (members.empty()) throw ValidationError(std::string(what) + ": empty member list");
    std::set<int> seen;
    for (int id : members) {
        if (id < 0 || id >= static_cast<int>(model.size())) {
            throw ValidationError(std::string(what) + ": " + std::to_string(id) + " is not a machine id");
        }
        if (!seen.insert(id).second) {
            throw ValidationError(std::string(what) + ": duplicate member " + std::to_string(id));
        }
    }
}

// Relative quantities of every machine for one matrix of synchronous angles.
Matrix relative_to(const Matrix& values, const ReferenceSpec& ref) {
    Vector centre = Vector::Zero(values.rows());
    for (std::size_t k = 0; k < ref.members.size(); ++k) {
        centre += ref.member_inertias[static_cast<Index>(k)] * values.col(ref.members[k]);
    }
    centre /= ref.total_inertia();
    return values.colwise() - centre;
}

Matrix relative_force(const Matrix& p, const Vector& inertias, const ReferenceSpec& ref) {
    Vector p_ref = Vector::Zero(p.rows());
    for (int id : ref.members) p_ref += p.col(id);
    Matrix f = p;
    for (Index i = 0; i < p.cols(); ++i) f.col(i) -= (inertias[i] / ref.total_inertia()) * p_ref;
    return f;
}

Matrix power_rows(const Matrix& angles, const SystemModel& model, const Trajectory* traj) {
    Matrix p(angles.rows(), angles.cols());
    for (Index k = 0; k < angles.rows(); ++k) {
        const ReducedNetwork& net = traj ? model.network(traj->stage_at(k)) : model.post_fault;
        p.row(k) = accelerating_power(angles.row(k).transpose(), net, model.machines).transpose();
    }
    return p;
}

std::vector<Index> member_columns(const FrameSeries& fs, const GroupSpec& g) {
    std::vector<Index> cols;
    for (int id : g.members) cols.push_back(fs.column_of(id));
    return cols;
}

Vector weighted(const Matrix& m, const std::vector<Index>& cols, const Vector& inertias, double total) {
    Vector out = Vector::Zero(m.rows());
    for (Index c : cols) out += inertias[c] * m.col(c);
    return out / total;
}

Vector summed(const Matrix& m, const std::vector<Index>& cols) {
    Vector out = Vector::Zero(m.rows());
    for (Index c : cols) out += m.col(c);
    return out;
}

}  // namespace

ReferenceSpec ReferenceSpec::system(const SystemModel& model) {
    ReferenceSpec ref;
    ref.tag = "SYS";
    for (Index i = 0; i < model.size(); ++i) ref.members.push_back(static_cast<int>(i));
    ref.member_inertias = model.inertias();
    return ref;
}

ReferenceSpec ReferenceSpec::group(const SystemModel& model, const std::vector<int>& members, std::string tag) {
    check_members(model, members, "reference");
    ReferenceSpec ref;
    ref.tag = std::move(tag);
    ref.members = members;
    ref.member_inertias.resize(static_cast<Index>(members.size()));
    for (std::size_t k = 0; k < members.size(); ++k) {
        ref.member_inertias[static_cast<Index>(k)] = model.machines[static_cast<std::size_t>(members[k])].inertia;
    }
    return ref;
}

GroupSpec GroupSpec::from(const SystemModel& model, const std::vector<int>& members) {
    check_members(model, members, "group");
    GroupSpec g{members, 0.0};
    for (int id : members) g.inertia += model.machines[static_cast<std::size_t>(id)].inertia;
    return g;
}

Index FrameSeries::column_of(int id) const {
    auto it = std::find(machines.begin(), machines.end(), id);
    if (it == machines.end()) {
        throw ValidationError("frame " + reference + ": machine " + std::to_string(id) + " not present");
    }
    return static_cast<Index>(it - machines.begin());
}

FrameSeries to_reference(const Trajectory& traj, const SystemModel& model, const ReferenceSpec& ref) {
    if (ref.members.empty() || !(ref.total_inertia() > 0.0)) {
        throw ValidationError("to_reference: empty reference");
    }
    for (int id : ref.members) {
        if (id < 0 || id >= static_cast<int>(model.size())) {
            throw ValidationError("to_reference: reference member " + std::to_string(id) + " not in system");
        }
    }
    if (traj.machines() != model.size()) throw ValidationError("to_reference: trajectory/model size mismatch");

    FrameSeries fs;
    fs.reference = ref.tag;
    for (Index i = 0; i < model.size(); ++i) fs.machines.push_back(static_cast<int>(i));
    fs.inertias = model.inertias();
    fs.times = traj.times;
    fs.clear_index = traj.clear_index;
    fs.angle = relative_to(traj.angles, ref);
    fs.speed = relative_to(traj.speeds, ref);
    fs.force = relative_force(power_rows(traj.angles, model, &traj), fs.inertias, ref);
    fs.force_pf = relative_force(power_rows(traj.angles, model, nullptr), fs.inertias, ref);
    return fs;
}

FrameSeries to_reference(const Trajectory& traj, const SystemModel& model, const ReferenceSpec& ref,
                         const Vector& post_sep, Index approach_steps) {
    FrameSeries fs = to_reference(traj, model, ref);
    if (post_sep.size() != model.size()) throw ValidationError("to_reference: SEP length mismatch");
    if (approach_steps < 1) throw ValidationError("to_reference: approach path needs at least one step");
    if (traj.samples() == 0) return fs;

    const RowVector start = post_sep.transpose();
    const RowVector end = traj.angles.row(0);
    Matrix path(approach_steps + 1, model.size());
    for (Index s = 0; s <= approach_steps; ++s) {
        const double u = static_cast<double>(s) / static_cast<double>(approach_steps);
        path.row(s) = start + u * (end - start);
    }
    path.row(approach_steps) = end;  // exact endpoint, no interpolation rounding

    fs.approach_angle = relative_to(path, ref);
    fs.approach_force_pf = relative_force(power_rows(path, model, nullptr), fs.inertias, ref);
    fs.sep_angle = fs.approach_angle.row(0);
    return fs;
}

EquivalentMachineSeries equivalent_machine(const FrameSeries& fs, const GroupSpec& g) {
    if (g.members.empty()) throw ValidationError("equivalent_machine: empty group");
    const auto cols = member_columns(fs, g);
    double total = 0.0;
    for (Index c : cols) total += fs.inertias[c];

    EquivalentMachineSeries em;
    em.members = g.members;
    em.inertia = total;
    em.times = fs.times;
    em.clear_index = fs.clear_index;
    em.angle = weighted(fs.angle, cols, fs.inertias, total);
    em.speed = weighted(fs.speed, cols, fs.inertias, total);
    em.force = summed(fs.force, cols);
    em.force_pf = summed(fs.force_pf, cols);
    if (fs.sep_angle) {
        em.approach_angle = weighted(fs.approach_angle, cols, fs.inertias, total);
        em.approach_force_pf = summed(fs.approach_force_pf, cols);
        em.sep_angle = em.approach_angle[0];
    }
    return em;
}

FrameSeries inner_group(const FrameSeries& fs, const GroupSpec& g) {
    const EquivalentMachineSeries em = equivalent_machine(fs, g);
    const auto cols = member_columns(fs, g);
    const Index k = static_cast<Index>(cols.size());

    FrameSeries out;
    out.reference = "CR";
    out.machines = g.members;
    out.inertias.resize(k);
    out.times = fs.times;
    out.clear_index = fs.clear_index;
    out.angle.resize(fs.samples(), k);
    out.speed.resize(fs.samples(), k);
    out.force.resize(fs.samples(), k);
    out.force_pf.resize(fs.samples(), k);
    if (fs.sep_angle) {
        out.approach_angle.resize(fs.approach_angle.rows(), k);
        out.approach_force_pf.resize(fs.approach_angle.rows(), k);
    }
    for (Index j = 0; j < k; ++j) {
        const Index c = cols[static_cast<std::size_t>(j)];
        const double share = fs.inertias[c] / em.inertia;
        out.inertias[j] = fs.inertias[c];
        out.angle.col(j) = fs.angle.col(c) - em.angle;
        out.speed.col(j) = fs.speed.col(c) - em.speed;
        out.force.col(j) = fs.force.col(c) - share * em.force;
        out.force_pf.col(j) = fs.force_pf.col(c) - share * em.force_pf;
        if (fs.sep_angle) {
            out.approach_angle.col(j) = fs.approach_angle.col(c) - em.approach_angle;
            out.approach_force_pf.col(j) = fs.approach_force_pf.col(c) - share * em.approach_force_pf;
        }
    }
    if (fs.sep_angle) out.sep_angle = out.approach_angle.row(0);
    return out;
}

Vector post_fault_equilibrium(const Scenario& sc) {
    return sep_solve(sc.model.post_fault, sc.model.machines, initial_state_angles(sc)).angles;
}

}  // namespace tstab
