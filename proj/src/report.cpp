#include "tstab/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace tstab {

namespace {

using nlohmann::ordered_json;

std::vector<double> to_std(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

std::vector<double> column(const Matrix& m, Index c) {
    std::vector<double> out(static_cast<std::size_t>(m.rows()));
    for (Index k = 0; k < m.rows(); ++k) out[static_cast<std::size_t>(k)] = m(k, c);
    return out;
}

std::vector<double> mask(const std::vector<bool>& b) {
    std::vector<double> out(b.size());
    for (std::size_t k = 0; k < b.size(); ++k) out[k] = b[k] ? 1.0 : 0.0;
    return out;
}

Deviation max_relative(const Vector& lhs, const Vector& rhs) {
    Deviation d;
    for (Index k = 0; k < lhs.size(); ++k) {
        const double dev = std::abs(lhs[k] - rhs[k]) / std::max(1.0, std::abs(rhs[k]));
        if (dev > d.value) {
            d.value = dev;
            d.worst_index = k;
        }
    }
    return d;
}

Deviation max_abs(const Vector& v) {
    Deviation d;
    for (Index k = 0; k < v.size(); ++k) {
        if (std::abs(v[k]) > d.value) {
            d.value = std::abs(v[k]);
            d.worst_index = k;
        }
    }
    return d;
}

void add(IdentityReport& r, std::string name, Deviation d, double tol) {
    r.checks.push_back(CheckEntry{std::move(name), d.value, d.worst_index, tol});
}

void add_worse(Deviation& acc, Deviation d) {
    if (d.value > acc.value) acc = d;
}

}  // namespace

Tolerances apply_overrides(Tolerances tol, const std::string& overrides) {
    std::stringstream ss(overrides);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ParseError("--tol-overrides", "expected name=value, got '" + item + "'");
        const std::string name = item.substr(0, eq);
        const std::string text = item.substr(eq + 1);
        double value = 0.0;
        const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
        if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !(value >= 0.0)) {
            throw ParseError("--tol-overrides " + name, "not a non-negative number: '" + text + "'");
        }
        if (name == "coi") tol.coi = value;
        else if (name == "ke_identity") tol.ke_identity = value;
        else if (name == "superposition") tol.superposition = value;
        else if (name == "cross_term") tol.cross_term = value;
        else if (name == "tcim") tol.tcim = value;
        else if (name == "conservation") tol.conservation = value;
        else if (name == "newton") tol.newton = value;
        else throw ParseError("--tol-overrides", "unknown tolerance '" + name + "'");
    }
    return tol;
}

const EnergySeries& Analysis::imte_of(int machine) const {
    return imtes.at(static_cast<std::size_t>(sys.column_of(machine)));
}

Analysis analyze(const Scenario& sc, const std::vector<int>& group) {
    validate(sc);
    Analysis a;
    a.scenario = sc;
    a.trajectory = simulate(sc);
    a.post_sep = post_fault_equilibrium(sc);
    a.sys = to_reference(a.trajectory, sc.model, ReferenceSpec::system(sc.model), a.post_sep);
    for (int id : a.sys.machines) {
        a.imtes.push_back(imte(a.sys, id));
        const Index c = a.sys.column_of(id);
        a.dlps.push_back(detect_dlp(a.sys.times, a.sys.force_pf.col(c), a.sys.angle.col(c), a.sys.clear_index,
                                    "IMTE_" + std::to_string(id)));
    }
    a.smte = smte(a.imtes);
    if (group.empty()) return a;

    a.group = GroupSpec::from(sc.model, group);
    a.em = equivalent_machine(a.sys, *a.group);
    a.inner = inner_group(a.sys, *a.group);
    a.emte = emte(*a.em);
    a.dlps.push_back(detect_dlp(a.em->times, a.em->force_pf, a.em->angle, a.em->clear_index, "EMTE_CR"));
    for (int id : group) {
        const EnergySeries& im = a.imte_of(id);
        a.igmtes.push_back(igmte(*a.inner, id));
        a.ecims.push_back(ecim_energy(im, a.igmtes.back()));
        a.ecim_trajectories.push_back(ecim_reconstruct_trajectory(im, a.igmtes.back(), a.sys, id));
        const double inertia = a.sys.inertias[a.sys.column_of(id)];
        a.tcims.push_back(tcim(*a.em, *a.emte, id, inertia));
        a.delta_vs.push_back(delta_v(im, a.tcims.back()));
        const TcimSeries& t = a.tcims.back();
        a.dlps.push_back(detect_dlp(t.times, t.force_pf, t.angle, t.clear_index, t.entity));
    }
    return a;
}

bool IdentityReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckEntry& c) { return c.pass(); });
}

const CheckEntry* IdentityReport::find(const std::string& name) const {
    for (const auto& c : checks) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

std::string IdentityReport::to_json() const {
    ordered_json j;
    j["passed"] = passed();
    ordered_json arr = ordered_json::array();
    for (const auto& c : checks) {
        ordered_json e;
        e["name"] = c.name;
        e["value"] = c.value;
        e["worst_index"] = c.worst_index;
        e["tolerance"] = c.tolerance;
        e["pass"] = c.pass();
        arr.push_back(e);
    }
    j["checks"] = arr;
    return j.dump(2) + "\n";
}

std::vector<Index> sign_change_intervals(const Vector& v, Index from) {
    std::vector<Index> out;
    for (Index k = std::max<Index>(from, 1); k < v.size(); ++k) {
        const double a = v[k - 1];
        const double b = v[k];
        if ((a < 0.0 && b >= 0.0) || (a > 0.0 && b <= 0.0)) out.push_back(k);
    }
    return out;
}

IdentityReport identity_report(const Analysis& a, const Tolerances& tol, const ReportToggles& on) {
    IdentityReport r;
    if (on.coi) {
        const Vector m = a.sys.inertias;
        add(r, "coi_angle", max_abs(a.sys.angle * m), tol.coi);
        add(r, "coi_speed", max_abs(a.sys.speed * m), tol.coi);
    }
    if (on.conservation) {
        for (const auto& e : a.imtes) add(r, "conservation_" + e.entity, post_fault_drift(e), tol.conservation);
        if (a.emte) add(r, "conservation_EMTE_CR", post_fault_drift(*a.emte), tol.conservation);
        for (const auto& e : a.igmtes) add(r, "conservation_" + e.entity, post_fault_drift(e), tol.conservation);
    }
    if (!a.group) return r;

    if (on.ecim) {
        const SuperpositionCheck s = ecim_superposition_check(a.ecims, *a.emte);
        add(r, "ecim_superposition_ke", s.ke, tol.ke_identity);
        add(r, "ecim_superposition_pe", s.pe, tol.superposition);
        add(r, "ecim_superposition_total", s.total, tol.superposition);
        add(r, "inner_group_cross_term", max_abs(inner_group_cross_term(*a.inner, *a.em)), tol.cross_term);
    }
    if (on.tcim) {
        Deviation scale;
        Vector sum = Vector::Zero(a.emte->samples());
        for (const auto& t : a.tcims) {
            add_worse(scale, max_relative(t.total, (t.inertia / t.group_inertia) * a.emte->total));
            sum += t.total;
        }
        add(r, "tcim_scale_down", scale, tol.tcim);
        add(r, "tcim_superposition", max_relative(sum, a.emte->total), tol.tcim);
    }
    if (on.dlp) {
        // EM report sits right after the per-machine ones; TCIMs follow it.
        const auto em_it = std::find_if(a.dlps.begin(), a.dlps.end(),
                                        [](const DlpReport& d) { return d.entity == "EMTE_CR"; });
        Deviation mismatch;
        for (auto it = std::next(em_it); it != a.dlps.end(); ++it) {
            if (it->index != em_it->index) {
                mismatch.value += 1.0;
                mismatch.worst_index = it->index.value_or(0);
            }
        }
        add(r, "tcim_dlp_mismatch", mismatch, 0.0);

        if (a.group->members.size() == 2) {
            // ΔKE of every member changes sign in the same interval as ω_a − ω_b.
            const Index c0 = a.sys.column_of(a.group->members[0]);
            const Index c1 = a.sys.column_of(a.group->members[1]);
            const Vector diff = a.sys.speed.col(c0) - a.sys.speed.col(c1);
            const auto eq = sign_change_intervals(diff, a.sys.clear_index);
            Deviation missing;
            for (const auto& d : a.delta_vs) {
                const auto dke = sign_change_intervals(d.dke, a.sys.clear_index);
                for (Index k : eq) {
                    if (std::find(dke.begin(), dke.end(), k) == dke.end()) {
                        missing.value += 1.0;
                        missing.worst_index = k;
                    }
                }
            }
            add(r, "delta_ke_simultaneity", missing, 0.0);
        }
    }
    return r;
}

IdentityReport newton_report(const std::vector<newton::DemoRow>& rows, const Tolerances& tol) {
    IdentityReport r;
    if (rows.empty()) return r;
    Deviation d1;
    Deviation d2;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const double e1 = std::abs(rows[k].e1.total - rows[0].e1.total) / std::abs(rows[0].e1.total);
        const double e2 = std::abs(rows[k].e2.total - rows[0].e2.total) / std::abs(rows[0].e2.total);
        if (e1 > d1.value) d1 = Deviation{e1, static_cast<Index>(k)};
        if (e2 > d2.value) d2 = Deviation{e2, static_cast<Index>(k)};
    }
    add(r, "ball_1_conservation", d1, tol.newton);
    add(r, "ball_2_conservation", d2, tol.newton);
    return r;
}

CsvTable trajectory_table(const Trajectory& traj, const SystemModel& model) {
    CsvTable t;
    t.add_column("t", to_std(traj.times));
    for (Index c = 0; c < traj.machines(); ++c) {
        t.add_column("delta_" + std::to_string(model.machines[static_cast<std::size_t>(c)].id),
                     column(traj.angles, c));
    }
    for (Index c = 0; c < traj.machines(); ++c) {
        t.add_column("omega_" + std::to_string(model.machines[static_cast<std::size_t>(c)].id),
                     column(traj.speeds, c));
    }
    return t;
}

CsvTable frame_table(const FrameSeries& fs) {
    CsvTable t;
    t.add_column("t", to_std(fs.times));
    const std::string sfx = "_" + fs.reference;
    const std::pair<const char*, const Matrix*> blocks[] = {
        {"delta_", &fs.angle}, {"omega_", &fs.speed}, {"f_", &fs.force}, {"fpf_", &fs.force_pf}};
    for (const auto& [prefix, m] : blocks) {
        for (Index c = 0; c < fs.columns(); ++c) {
            t.add_column(prefix + std::to_string(fs.machines[static_cast<std::size_t>(c)]) + sfx, column(*m, c));
        }
    }
    return t;
}

CsvTable equivalent_machine_table(const EquivalentMachineSeries& em) {
    CsvTable t;
    t.add_column("t", to_std(em.times));
    t.add_column("delta_CR", to_std(em.angle));
    t.add_column("omega_CR", to_std(em.speed));
    t.add_column("f_CR", to_std(em.force));
    t.add_column("fpf_CR", to_std(em.force_pf));
    return t;
}

CsvTable energy_table(const EnergySeries& e) {
    CsvTable t;
    t.add_column("t", to_std(e.times));
    t.add_column("ke", to_std(e.ke));
    t.add_column("pe", to_std(e.pe));
    t.add_column("total", to_std(e.total));
    return t;
}

CsvTable ecim_table(const EcimSeries& e) {
    CsvTable t;
    t.add_column("t", to_std(e.times));
    t.add_column("ke", to_std(e.ke));
    t.add_column("pe", to_std(e.pe));
    t.add_column("total", to_std(e.total));
    t.add_column("reconstructable", mask(e.reconstructable));
    return t;
}

CsvTable ecim_trajectory_table(const EcimTrajectory& tr) {
    CsvTable t;
    t.add_column("t", to_std(tr.times));
    t.add_column("delta_ec", to_std(tr.angle));
    t.add_column("omega_ec", to_std(tr.velocity));
    t.add_column("valid", mask(tr.valid));
    return t;
}

CsvTable tcim_table(const TcimSeries& s) {
    CsvTable t;
    t.add_column("t", to_std(s.times));
    t.add_column("ke", to_std(s.ke));
    t.add_column("pe", to_std(s.pe));
    t.add_column("total", to_std(s.total));
    t.add_column("delta_CR", to_std(s.angle));
    t.add_column("omega_CR", to_std(s.speed));
    t.add_column("fpf", to_std(s.force_pf));
    return t;
}

CsvTable delta_v_table(const DeltaVSeries& d) {
    CsvTable t;
    t.add_column("t", to_std(d.times));
    t.add_column("dke", to_std(d.dke));
    t.add_column("dpe", to_std(d.dpe));
    t.add_column("dtotal", to_std(d.dtotal));
    return t;
}

CsvTable newton_table(const std::vector<newton::DemoRow>& rows) {
    const char* names[] = {"t",     "h1",  "v1",     "h2",  "v2",  "ke1",    "pe1", "te1", "ke2",
                           "pe2",   "te2", "ke3", "pe3", "te3"};
    std::vector<std::vector<double>> cols(std::size(names));
    for (const auto& r : rows) {
        const double vals[] = {r.t,       r.ball1.h, r.ball1.v, r.ball2.h, r.ball2.v, r.e1.ke,   r.e1.pe,
                               r.e1.total, r.e2.ke,  r.e2.pe,   r.e2.total, r.e3.ke,  r.e3.pe,   r.e3.total};
        for (std::size_t c = 0; c < cols.size(); ++c) cols[c].push_back(vals[c]);
    }
    CsvTable t;
    for (std::size_t c = 0; c < cols.size(); ++c) t.add_column(names[c], std::move(cols[c]));
    return t;
}

std::string dlp_json(const std::vector<DlpReport>& dlps) {
    ordered_json arr = ordered_json::array();
    for (const auto& d : dlps) {
        ordered_json e;
        e["entity"] = d.entity;
        e["index"] = d.index ? ordered_json(*d.index) : ordered_json(nullptr);
        e["time"] = d.time ? ordered_json(*d.time) : ordered_json(nullptr);
        e["separated"] = d.separated;
        arr.push_back(e);
    }
    return arr.dump(2) + "\n";
}

}  // namespace tstab
