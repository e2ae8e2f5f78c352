#include "tstab/energy.hpp"

#include <cmath>

namespace tstab {

Vector accumulate_potential(const Vector& approach_angle, const Vector& approach_force, const Vector& angle,
                            const Vector& force) {
    if (approach_angle.size() != approach_force.size() || angle.size() != force.size()) {
        throw ValidationError("accumulate_potential: angle/force length mismatch");
    }
    double pe = 0.0;
    for (Index s = 1; s < approach_angle.size(); ++s) {
        pe -= 0.5 * (approach_force[s - 1] + approach_force[s]) * (approach_angle[s] - approach_angle[s - 1]);
    }
    Vector out(angle.size());
    if (angle.size() == 0) return out;
    out[0] = pe;
    for (Index k = 1; k < angle.size(); ++k) {
        pe -= 0.5 * (force[k - 1] + force[k]) * (angle[k] - angle[k - 1]);
        out[k] = pe;
    }
    return out;
}

namespace {

EnergySeries newtonian(std::string entity, const Vector& times, Index clear_index, double inertia,
                       const Vector& speed, const Vector& angle, const Vector& force_pf, const Vector& approach_angle,
                       const Vector& approach_force) {
    EnergySeries e;
    e.entity = std::move(entity);
    e.times = times;
    e.clear_index = clear_index;
    e.ke = 0.5 * inertia * speed.array().square();
    e.pe = accumulate_potential(approach_angle, approach_force, angle, force_pf);
    e.total = e.ke + e.pe;
    return e;
}

}  // namespace

EnergySeries imte(const FrameSeries& fs, int machine) {
    if (!fs.sep_angle) throw ValidationError("imte: frame has no post-fault SEP anchor");
    const Index c = fs.column_of(machine);
    return newtonian("IMTE_" + std::to_string(machine), fs.times, fs.clear_index, fs.inertias[c], fs.speed.col(c),
                     fs.angle.col(c), fs.force_pf.col(c), fs.approach_angle.col(c), fs.approach_force_pf.col(c));
}

EnergySeries emte(const EquivalentMachineSeries& em) {
    if (!em.sep_angle) throw ValidationError("emte: equivalent machine has no post-fault SEP anchor");
    return newtonian("EMTE_CR", em.times, em.clear_index, em.inertia, em.speed, em.angle, em.force_pf,
                     em.approach_angle, em.approach_force_pf);
}

EnergySeries igmte(const FrameSeries& inner, int machine) {
    if (!inner.sep_angle) throw ValidationError("igmte: inner-group frame has no post-fault SEP anchor");
    const Index c = inner.column_of(machine);
    return newtonian("IGMTE_" + std::to_string(machine), inner.times, inner.clear_index, inner.inertias[c],
                     inner.speed.col(c), inner.angle.col(c), inner.force_pf.col(c), inner.approach_angle.col(c),
                     inner.approach_force_pf.col(c));
}

void require_same_grid(const EnergySeries& a, const EnergySeries& b, const char* op) {
    if (a.samples() != b.samples() || a.times.size() != b.times.size() || a.times != b.times) {
        throw ValidationError(std::string(op) + ": series " + a.entity + " and " + b.entity +
                              " are on different sample grids");
    }
}

EnergySeries smte(const std::vector<EnergySeries>& imtes) {
    if (imtes.empty()) throw ValidationError("smte: no series");
    EnergySeries out = imtes.front();
    out.entity = "SMTE";
    for (std::size_t k = 1; k < imtes.size(); ++k) {
        require_same_grid(out, imtes[k], "smte");
        out.ke += imtes[k].ke;
        out.pe += imtes[k].pe;
        out.total += imtes[k].total;
    }
    return out;
}

DlpReport detect_dlp(const Vector& times, const Vector& force_pf, const Vector& angle, Index clear_index,
                     std::string entity) {
    if (times.size() != force_pf.size() || times.size() != angle.size()) {
        throw ValidationError("detect_dlp: series length mismatch");
    }
    DlpReport report;
    report.entity = std::move(entity);
    for (Index k = std::max<Index>(clear_index + 1, 1); k < times.size(); ++k) {
        if (force_pf[k - 1] < 0.0 && force_pf[k] >= 0.0 && angle[k] > angle[k - 1]) {
            report.index = k;
            report.time = times[k];
            report.separated = true;
            break;
        }
    }
    return report;
}

Deviation post_fault_drift(const EnergySeries& e) {
    Deviation d;
    const Index k0 = e.clear_index;
    if (k0 >= e.samples()) return d;
    const double v0 = e.total[k0];
    double scale = std::abs(v0);
    for (Index k = k0; k < e.samples(); ++k) scale = std::max(scale, e.ke[k]);
    if (scale == 0.0) return d;
    for (Index k = k0; k < e.samples(); ++k) {
        const double dev = std::abs(e.total[k] - v0) / scale;
        if (dev > d.value) {
            d.value = dev;
            d.worst_index = k;
        }
    }
    return d;
}

}  // namespace tstab
