#include "tstab/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tstab {

namespace {

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

}  // namespace

EcimSeries ecim_energy(const EnergySeries& imte_i, const EnergySeries& igmte_i) {
    require_same_grid(imte_i, igmte_i, "ecim_energy");
    EcimSeries e;
    e.entity = "ECIMTE" + imte_i.entity.substr(imte_i.entity.find('_'));
    e.times = imte_i.times;
    e.clear_index = imte_i.clear_index;
    e.ke = imte_i.ke - igmte_i.ke;
    e.pe = imte_i.pe - igmte_i.pe;
    e.total = e.ke + e.pe;
    e.reconstructable.resize(static_cast<std::size_t>(e.ke.size()));
    for (Index k = 0; k < e.ke.size(); ++k) e.reconstructable[static_cast<std::size_t>(k)] = e.ke[k] >= 0.0;
    return e;
}

SuperpositionCheck ecim_superposition_check(const std::vector<EcimSeries>& ecims, const EnergySeries& emte) {
    if (ecims.empty()) throw ValidationError("ecim_superposition_check: no ECIM series");
    Vector ke = Vector::Zero(emte.samples());
    Vector pe = Vector::Zero(emte.samples());
    for (const auto& e : ecims) {
        if (e.ke.size() != emte.samples() || e.times != emte.times) {
            throw ValidationError("ecim_superposition_check: " + e.entity + " is on a different sample grid");
        }
        ke += e.ke;
        pe += e.pe;
    }
    return SuperpositionCheck{max_relative(ke + pe, emte.total), max_relative(ke, emte.ke),
                              max_relative(pe, emte.pe)};
}

Vector inner_group_cross_term(const FrameSeries& inner, const EquivalentMachineSeries& em) {
    if (inner.samples() != em.samples()) throw ValidationError("cross term: sample count mismatch");
    auto step = [&](const Matrix& angle, const Vector& f, Index k) {
        double moment = 0.0;
        for (Index c = 0; c < angle.cols(); ++c) moment += inner.inertias[c] * (angle(k, c) - angle(k - 1, c));
        return 0.5 * (f[k - 1] + f[k]) / em.inertia * moment;
    };
    Vector out = Vector::Zero(inner.samples());
    if (inner.sep_angle) {
        double worst = 0.0;
        for (Index s = 1; s < inner.approach_angle.rows(); ++s) {
            worst = std::max(worst, std::abs(step(inner.approach_angle, em.approach_force_pf, s)));
        }
        if (out.size() > 0) out[0] = worst;
    }
    for (Index k = 1; k < inner.samples(); ++k) out[k] = step(inner.angle, em.force_pf, k);
    return out;
}

Index EcimTrajectory::defined_samples() const {
    Index n = 0;
    for (bool v : valid) n += v ? 1 : 0;
    return n;
}

EcimTrajectory ecim_reconstruct_trajectory(const EnergySeries& imte_i, const EnergySeries& igmte_i,
                                           const FrameSeries& sys, int machine) {
    require_same_grid(imte_i, igmte_i, "ecim_reconstruct_trajectory");
    const Index c = sys.column_of(machine);
    if (sys.samples() != imte_i.samples()) {
        throw ValidationError("ecim_reconstruct_trajectory: frame and energy grids differ");
    }
    const double inertia = sys.inertias[c];
    const Index n = sys.samples();
    const double nan = std::numeric_limits<double>::quiet_NaN();

    EcimTrajectory tr;
    tr.entity = "ECIMTR_" + std::to_string(machine);
    tr.times = sys.times;
    tr.angle = Vector::Constant(n, nan);
    tr.velocity = Vector::Constant(n, nan);
    tr.valid.assign(static_cast<std::size_t>(n), false);

    double current = n > 0 ? sys.angle(0, c) : 0.0;
    double last_defined = current;
    for (Index k = 0; k < n; ++k) {
        const double ke = imte_i.ke[k] - igmte_i.ke[k];
        if (ke < 0.0) {
            tr.broken = true;
            current = last_defined;
            continue;
        }
        const double w = sys.speed(k, c);
        const double sign = w > 0.0 ? 1.0 : (w < 0.0 ? -1.0 : 0.0);
        const double v = sign * std::sqrt(2.0 * ke / inertia);
        tr.valid[static_cast<std::size_t>(k)] = true;
        tr.velocity[k] = v;
        tr.angle[k] = current;
        last_defined = current;
        if (k + 1 < n) current += v * (sys.times[k + 1] - sys.times[k]);
    }
    return tr;
}

TcimSeries tcim(const EquivalentMachineSeries& em, const EnergySeries& emte, int machine, double inertia) {
    if (!(inertia > 0.0)) throw ValidationError("tcim: inertia must be > 0");
    if (std::find(em.members.begin(), em.members.end(), machine) == em.members.end()) {
        throw ValidationError("tcim: machine " + std::to_string(machine) + " is not in the group");
    }
    if (emte.samples() != em.samples()) throw ValidationError("tcim: EMTE and motion grids differ");
    const double ratio = inertia / em.inertia;
    TcimSeries t;
    t.entity = "TCIMTE_" + std::to_string(machine);
    t.machine = machine;
    t.inertia = inertia;
    t.group_inertia = em.inertia;
    t.times = em.times;
    t.clear_index = em.clear_index;
    t.ke = 0.5 * inertia * em.speed.array().square();
    t.pe = ratio * emte.pe;
    t.total = ratio * emte.total;
    t.angle = em.angle;
    t.speed = em.speed;
    t.force_pf = ratio * em.force_pf;
    return t;
}

DeltaVSeries delta_v(const EnergySeries& imte_i, const TcimSeries& tcim_i) {
    if (imte_i.samples() != tcim_i.total.size() || imte_i.times != tcim_i.times) {
        throw ValidationError("delta_v: IMTE and TCIMTE are on different sample grids");
    }
    DeltaVSeries d;
    d.entity = "DeltaV_" + std::to_string(tcim_i.machine);
    d.times = imte_i.times;
    d.dke = imte_i.ke - tcim_i.ke;
    d.dpe = imte_i.pe - tcim_i.pe;
    d.dtotal = imte_i.total - tcim_i.total;
    return d;
}

std::vector<Index> zero_crossings(const Vector& v, Index from) {
    std::vector<Index> out;
    for (Index k = std::max<Index>(from, 1); k < v.size(); ++k) {
        const double a = v[k - 1];
        const double b = v[k];
        if (b == 0.0 && a != 0.0) {
            out.push_back(k);
        } else if ((a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0)) {
            out.push_back(std::abs(a) < std::abs(b) ? k - 1 : k);
        }
    }
    return out;
}

std::vector<Index> equal_speed_samples(const FrameSeries& sys, const GroupSpec& g, Index from) {
    if (g.members.size() != 2) {
        throw ValidationError("equal_speed_samples: defined for two-machine groups only");
    }
    const Vector diff = sys.speed.col(sys.column_of(g.members[0])) - sys.speed.col(sys.column_of(g.members[1]));
    return zero_crossings(diff, from);
}

}  // namespace tstab
