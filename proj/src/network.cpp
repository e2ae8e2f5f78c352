#include "tstab/network.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <string>

namespace tstab {

const char* stage_name(Stage s) {
    switch (s) {
    case Stage::PreFault: return "pre";
    case Stage::DuringFault: return "fault";
    case Stage::PostFault: return "post";
    }
    return "?";
}

const ReducedNetwork& SystemModel::network(Stage s) const {
    switch (s) {
    case Stage::PreFault: return pre_fault;
    case Stage::DuringFault: return during_fault;
    case Stage::PostFault: return post_fault;
    }
    return post_fault;
}

Vector SystemModel::inertias() const {
    Vector m(size());
    for (Index i = 0; i < size(); ++i) m[i] = machines[static_cast<std::size_t>(i)].inertia;
    return m;
}

Vector SystemModel::mech_powers() const {
    Vector p(size());
    for (Index i = 0; i < size(); ++i) p[i] = machines[static_cast<std::size_t>(i)].mech_power;
    return p;
}

Vector SystemModel::emfs() const {
    Vector e(size());
    for (Index i = 0; i < size(); ++i) e[i] = machines[static_cast<std::size_t>(i)].emf;
    return e;
}

double SystemModel::total_inertia() const { return inertias().sum(); }

void validate(const ReducedNetwork& net, Index machines, const char* label) {
    const std::string name(label);
    if (net.conductance.rows() != machines || net.conductance.cols() != machines ||
        net.susceptance.rows() != machines || net.susceptance.cols() != machines) {
        throw ValidationError(name + " network: dimensions must equal machine count " +
                              std::to_string(machines));
    }
    if (!net.conductance.allFinite() || !net.susceptance.allFinite()) {
        throw ValidationError(name + " network: non-finite admittance entry");
    }
    const double tol = 1e-12;
    if ((net.conductance - net.conductance.transpose()).cwiseAbs().maxCoeff() > tol ||
        (net.susceptance - net.susceptance.transpose()).cwiseAbs().maxCoeff() > tol) {
        throw ValidationError(name + " network: matrices must be symmetric within 1e-12");
    }
}

void validate(const SystemModel& model) {
    const Index n = model.size();
    if (n == 0) throw ValidationError("system: no machines");
    for (Index i = 0; i < n; ++i) {
        const auto& m = model.machines[static_cast<std::size_t>(i)];
        if (m.id != static_cast<int>(i)) {
            throw ValidationError("machines: ids must be unique and dense 0..n-1 (found " +
                                  std::to_string(m.id) + " at position " + std::to_string(i) + ")");
        }
        if (!(m.inertia > 0.0)) throw ValidationError("machine " + std::to_string(i) + ": inertia must be > 0");
        if (!(m.emf > 0.0)) throw ValidationError("machine " + std::to_string(i) + ": emf must be > 0");
        if (!std::isfinite(m.mech_power)) {
            throw ValidationError("machine " + std::to_string(i) + ": mechanical power not finite");
        }
    }
    validate(model.pre_fault, n, "pre");
    validate(model.during_fault, n, "fault");
    validate(model.post_fault, n, "post");
    if (!(model.base_freq > 0.0)) throw ValidationError("base_freq must be > 0");
}

ComplexMatrix RawNetwork::augmented_admittance() const {
    const Index nm = machine_count();
    std::map<int, Index> bus_index;
    Index next = nm;
    for (int bus : buses) {
        if (std::find(bolted_buses.begin(), bolted_buses.end(), bus) != bolted_buses.end()) continue;
        if (!bus_index.emplace(bus, next).second) {
            throw ValidationError("network: duplicate bus " + std::to_string(bus));
        }
        ++next;
    }
    for (int bus : bolted_buses) {
        if (std::find(buses.begin(), buses.end(), bus) == buses.end()) {
            throw ValidationError("network: faulted bus " + std::to_string(bus) + " does not exist");
        }
    }
    auto lookup = [&](int bus) -> std::optional<Index> {
        if (std::find(buses.begin(), buses.end(), bus) == buses.end()) {
            throw ValidationError("network: unknown bus " + std::to_string(bus));
        }
        auto it = bus_index.find(bus);
        if (it == bus_index.end()) return std::nullopt;  // bolted to ground
        return it->second;
    };

    ComplexMatrix y = ComplexMatrix::Zero(next, next);
    auto stamp_series = [&](std::optional<Index> a, std::optional<Index> b, std::complex<double> ys) {
        if (a) y(*a, *a) += ys;
        if (b) y(*b, *b) += ys;
        if (a && b) {
            y(*a, *b) -= ys;
            y(*b, *a) -= ys;
        }
    };

    for (const auto& br : branches) {
        const std::complex<double> z(br.r, br.x);
        if (std::abs(z) == 0.0) {
            throw ValidationError("branch " + std::to_string(br.from) + "-" + std::to_string(br.to) +
                                  ": zero impedance");
        }
        const auto a = lookup(br.from);
        const auto b = lookup(br.to);
        stamp_series(a, b, 1.0 / z);
        const std::complex<double> half_charging(0.0, 0.5 * br.b);
        if (a) y(*a, *a) += half_charging;
        if (b) y(*b, *b) += half_charging;
    }
    for (const auto& load : loads) {
        if (const auto a = lookup(load.bus)) y(*a, *a) += std::complex<double>(load.g, load.b);
    }
    for (std::size_t k = 0; k < machine_links.size(); ++k) {
        const auto& link = machine_links[k];
        if (link.machine != static_cast<int>(k)) {
            throw ValidationError("machine_links: entries must be ordered by machine id 0..n-1");
        }
        if (!(link.xd_prime > 0.0)) {
            throw ValidationError("machine " + std::to_string(k) + ": xd_prime must be > 0");
        }
        stamp_series(static_cast<Index>(k), lookup(link.bus), 1.0 / std::complex<double>(0.0, link.xd_prime));
    }
    return y;
}

ReducedNetwork kron_reduce(const ComplexMatrix& augmented, Index machine_nodes) {
    const Index n = augmented.rows();
    const Index nb = n - machine_nodes;
    ComplexMatrix reduced = augmented.topLeftCorner(machine_nodes, machine_nodes);
    if (nb > 0) {
        const ComplexMatrix ybb = augmented.bottomRightCorner(nb, nb);
        Eigen::FullPivLU<ComplexMatrix> lu(ybb);
        const double scale = ybb.cwiseAbs().maxCoeff();
        lu.setThreshold(1e-13);
        if (!lu.isInvertible() || scale == 0.0) {
            throw ValidationError("kron_reduce: interior admittance block is singular "
                                  "(islanded or degenerate network)");
        }
        reduced -= augmented.topRightCorner(machine_nodes, nb) *
                   lu.solve(augmented.bottomLeftCorner(nb, machine_nodes));
    }
    // Symmetrize away the rounding left by the solve.
    reduced = 0.5 * (reduced + reduced.transpose()).eval();
    return ReducedNetwork{reduced.real(), reduced.imag()};
}

ReducedNetwork kron_reduce(const RawNetwork& raw) {
    return kron_reduce(raw.augmented_admittance(), raw.machine_count());
}

Vector electrical_power(const Vector& angles, const ReducedNetwork& net, const Vector& emf) {
    const Index n = emf.size();
    if (angles.size() != n || net.size() != n) {
        throw ValidationError("electrical_power: dimension mismatch");
    }
    Vector pe(n);
    for (Index i = 0; i < n; ++i) {
        double acc = emf[i] * emf[i] * net.conductance(i, i);
        for (Index j = 0; j < n; ++j) {
            if (j == i) continue;
            const double d = angles[i] - angles[j];
            acc += emf[i] * emf[j] * (net.conductance(i, j) * std::cos(d) + net.susceptance(i, j) * std::sin(d));
        }
        pe[i] = acc;
    }
    return pe;
}

namespace {

Vector emf_vector(const std::vector<MachineParams>& machines) {
    Vector e(static_cast<Index>(machines.size()));
    for (std::size_t i = 0; i < machines.size(); ++i) e[static_cast<Index>(i)] = machines[i].emf;
    return e;
}

Vector inertia_vector(const std::vector<MachineParams>& machines) {
    Vector m(static_cast<Index>(machines.size()));
    for (std::size_t i = 0; i < machines.size(); ++i) m[static_cast<Index>(i)] = machines[i].inertia;
    return m;
}

Vector coi_force(const Vector& p, const Vector& m) {
    return p - m * (p.sum() / m.sum());
}

}  // namespace

Vector electrical_power(const Vector& angles, const ReducedNetwork& net,
                        const std::vector<MachineParams>& machines) {
    return electrical_power(angles, net, emf_vector(machines));
}

Vector accelerating_power(const Vector& angles, const ReducedNetwork& net,
                          const std::vector<MachineParams>& machines) {
    Vector p = -electrical_power(angles, net, machines);
    for (std::size_t i = 0; i < machines.size(); ++i) p[static_cast<Index>(i)] += machines[i].mech_power;
    return p;
}

Matrix electrical_power_jacobian(const Vector& angles, const ReducedNetwork& net, const Vector& emf) {
    const Index n = emf.size();
    Matrix jac = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index k = 0; k < n; ++k) {
            if (k == i) continue;
            const double d = angles[i] - angles[k];
            const double term =
                emf[i] * emf[k] * (-net.conductance(i, k) * std::sin(d) + net.susceptance(i, k) * std::cos(d));
            jac(i, k) = -term;
            jac(i, i) += term;
        }
    }
    return jac;
}

double sep_residual(const ReducedNetwork& net, const std::vector<MachineParams>& machines,
                    const Vector& angles) {
    const Vector p = accelerating_power(angles, net, machines);
    return coi_force(p, inertia_vector(machines)).cwiseAbs().maxCoeff();
}

SepResult sep_solve(const ReducedNetwork& net, const std::vector<MachineParams>& machines,
                    const Vector& initial_angles, const SepOptions& opts) {
    const Index n = static_cast<Index>(machines.size());
    if (initial_angles.size() != n || net.size() != n) {
        throw ValidationError("sep_solve: dimension mismatch");
    }
    const Vector m = inertia_vector(machines);
    const Vector e = emf_vector(machines);
    const double mt = m.sum();

    auto coi_offset = [&](const Vector& d) { return m.dot(d) / mt; };
    auto residual = [&](const Vector& d) {
        return std::max(sep_residual(net, machines, d), std::abs(coi_offset(d)));
    };

    Vector angles = initial_angles;
    double res = residual(angles);
    if (res <= opts.tolerance) return SepResult{angles, 0, res};

    angles.array() -= coi_offset(angles);
    res = residual(angles);
    int iter = 0;
    while (res > opts.tolerance) {
        if (iter == opts.max_iterations) {
            throw ConvergenceError("sep_solve: no equilibrium within " + std::to_string(opts.max_iterations) +
                                       " iterations (residual " + std::to_string(res) + ")",
                                   iter, res);
        }
        ++iter;
        // Rows 0..n-2: COI-frame accelerating power; last row: Σ M_i δ_i / M_T.
        const Vector p = accelerating_power(angles, net, machines);
        Vector f = coi_force(p, m);
        const Matrix dp = -electrical_power_jacobian(angles, net, e);
        Matrix jac = dp - m * (dp.colwise().sum() / mt);
        f[n - 1] = coi_offset(angles);
        jac.row(n - 1) = m.transpose() / mt;

        const Vector step = jac.fullPivLu().solve(-f);
        if (!step.allFinite()) {
            throw ConvergenceError("sep_solve: singular Jacobian", iter, res);
        }
        double alpha = 1.0;
        Vector trial = angles + step;
        double trial_res = residual(trial);
        for (int halvings = 0; trial_res > res && halvings < 20; ++halvings) {
            alpha *= 0.5;
            trial = angles + alpha * step;
            trial_res = residual(trial);
        }
        angles = trial;
        res = trial_res;
    }
    return SepResult{angles, iter, res};
}

}  // namespace tstab
