// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "tstab/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

using namespace tstab;

namespace {

std::string data(const std::string& name) { return std::string(TSTAB_DATA_DIR) + "/" + name; }

struct Outcome {
    bool pass = false;
    std::string detail;
};

// ECIM reconstruction compares against Machine-CR with this integrator tolerance.
constexpr double kIntegratorTolerance = 1e-5;

Outcome newton_demo() {
    using namespace newton;
    const auto rows = demo_rows(demo_ball_1(), demo_ball_2(), 0.001);
    const DemoRow& r0 = rows.front();
    bool ok = std::abs(r0.e1.total - 78.4) <= 1e-12 && std::abs(r0.e2.total - 24.0) <= 1e-12 &&
              std::abs(r0.e3.total - 54.4) <= 1e-12;
    double worst = 0.0;
    for (const auto& r : rows) {
        worst = std::max(worst, std::abs(r.e1.total - r0.e1.total) / r0.e1.total);
        worst = std::max(worst, std::abs(r.e2.total - r0.e2.total) / r0.e2.total);
    }
    ok = ok && worst <= 1e-12;
    std::ostringstream s;
    s << "V1=" << r0.e1.total << " V2=" << r0.e2.total << " V3(0)=" << r0.e3.total << " drift=" << worst;
    return {ok, s.str()};
}

double terminal_error(const Trajectory& tr, const Trajectory& ref) {
    const Index k = tr.samples() - 1;
    const Index kr = ref.samples() - 1;
    return std::max((tr.angles.row(k) - ref.angles.row(kr)).cwiseAbs().maxCoeff(),
                    (tr.speeds.row(k) - ref.speeds.row(kr)).cwiseAbs().maxCoeff());
}

Outcome simulator_order() {
    const Scenario sc = load_scenario(data("wscc9.json"));
    const Trajectory ref = simulate(with_dt(sc, 1e-4));
    const double e2 = terminal_error(simulate(with_dt(sc, 2e-3)), ref);
    const double e1 = terminal_error(simulate(with_dt(sc, 1e-3)), ref);
    const double ratio = e2 / e1;
    std::ostringstream s;
    s << "err(2ms)=" << e2 << " err(1ms)=" << e1 << " ratio=" << ratio;
    return {ratio >= 12.0 && ratio <= 20.0, s.str()};
}

Outcome equal_area() {
    const Scenario sc = load_scenario(data("smib.json"));
    // Lossless two-machine system: equivalent single machine with M1·M2/(M1+M2).
    const double m1 = sc.model.machines[0].inertia;
    const double m2 = sc.model.machines[1].inertia;
    const double meq = m1 * m2 / (m1 + m2);
    const double pm = (m2 * sc.model.machines[0].mech_power - m1 * sc.model.machines[1].mech_power) / (m1 + m2);
    const double pre = sc.model.pre_fault.susceptance(0, 1);
    const double post = sc.model.post_fault.susceptance(0, 1);
    const double d0 = std::asin(pm / pre);
    const double dmax = std::numbers::pi - std::asin(pm / post);
    const double dcr = std::acos((pm * (dmax - d0) + post * std::cos(dmax)) / post);
    const double analytic = std::sqrt(2.0 * meq * (dcr - d0) / pm);
    const CriticalClearing cc = find_critical_clearing(sc, sc.dt);
    std::ostringstream s;
    s << "t_cr analytic=" << analytic << " found=" << cc.time << " (" << cc.simulations << " runs)";
    return {std::abs(cc.time - analytic) <= 2.0 * sc.dt, s.str()};
}

const Analysis& bundled() {
    static const Analysis a = [] {
        const Scenario sc = load_scenario(data("wscc9.json"));
        return analyze(sc, sc.group);
    }();
    return a;
}

const Analysis& separating() {
    static const Analysis a = [] {
        const Scenario sc = load_scenario(data("wscc9_separating.json"));
        return analyze(sc, sc.group);
    }();
    return a;
}

Outcome coi_closure() {
    const FrameSeries& fs = bundled().sys;
    const double a = (fs.angle * fs.inertias).cwiseAbs().maxCoeff();
    const double w = (fs.speed * fs.inertias).cwiseAbs().maxCoeff();
    std::ostringstream s;
    s << "max|sum M d|=" << a << " max|sum M w|=" << w;
    return {a <= 1e-9 && w <= 1e-9, s.str()};
}

Outcome ke_identity() {
    const Scenario sc = load_scenario(data("wscc9.json"));
    const Analysis base = analyze(sc, {});
    double worst = 0.0;
    int groups = 0;
    const int n = static_cast<int>(sc.model.size());
    for (int mask = 1; mask < (1 << n); ++mask) {
        std::vector<int> members;
        for (int i = 0; i < n; ++i) {
            if (mask & (1 << i)) members.push_back(i);
        }
        const GroupSpec g = GroupSpec::from(sc.model, members);
        const EquivalentMachineSeries em = equivalent_machine(base.sys, g);
        const FrameSeries in = inner_group(base.sys, g);
        for (Index k = 0; k < base.sys.samples(); ++k) {
            double lhs = 0.0;
            for (std::size_t c = 0; c < members.size(); ++c) {
                const Index s = base.sys.column_of(members[c]);
                const double m = base.sys.inertias[s];
                lhs += 0.5 * m * base.sys.speed(k, s) * base.sys.speed(k, s);
                lhs -= 0.5 * m * in.speed(k, static_cast<Index>(c)) * in.speed(k, static_cast<Index>(c));
            }
            const double rhs = 0.5 * em.inertia * em.speed[k] * em.speed[k];
            worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
        }
        ++groups;
    }
    std::ostringstream s;
    s << groups << " groups, max relative deviation=" << worst;
    return {worst <= 1e-10, s.str()};
}

Outcome ecim_superposition() {
    const Analysis& a = bundled();
    const SuperpositionCheck s = ecim_superposition_check(a.ecims, *a.emte);
    const double cross = inner_group_cross_term(*a.inner, *a.em).cwiseAbs().maxCoeff();
    std::ostringstream d;
    d << "dt=" << a.scenario.dt << " total=" << s.total.value << " pe=" << s.pe.value << " ke=" << s.ke.value
      << " cross=" << cross;
    return {a.scenario.dt == 1e-3 && s.total.value <= 1e-6 && cross <= 1e-12, d.str()};
}

Outcome tcim_identities() {
    const IdentityReport r = identity_report(bundled(), Tolerances{}, ReportToggles{false, false, false, true, false});
    const CheckEntry* scale = r.find("tcim_scale_down");
    const CheckEntry* sum = r.find("tcim_superposition");
    std::ostringstream s;
    s << "scale-down=" << scale->value << " superposition=" << sum->value;
    return {scale->value <= 1e-12 && sum->value <= 1e-12, s.str()};
}

Outcome conservation() {
    const Analysis& a = bundled();
    double worst = 0.0;
    std::string who;
    auto take = [&](const EnergySeries& e) {
        const double d = post_fault_drift(e).value;
        if (d >= worst) {
            worst = d;
            who = e.entity;
        }
    };
    for (const auto& e : a.imtes) take(e);
    take(*a.emte);
    for (const auto& e : a.igmtes) take(e);
    std::ostringstream s;
    s << "dt=" << a.scenario.dt << " worst drift=" << worst << " (" << who << ")";
    return {a.scenario.dt == 1e-3 && worst <= 1e-4, s.str()};
}

Outcome ecim_failure() {
    const Analysis& a = separating();
    int lag_checked = 0;
    int lag_violations = 0;
    bool negative_ke = false;
    bool broken = false;
    double closest = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < a.ecim_trajectories.size(); ++k) {
        const int id = a.group->members[k];
        const Index c = a.sys.column_of(id);
        const EcimTrajectory& tr = a.ecim_trajectories[k];
        if (a.ecims[k].ke.minCoeff() < 0.0) negative_ke = true;
        broken = broken || tr.broken;
        for (Index s = 0; s < tr.angle.size(); ++s) {
            if (!tr.valid[static_cast<std::size_t>(s)]) continue;
            closest = std::min(closest, std::abs(tr.angle[s] - a.em->angle[s]));
            if (a.igmtes[k].ke[s] > 0.0 && a.sys.speed(s, c) >= 0.0) {
                ++lag_checked;
                if (!(tr.angle[s] < a.sys.angle(s, c))) ++lag_violations;
            }
        }
    }
    const bool ok_a = lag_checked > 0 && lag_violations == 0;
    const bool ok_b = negative_ke && broken;
    const bool ok_c = closest > 10.0 * kIntegratorTolerance;
    std::ostringstream s;
    s << "(a) " << lag_violations << "/" << lag_checked << " violations; (b) negative ECIMKE="
      << (negative_ke ? "yes" : "no") << " broken=" << (broken ? "yes" : "no") << "; (c) min|dEC-dCR|=" << closest;
    return {ok_a && ok_b && ok_c, s.str()};
}

Outcome tcim_dlp() {
    const Analysis& a = separating();
    const IdentityReport r = identity_report(a, Tolerances{}, ReportToggles{false, false, false, false, true});
    std::optional<Index> em_index;
    std::ostringstream s;
    for (const auto& d : a.dlps) {
        if (d.entity == "EMTE_CR") em_index = d.index;
    }
    s << "EM DLP index=" << (em_index ? std::to_string(*em_index) : "none");
    for (const auto& d : a.dlps) {
        if (d.entity.rfind("TCIMTE_", 0) == 0) s << " " << d.entity << "=" << (d.index ? std::to_string(*d.index) : "none");
    }
    const auto eq = equal_speed_samples(a.sys, *a.group, a.sys.clear_index);
    s << "; equal-speed samples:";
    for (Index k : eq) s << " " << k;
    const CheckEntry* dlp = r.find("tcim_dlp_mismatch");
    const CheckEntry* dke = r.find("delta_ke_simultaneity");
    s << "; dlp mismatches=" << dlp->value << " dKE misses=" << dke->value;
    return {em_index.has_value() && dlp->pass() && dke->pass() && !eq.empty(), s.str()};
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"AC1 newton demo energies and conservation", newton_demo},
        {"AC2 RK4 order on the bundled scenario", simulator_order},
        {"AC3 equal-area critical clearing time", equal_area},
        {"AC4 COI closure", coi_closure},
        {"AC5 KE superposition identity, every group", ke_identity},
        {"AC6 ECIM superposition and cross term", ecim_superposition},
        {"AC7 TCIM scale-down and superposition", tcim_identities},
        {"AC8 post-fault conservation", conservation},
        {"AC9 ECIM failure reproduction", ecim_failure},
        {"AC10 TCIM DLP simultaneity", tcim_dlp},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s  %s  [%.2fs]  %s\n", o.pass ? "PASS" : "FAIL", name, secs, o.detail.c_str());
        failures += o.pass ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failures, std::size(criteria));
    return failures == 0 ? 0 : 1;
}
