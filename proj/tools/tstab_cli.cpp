// tstab: transient stability runs, frame/energy series and transformation checks.

#include "tstab/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace tstab;

namespace {

struct RunConfig {
    std::string command;
    std::string scenario;
    std::string group;
    double dt = 0.0;  // 0: scenario value
    std::string out;
    std::string tol_overrides;
    double newton_step = 0.01;
};

std::vector<int> parse_group(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ParseError("--group", "not a machine id: '" + item + "'");
        }
    }
    return out;
}

class Writer {
public:
    explicit Writer(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

    void csv(const std::string& name, const CsvTable& t) {
        write_csv(dir_ / name, t);
        files_.push_back(name);
    }
    void text(const std::string& name, const std::string& body) {
        std::ofstream out(dir_ / name, std::ios::binary);
        if (!out) throw Error("cannot write " + (dir_ / name).string());
        out << body;
        files_.push_back(name);
    }
    void manifest(const RunConfig& cfg, const std::vector<int>& group, double dt) {
        nlohmann::ordered_json j;
        j["command"] = cfg.command;
        j["scenario"] = cfg.scenario;
        j["group"] = group;
        j["dt"] = dt;
        j["tol_overrides"] = cfg.tol_overrides;
        j["files"] = files_;
        std::ofstream out(dir_ / "manifest.json", std::ios::binary);
        out << j.dump(2) << "\n";
    }

private:
    fs::path dir_;
    std::vector<std::string> files_;
};

int finish(Writer& w, const RunConfig& cfg, const std::vector<int>& group, double dt, const IdentityReport& report) {
    w.text("identity_report.json", report.to_json());
    w.manifest(cfg, group, dt);
    for (const auto& c : report.checks) {
        if (!c.pass()) {
            std::cerr << "check failed: " << c.name << " = " << c.value << " > " << c.tolerance << " (sample "
                      << c.worst_index << ")\n";
        }
    }
    return report.passed() ? 0 : 1;
}

int run_newton(const RunConfig& cfg, const Tolerances& tol) {
    Writer w(cfg.out);
    const auto rows = newton::demo_rows(newton::demo_ball_1(), newton::demo_ball_2(), cfg.newton_step);
    w.csv("newton_demo.csv", newton_table(rows));
    return finish(w, cfg, {}, cfg.newton_step, newton_report(rows, tol));
}

int run(const RunConfig& cfg) {
    const Tolerances tol = apply_overrides(Tolerances{}, cfg.tol_overrides);
    if (cfg.command == "newton-demo") return run_newton(cfg, tol);
    if (cfg.scenario.empty()) throw ValidationError("--scenario is required for " + cfg.command);

    Scenario sc = load_scenario(cfg.scenario);
    if (cfg.dt > 0.0) sc = with_dt(sc, cfg.dt);
    std::vector<int> group = cfg.group.empty() ? sc.group : parse_group(cfg.group);

    const bool wants_group = cfg.command == "ecim" || cfg.command == "tcim" || cfg.command == "check-all";
    if (wants_group && group.empty()) {
        throw ValidationError(cfg.command + ": a nonempty --group is required");
    }
    if (cfg.command == "simulate") group.clear();

    const Analysis a = analyze(sc, group);
    Writer w(cfg.out);
    w.csv("trajectory.csv", trajectory_table(a.trajectory, sc.model));

    ReportToggles on;
    const bool all = cfg.command == "check-all";
    if (cfg.command == "frames" || all) {
        w.csv("frame_SYS.csv", frame_table(a.sys));
        if (a.em) w.csv("machine_CR.csv", equivalent_machine_table(*a.em));
        if (a.inner) w.csv("frame_CR.csv", frame_table(*a.inner));
    }
    if (cfg.command == "energy" || all) {
        on.conservation = true;
        on.dlp = true;
        for (const auto& e : a.imtes) w.csv(e.entity + ".csv", energy_table(e));
        w.csv("SMTE.csv", energy_table(a.smte));
        if (a.emte) w.csv("EMTE_CR.csv", energy_table(*a.emte));
        for (const auto& e : a.igmtes) w.csv(e.entity + ".csv", energy_table(e));
        w.text("dlp.json", dlp_json(a.dlps));
    }
    if (cfg.command == "ecim" || all) {
        on.ecim = true;
        for (const auto& e : a.ecims) w.csv(e.entity + ".csv", ecim_table(e));
        for (const auto& t : a.ecim_trajectories) w.csv(t.entity + ".csv", ecim_trajectory_table(t));
    }
    if (cfg.command == "tcim" || all) {
        on.tcim = true;
        on.dlp = true;
        for (const auto& t : a.tcims) w.csv(t.entity + ".csv", tcim_table(t));
        for (const auto& d : a.delta_vs) w.csv(d.entity + ".csv", delta_v_table(d));
        w.text("dlp.json", dlp_json(a.dlps));
    }
    int status = finish(w, cfg, group, sc.dt, identity_report(a, tol, on));
    if (all) {
        Writer nw(fs::path(cfg.out) / "newton");
        const auto rows = newton::demo_rows(newton::demo_ball_1(), newton::demo_ball_2(), cfg.newton_step);
        nw.csv("newton_demo.csv", newton_table(rows));
        status = std::max(status, finish(nw, cfg, {}, cfg.newton_step, newton_report(rows, tol)));
    }
    return status;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Transient stability simulation and machine transformation analysis"};
    app.require_subcommand(1);

    RunConfig cfg;
    const char* env_out = std::getenv("TSTAB_OUT_DIR");
    cfg.out = env_out && *env_out ? env_out : "tstab_out";

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"simulate", "Run the fault-on/fault-clear simulation"},
        {"frames", "Write SYS, Machine-CR and inner-group frame series"},
        {"energy", "Write IMTE, SMTE, EMTE and IGMTE series with DLPs"},
        {"ecim", "Energy-corrected machines and the superposition check"},
        {"tcim", "Trajectory-corrected machines, ΔV and DLP simultaneity"},
        {"newton-demo", "Two falling balls and their pseudo ball"},
        {"check-all", "Every artifact and every identity check"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--out", cfg.out, "Output directory (default $TSTAB_OUT_DIR or ./tstab_out)");
        sub->add_option("--tol-overrides", cfg.tol_overrides, "name=value,... (coi, ke_identity, superposition, "
                                                              "cross_term, tcim, conservation, newton)");
        if (name == "newton-demo") {
            sub->add_option("--step", cfg.newton_step, "Sample spacing, s")->check(CLI::PositiveNumber);
            continue;
        }
        sub->add_option("--scenario", cfg.scenario, "Scenario JSON")->required()->check(CLI::ExistingFile);
        sub->add_option("--group", cfg.group, "Critical group machine ids, e.g. \"1,2\"");
        sub->add_option("--dt", cfg.dt, "Integration step override, s")->check(CLI::PositiveNumber);
        if (name == "check-all") {
            sub->add_option("--step", cfg.newton_step, "Newton demo sample spacing, s")->check(CLI::PositiveNumber);
        }
    }

    CLI11_PARSE(app, argc, argv);
    cfg.command = app.get_subcommands().front()->get_name();

    try {
        return run(cfg);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
    } catch (const ConvergenceError& e) {
        std::cerr << "solver did not converge: " << e.what() << "\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
    }
    return 2;
}
