// qtherm — steady-state heat transport in networks of coupled two-level
// systems: single-point solves, temperature sweeps, rectification maps, and
// transistor working-point analysis.

#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"

namespace {

using namespace qtherm::cli;

struct OutputTarget {
    std::ofstream file;
    std::ostream* stream = &std::cout;

    bool open(const std::string& path) {
        if (path.empty() || path == "-" || path == "stdout") return true;
        file.open(path);
        if (!file) return false;
        stream = &file;
        return true;
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Heat transport in thermally driven two-level-system networks"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output_path = "-";

    SimulateArgs simulate;
    auto* cmd_sim = app.add_subcommand("simulate", "Steady state of one configuration");
    cmd_sim->add_option("--config", config_path, "Device config (JSON)")->required();
    cmd_sim->add_option("--output", output_path, "Output path or '-' for stdout");
    cmd_sim->add_option("--format", simulate.format, "text | json | csv");

    SweepArgs sweep;
    auto* cmd_sw = app.add_subcommand("sweep", "Currents versus one bath temperature");
    cmd_sw->add_option("--config", config_path, "Device config (JSON)")->required();
    cmd_sw->add_option("--output", output_path, "Output path or '-' for stdout");
    cmd_sw->add_option("--bath", sweep.bath, "Swept bath label (default M when present)");
    cmd_sw->add_option("--start", sweep.start, "First grid temperature")->required();
    cmd_sw->add_option("--stop", sweep.stop, "Last grid temperature")->required();
    cmd_sw->add_option("--points", sweep.points, "Grid points (>= 2)");
    cmd_sw->add_option("--scale", sweep.scale, "linear | log");
    cmd_sw->add_flag("--with-alpha", sweep.with_alpha, "Add amplification-factor columns");
    cmd_sw->add_option("--delta-t", sweep.delta_t, "Finite-difference step (default T_M/1000)");
    cmd_sw->add_option("--format", sweep.format, "csv | json");

    RectificationArgs rect;
    auto* cmd_re = app.add_subcommand("rectification", "Rectification ratio versus T_L");
    cmd_re->add_option("--config", config_path, "Device config (JSON)")->required();
    cmd_re->add_option("--output", output_path, "Output path or '-' for stdout");
    cmd_re->add_option("--t-fixed", rect.t_fixed, "Fixed temperature of the R bath")->required();
    cmd_re->add_option("--start", rect.start, "First T_L")->required();
    cmd_re->add_option("--stop", rect.stop, "Last T_L")->required();
    cmd_re->add_option("--points", rect.points, "Grid points (>= 2)");
    cmd_re->add_option("--scale", rect.scale, "linear | log");
    cmd_re->add_option("--format", rect.format, "csv | json");

    TransistorAnalysisArgs analysis;
    auto* cmd_ta = app.add_subcommand("transistor-analysis",
                                      "Base-current zero, minimum and amplification report");
    cmd_ta->add_option("--config", config_path, "Device config (JSON)")->required();
    cmd_ta->add_option("--output", output_path, "Output path or '-' for stdout");
    cmd_ta->add_option("--bracket-lo", analysis.bracket_lo, "Lower end of the T_M bracket")
        ->required();
    cmd_ta->add_option("--bracket-hi", analysis.bracket_hi, "Upper end of the T_M bracket")
        ->required();
    cmd_ta->add_option("--delta-t", analysis.delta_t, "Finite-difference step (default T_M/1000)");
    cmd_ta->add_option("--tol", analysis.tol, "|J_M| accepted as zero by the crossing search");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    DeviceConfig config;
    try {
        config = load_device_config(config_path);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }

    OutputTarget target;
    if (!target.open(output_path)) {
        std::cerr << "error: cannot open output '" << output_path << "'\n";
        return kExitConfig;
    }

    if (cmd_sim->parsed()) {
        simulate.config = config;
        return cmd_simulate(simulate, *target.stream, std::cerr);
    }
    if (cmd_sw->parsed()) {
        sweep.config = config;
        return cmd_sweep(sweep, *target.stream, std::cerr);
    }
    if (cmd_re->parsed()) {
        rect.config = config;
        return cmd_rectification(rect, *target.stream, std::cerr);
    }
    if (cmd_ta->parsed()) {
        analysis.config = config;
        return cmd_transistor_analysis(analysis, *target.stream, std::cerr);
    }
    return kExitConfig;
}
