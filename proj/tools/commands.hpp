// commands.hpp — Subcommand implementations behind the qtherm executable.
// Each command writes its report to `out`, diagnostics to `err`, and returns
// the process exit code: 0 success, 2 config error, 3 solver error, 4
// search-bracket error.

#pragma once

#include <iosfwd>
#include <string>

#include "config.hpp"

namespace qtherm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitSolver = 3;
inline constexpr int kExitSearch = 4;

struct SimulateArgs {
    DeviceConfig config;
    std::string format = "text";  // text | json | csv
};

struct SweepArgs {
    DeviceConfig config;
    std::string bath;  // swept bath label; empty picks M when present, else the first bath
    double start = 0.0;
    double stop = 0.0;
    int points = 100;
    std::string scale = "linear";  // linear | log
    bool with_alpha = false;
    double delta_t = 0.0;  // finite-difference step; 0 = T_M / 1000
    std::string format = "csv";  // csv | json
};

struct RectificationArgs {
    DeviceConfig config;
    double t_fixed = 0.0;  // temperature of the second (R) bath
    double start = 0.0;
    double stop = 0.0;
    int points = 100;
    std::string scale = "linear";
    std::string format = "csv";
};

struct TransistorAnalysisArgs {
    DeviceConfig config;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    double delta_t = 0.0;
    double tol = 1e-14;  // |J_M| accepted as zero by the crossing search
};

int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err);
int cmd_rectification(const RectificationArgs& args, std::ostream& out, std::ostream& err);
int cmd_transistor_analysis(const TransistorAnalysisArgs& args, std::ostream& out,
                            std::ostream& err);

// Full-precision scientific-notation formatting shared by all CSV output.
std::string fmt_real(double value);

} // namespace qtherm::cli
