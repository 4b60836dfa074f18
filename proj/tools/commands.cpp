#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <ostream>
#include <vector>

#include <json.hpp>

#include "qtherm/closedform.hpp"
#include "qtherm/dynamics.hpp"
#include "qtherm/observables.hpp"

namespace qtherm::cli {

namespace {

using nlohmann::json;

std::vector<double> make_grid(double start, double stop, int points, const std::string& scale) {
    if (scale != "linear" && scale != "log") {
        throw ConfigError("scale: expected 'linear' or 'log'");
    }
    if (!(start < stop)) {
        throw ConfigError("sweep: need start < stop");
    }
    if (points < 2) {
        throw ConfigError("points: need at least 2");
    }
    if (scale == "log" && !(start > 0.0)) {
        throw ConfigError("sweep: logarithmic scale needs start > 0");
    }
    std::vector<double> grid(points);
    for (int i = 0; i < points; ++i) {
        const double f = static_cast<double>(i) / (points - 1);
        if (i == 0) {
            grid[i] = start;
        } else if (i == points - 1) {
            grid[i] = stop;
        } else if (scale == "linear") {
            grid[i] = start + f * (stop - start);
        } else {
            grid[i] = std::exp(std::log(start) + f * (std::log(stop) - std::log(start)));
        }
    }
    return grid;
}

json finite_or_null(double value) {
    if (std::isfinite(value)) return value;
    return nullptr;
}

int run_guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const SingularSystem& e) {
        err << "error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const NoBracket& e) {
        err << "error: " << e.what() << "\n";
        return kExitSearch;
    } catch (const NoInteriorMinimum& e) {
        err << "error: " << e.what() << "\n";
        return kExitSearch;
    } catch (const DegenerateInput& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}

} // namespace

std::string fmt_real(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.16e", value);
    return buffer;
}

int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err) {
    return run_guarded(err, [&]() -> int {
        const TlsNetwork network = args.config.to_network();
        const RateMatrix rm = build_rate_matrix(network);
        const PopulationVector p = steady_state(rm);
        const CurrentReport report = heat_currents(network, rm, p);
        const int n = network.n_sites();

        if (args.format == "json") {
            json doc;
            doc["populations"] = json::array();
            for (int i = 0; i < p.size(); ++i) doc["populations"].push_back(p(i));
            doc["currents"] = json::object();
            for (int b = 0; b < n; ++b) doc["currents"][args.config.labels[b]] = report.current(b);
            doc["conservation_residual"] = report.conservation_residual;
            out << doc.dump(2) << "\n";
        } else if (args.format == "csv") {
            out << "quantity,label,value\n";
            for (int i = 0; i < p.size(); ++i) {
                out << "population," << (i + 1) << "," << fmt_real(p(i)) << "\n";
            }
            for (int b = 0; b < n; ++b) {
                out << "current," << args.config.labels[b] << "," << fmt_real(report.current(b))
                    << "\n";
            }
            out << "conservation_residual,," << fmt_real(report.conservation_residual) << "\n";
        } else if (args.format == "text") {
            out << "sites: " << n << "\n";
            out << "steady-state populations:\n";
            for (int i = 0; i < p.size(); ++i) {
                out << "  |" << (i + 1) << ">  " << fmt_real(p(i)) << "\n";
            }
            out << "heat currents (positive into the system):\n";
            for (int b = 0; b < n; ++b) {
                out << "  J_" << args.config.labels[b] << "  " << fmt_real(report.current(b))
                    << "\n";
            }
            out << "conservation residual: " << fmt_real(report.conservation_residual) << "\n";
        } else {
            throw ConfigError("format: expected 'text', 'json' or 'csv'");
        }
        return kExitOk;
    });
}

int cmd_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err) {
    return run_guarded(err, [&]() -> int {
        const TlsNetwork base = args.config.to_network();
        const int n = base.n_sites();
        if (n != 2 && n != 3) {
            throw ConfigError("sweep: supports 2- and 3-site devices");
        }

        std::string swept_label = args.bath;
        if (swept_label.empty()) {
            swept_label = args.config.bath_index("M") >= 0 ? "M" : args.config.labels[0];
        }
        const int swept = args.config.bath_index(swept_label);
        if (swept < 0) {
            throw ConfigError("bath: no bath labeled '" + swept_label + "'");
        }
        const int idx_l = args.config.bath_index("L");
        const int idx_m = args.config.bath_index("M");
        const int idx_r = args.config.bath_index("R");
        const bool alpha_possible = args.with_alpha && n == 3 && idx_m >= 0;

        const std::vector<double> grid = make_grid(args.start, args.stop, args.points, args.scale);

        struct Row {
            double temperature;
            std::optional<double> j_l, j_m, j_r;
            std::optional<double> alpha_l, alpha_r;
            std::optional<bool> diverged;
        };
        std::vector<Row> rows;
        rows.reserve(grid.size());

        for (double t : grid) {
            TlsNetwork probe = base;
            probe.bath_temperature(swept) = t;
            const RateMatrix rm = build_rate_matrix(probe);
            const CurrentReport report = heat_currents(probe, rm, steady_state(rm));

            Row row;
            row.temperature = t;
            if (idx_l >= 0) row.j_l = report.current(idx_l);
            if (idx_m >= 0) row.j_m = report.current(idx_m);
            if (idx_r >= 0) row.j_r = report.current(idx_r);
            if (alpha_possible) {
                try {
                    AmplificationOptions opts;
                    opts.base_bath = idx_m;
                    const AmplificationReport amp =
                        amplification(probe, probe.bath_temperature(idx_m), args.delta_t, opts);
                    row.diverged = amp.diverged;
                    if (!amp.diverged) {
                        row.alpha_l = amp.alpha_L;
                        row.alpha_r = amp.alpha_R;
                    }
                } catch (const DegenerateInput&) {
                    // finite-difference step left the domain at this point
                }
            }
            rows.push_back(row);
        }

        const auto cell = [](const std::optional<double>& v) {
            return v ? fmt_real(*v) : std::string();
        };
        if (args.format == "csv") {
            out << "temperature,J_L,J_M,J_R,alpha_L,alpha_R,diverged\n";
            for (const Row& row : rows) {
                out << fmt_real(row.temperature) << "," << cell(row.j_l) << "," << cell(row.j_m)
                    << "," << cell(row.j_r) << "," << cell(row.alpha_l) << ","
                    << cell(row.alpha_r) << ","
                    << (row.diverged ? (*row.diverged ? "1" : "0") : "") << "\n";
            }
        } else if (args.format == "json") {
            json doc = json::array();
            for (const Row& row : rows) {
                json obj;
                obj["temperature"] = row.temperature;
                obj["J_L"] = row.j_l ? json(*row.j_l) : json(nullptr);
                obj["J_M"] = row.j_m ? json(*row.j_m) : json(nullptr);
                obj["J_R"] = row.j_r ? json(*row.j_r) : json(nullptr);
                obj["alpha_L"] = row.alpha_l ? json(*row.alpha_l) : json(nullptr);
                obj["alpha_R"] = row.alpha_r ? json(*row.alpha_r) : json(nullptr);
                obj["diverged"] = row.diverged ? json(*row.diverged) : json(nullptr);
                doc.push_back(obj);
            }
            out << doc.dump(2) << "\n";
        } else {
            throw ConfigError("format: expected 'csv' or 'json'");
        }
        return kExitOk;
    });
}

int cmd_rectification(const RectificationArgs& args, std::ostream& out, std::ostream& err) {
    return run_guarded(err, [&]() -> int {
        const TlsNetwork network = args.config.to_network();
        if (network.n_sites() != 2) {
            throw ConfigError("rectification: requires a two-site device");
        }
        if (!(args.t_fixed >= 0.0)) {
            throw ConfigError("t-fixed: must be >= 0");
        }
        const std::vector<double> grid = make_grid(args.start, args.stop, args.points, args.scale);

        const auto forward_current = [&](double t_l, double t_r) {
            TlsNetwork probe = network;
            probe.bath_temperature << t_l, t_r;
            const RateMatrix rm = build_rate_matrix(probe);
            return heat_currents(probe, rm, steady_state(rm)).current(0);
        };

        const bool as_json = args.format == "json";
        if (!as_json && args.format != "csv") {
            throw ConfigError("format: expected 'csv' or 'json'");
        }
        json doc = json::array();
        if (!as_json) out << "T_L,J_forward,J_reversed,R,degenerate\n";

        for (double t_l : grid) {
            const double j_fwd = forward_current(t_l, args.t_fixed);
            const double j_rev = forward_current(args.t_fixed, t_l);
            std::optional<double> ratio;
            try {
                ratio = rectification_ratio(network, t_l, args.t_fixed);
            } catch (const DegenerateInput&) {
                // emitted with the flag set and a blank ratio
            }
            if (as_json) {
                json obj;
                obj["T_L"] = t_l;
                obj["J_forward"] = j_fwd;
                obj["J_reversed"] = j_rev;
                obj["R"] = ratio ? json(*ratio) : json(nullptr);
                obj["degenerate"] = !ratio.has_value();
                doc.push_back(obj);
            } else {
                out << fmt_real(t_l) << "," << fmt_real(j_fwd) << "," << fmt_real(j_rev) << ","
                    << (ratio ? fmt_real(*ratio) : std::string()) << "," << (ratio ? "0" : "1")
                    << "\n";
            }
        }
        if (as_json) out << doc.dump(2) << "\n";
        return kExitOk;
    });
}

int cmd_transistor_analysis(const TransistorAnalysisArgs& args, std::ostream& out,
                            std::ostream& err) {
    return run_guarded(err, [&]() -> int {
        const TlsNetwork network = args.config.to_network();
        if (network.n_sites() != 3) {
            throw ConfigError("transistor-analysis: requires a three-site device");
        }
        const int idx_l = args.config.bath_index("L");
        const int idx_m = args.config.bath_index("M");
        const int idx_r = args.config.bath_index("R");
        if (idx_l < 0 || idx_m < 0 || idx_r < 0) {
            throw ConfigError("transistor-analysis: needs baths labeled L, M and R");
        }
        if (!(args.bracket_lo < args.bracket_hi) || !(args.bracket_lo > 0.0)) {
            throw ConfigError("bracket: need 0 < lo < hi");
        }

        SearchOptions search;
        search.base_bath = idx_m;
        search.current_tol = args.tol;
        AmplificationOptions amp_opts;
        amp_opts.base_bath = idx_m;

        const double delta = network.coupling(idx_l, idx_m);
        const double t_l = network.bath_temperature(idx_l);

        json doc;
        std::vector<std::string> errors;

        doc["jm_zero_temperature"] = nullptr;
        doc["currents_at_zero"] = nullptr;
        doc["alpha_at_zero"] = nullptr;
        try {
            const double t_zero = find_jm_zero(network, args.bracket_lo, args.bracket_hi, search);
            doc["jm_zero_temperature"] = t_zero;

            TlsNetwork probe = network;
            probe.bath_temperature(idx_m) = t_zero;
            const RateMatrix rm = build_rate_matrix(probe);
            const CurrentReport report = heat_currents(probe, rm, steady_state(rm));
            doc["currents_at_zero"] = {{"L", report.current(idx_l)},
                                       {"M", report.current(idx_m)},
                                       {"R", report.current(idx_r)}};

            const AmplificationReport amp = amplification(network, t_zero, args.delta_t, amp_opts);
            doc["alpha_at_zero"] = {{"alpha_L", finite_or_null(amp.alpha_L)},
                                    {"alpha_R", finite_or_null(amp.alpha_R)},
                                    {"diverged", amp.diverged}};
        } catch (const NoBracket& e) {
            errors.push_back(e.what());
        }

        doc["jm_min_temperature"] = nullptr;
        doc["alpha_at_minimum"] = nullptr;
        try {
            const double t_min =
                find_jm_minimum(network, args.bracket_lo, args.bracket_hi, search);
            doc["jm_min_temperature"] = t_min;
            const AmplificationReport amp = amplification(network, t_min, args.delta_t, amp_opts);
            doc["alpha_at_minimum"] = {{"alpha_L", finite_or_null(amp.alpha_L)},
                                       {"alpha_R", finite_or_null(amp.alpha_R)},
                                       {"diverged", amp.diverged}};
        } catch (const NoInteriorMinimum& e) {
            errors.push_back(e.what());
        }

        // Plateau: measured at the low base temperature 0.02 * Delta against
        // the closed-form estimate e^{Delta/T_L}.
        doc["alpha_plateau"] = nullptr;
        doc["alpha_plateau_estimate"] = nullptr;
        if (delta > 0.0 && t_l > 0.0) {
            doc["alpha_plateau_estimate"] = closedform::amplification_approx(delta, t_l);
            try {
                const AmplificationReport amp =
                    amplification(network, 0.02 * delta, args.delta_t, amp_opts);
                if (!amp.diverged) {
                    doc["alpha_plateau"] = std::max(std::abs(amp.alpha_L), std::abs(amp.alpha_R));
                }
            } catch (const DegenerateInput&) {
            }
        }

        if (!errors.empty()) doc["errors"] = errors;
        out << doc.dump(2) << "\n";
        return errors.empty() ? kExitOk : kExitSearch;
    });
}

} // namespace qtherm::cli
