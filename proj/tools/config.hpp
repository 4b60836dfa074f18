// config.hpp — File-backed device descriptions for the command-line tool.
//
// Schema (JSON):
//   {"sites":     [{"omega": <real>}, ...],
//    "couplings": [[<real>, ...], ...],            symmetric, zero diagonal
//    "baths":     [{"temperature": <real>, "label": "L"}, ...]}
// Labels are optional; sites of a 2- or 3-site device default to L,R and
// L,M,R in order.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "qtherm/model.hpp"

namespace qtherm::cli {

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct DeviceConfig {
    std::vector<double> omegas;
    Eigen::MatrixXd couplings;
    std::vector<double> temperatures;
    std::vector<std::string> labels;

    int n_sites() const { return static_cast<int>(omegas.size()); }
    // Index of the bath with the given label; -1 when absent.
    int bath_index(const std::string& label) const;

    TlsNetwork to_network() const;
    nlohmann::json to_json() const;
};

// Parse and validate a config document. Errors carry the offending field,
// e.g. "couplings[1][2]: not symmetric".
DeviceConfig parse_device_config(const std::string& text);
DeviceConfig load_device_config(const std::string& path);

} // namespace qtherm::cli
