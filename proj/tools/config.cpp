#include "config.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace qtherm::cli {

namespace {

using nlohmann::json;

double require_real(const json& node, const std::string& field) {
    if (!node.is_number()) {
        throw ConfigError(field + ": expected a real number");
    }
    return node.get<double>();
}

std::vector<std::string> default_labels(int n) {
    if (n == 1) return {"L"};
    if (n == 2) return {"L", "R"};
    if (n == 3) return {"L", "M", "R"};
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back("B" + std::to_string(i + 1));
    return labels;
}

} // namespace

int DeviceConfig::bath_index(const std::string& label) const {
    for (int i = 0; i < n_sites(); ++i) {
        if (labels[i] == label) return i;
    }
    return -1;
}

TlsNetwork DeviceConfig::to_network() const {
    TlsNetwork network;
    network.site_energy = Eigen::Map<const Eigen::VectorXd>(omegas.data(), n_sites());
    network.coupling = couplings;
    network.bath_temperature =
        Eigen::Map<const Eigen::VectorXd>(temperatures.data(), n_sites());
    network.validate();
    return network;
}

nlohmann::json DeviceConfig::to_json() const {
    json sites = json::array();
    for (double w : omegas) sites.push_back({{"omega", w}});
    json rows = json::array();
    for (int i = 0; i < n_sites(); ++i) {
        json row = json::array();
        for (int j = 0; j < n_sites(); ++j) row.push_back(couplings(i, j));
        rows.push_back(row);
    }
    json baths = json::array();
    for (int i = 0; i < n_sites(); ++i) {
        baths.push_back({{"temperature", temperatures[i]}, {"label", labels[i]}});
    }
    return {{"sites", sites}, {"couplings", rows}, {"baths", baths}};
}

DeviceConfig parse_device_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config: expected a JSON object");

    if (!doc.contains("sites") || !doc["sites"].is_array() || doc["sites"].empty()) {
        throw ConfigError("sites: expected a non-empty array");
    }
    DeviceConfig config;
    const auto& sites = doc["sites"];
    for (std::size_t i = 0; i < sites.size(); ++i) {
        const auto& site = sites[i];
        if (!site.is_object() || !site.contains("omega")) {
            throw ConfigError("sites[" + std::to_string(i) + "]: expected {\"omega\": <real>}");
        }
        config.omegas.push_back(require_real(site["omega"], "sites[" + std::to_string(i) + "].omega"));
    }
    const int n = config.n_sites();

    if (!doc.contains("couplings") || !doc["couplings"].is_array()) {
        throw ConfigError("couplings: expected an array of rows");
    }
    const auto& rows = doc["couplings"];
    if (static_cast<int>(rows.size()) != n) {
        throw ConfigError("couplings: expected " + std::to_string(n) + " rows");
    }
    config.couplings = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != n) {
            throw ConfigError("couplings[" + std::to_string(i) + "]: expected a row of " +
                              std::to_string(n) + " reals");
        }
        for (int j = 0; j < n; ++j) {
            config.couplings(i, j) = require_real(
                rows[i][j], "couplings[" + std::to_string(i) + "][" + std::to_string(j) + "]");
        }
    }
    for (int i = 0; i < n; ++i) {
        if (config.couplings(i, i) != 0.0) {
            throw ConfigError("couplings[" + std::to_string(i) + "][" + std::to_string(i) +
                              "]: diagonal must be zero");
        }
        for (int j = i + 1; j < n; ++j) {
            if (config.couplings(i, j) != config.couplings(j, i)) {
                throw ConfigError("couplings[" + std::to_string(j) + "][" + std::to_string(i) +
                                  "]: not symmetric with couplings[" + std::to_string(i) + "][" +
                                  std::to_string(j) + "]");
            }
        }
    }

    if (!doc.contains("baths") || !doc["baths"].is_array()) {
        throw ConfigError("baths: expected an array");
    }
    const auto& baths = doc["baths"];
    if (static_cast<int>(baths.size()) != n) {
        throw ConfigError("baths: expected " + std::to_string(n) + " entries to match sites");
    }
    const std::vector<std::string> fallback = default_labels(n);
    for (int i = 0; i < n; ++i) {
        const auto& bath = baths[i];
        if (!bath.is_object() || !bath.contains("temperature")) {
            throw ConfigError("baths[" + std::to_string(i) +
                              "]: expected {\"temperature\": <real>, ...}");
        }
        const double t =
            require_real(bath["temperature"], "baths[" + std::to_string(i) + "].temperature");
        if (!(t >= 0.0)) {
            throw ConfigError("baths[" + std::to_string(i) + "].temperature: must be >= 0");
        }
        config.temperatures.push_back(t);
        if (bath.contains("label")) {
            if (!bath["label"].is_string()) {
                throw ConfigError("baths[" + std::to_string(i) + "].label: expected a string");
            }
            config.labels.push_back(bath["label"].get<std::string>());
        } else {
            config.labels.push_back(fallback[i]);
        }
    }
    std::set<std::string> seen;
    for (int i = 0; i < n; ++i) {
        if (!seen.insert(config.labels[i]).second) {
            throw ConfigError("baths[" + std::to_string(i) + "].label: duplicate label '" +
                              config.labels[i] + "'");
        }
    }
    return config;
}

DeviceConfig load_device_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config: cannot open '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_device_config(buffer.str());
}

} // namespace qtherm::cli
