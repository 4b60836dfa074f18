#include "qtherm/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qtherm {

namespace {

constexpr double kSteadyResidualTol = 1e-12;

// Union-find over basis states; transitions with any nonzero rate join their
// endpoints.
class Components {
public:
    explicit Components(int n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    int find(int a) {
        while (parent_[a] != a) {
            parent_[a] = parent_[parent_[a]];
            a = parent_[a];
        }
        return a;
    }
    void unite(int a, int b) { parent_[find(a)] = find(b); }

    std::vector<std::vector<int>> groups() {
        const int n = static_cast<int>(parent_.size());
        std::vector<std::vector<int>> by_root(n);
        for (int i = 0; i < n; ++i) by_root[find(i)].push_back(i);
        std::vector<std::vector<int>> out;
        for (auto& g : by_root) {
            if (!g.empty()) out.push_back(std::move(g));
        }
        return out;
    }

private:
    std::vector<int> parent_;
};

std::string describe_components(const std::vector<std::vector<int>>& groups) {
    std::ostringstream oss;
    oss << "steady state is not unique: the transition graph splits into " << groups.size()
        << " components at the given temperatures:";
    for (const auto& g : groups) {
        oss << " {";
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (i) oss << ",";
            oss << (g[i] + 1);  // 1-based state labels
        }
        oss << "}";
    }
    return oss.str();
}

} // namespace

double bose_einstein(double omega, double temperature) {
    if (!(omega > 0.0)) {
        throw std::domain_error(
            "bose_einstein: omega must be positive; use rate_coefficients for the omega -> 0 limit");
    }
    if (!(temperature >= 0.0)) {
        throw std::domain_error("bose_einstein: temperature must be >= 0");
    }
    if (temperature == 0.0) return 0.0;
    return 1.0 / std::expm1(omega / temperature);
}

RateCoefficients rate_coefficients(double omega, double temperature) {
    if (!(omega >= 0.0)) {
        throw std::domain_error("rate_coefficients: omega must be >= 0");
    }
    if (!(temperature >= 0.0)) {
        throw std::domain_error("rate_coefficients: temperature must be >= 0");
    }
    if (omega == 0.0) {
        // omega * n and omega * (1 + n) both tend to T as omega -> 0.
        return {temperature, temperature};
    }
    if (temperature == 0.0) {
        return {0.0, omega};
    }
    const double up = omega / std::expm1(omega / temperature);
    return {up, omega + up};
}

RateMatrix build_rate_matrix(const TlsNetwork& network) {
    network.validate();
    const int dim = network.dimension();
    const TransitionSet transitions = allowed_transitions(network);

    RateMatrix rm;
    rm.generator = Eigen::MatrixXd::Zero(dim, dim);
    rm.rated.reserve(transitions.entries.size());

    for (const Transition& t : transitions.entries) {
        const double scale = network.bath_scale(t.bath);
        RateCoefficients rc = rate_coefficients(t.frequency, network.bath_temperature(t.bath));
        rc.up *= scale;
        rc.down *= scale;
        rm.rated.push_back({t, rc.up, rc.down});
        rm.generator(t.lower, t.upper) += rc.down;
        rm.generator(t.upper, t.lower) += rc.up;
    }
    // Diagonal closes each column to zero total rate.
    for (int j = 0; j < dim; ++j) {
        double out_rate = 0.0;
        for (int i = 0; i < dim; ++i) {
            if (i != j) out_rate += rm.generator(i, j);
        }
        rm.generator(j, j) = -out_rate;
    }
    return rm;
}

PopulationVector steady_state(const RateMatrix& rate_matrix) {
    const Eigen::MatrixXd& g = rate_matrix.generator;
    const int dim = static_cast<int>(g.rows());
    if (dim < 1 || g.cols() != dim) {
        throw std::invalid_argument("steady_state: generator must be square and non-empty");
    }

    Components components(dim);
    for (const RatedTransition& rt : rate_matrix.rated) {
        if (rt.up_rate + rt.down_rate > 0.0) {
            components.unite(rt.transition.upper, rt.transition.lower);
        }
    }
    const auto groups = components.groups();
    if (groups.size() > 1) {
        throw SingularSystem(describe_components(groups));
    }

    // State-elimination (GTH) solve. Folding uses only additions and
    // multiplications of non-negative rates, which keeps every population
    // componentwise accurate even when the rates span hundreds of orders of
    // magnitude (cold baths); a normalization-row linear solve loses the
    // small populations to cancellation there. States with the strongest
    // escape rate are eliminated first; a remaining set with no escape at
    // all means the stationary state is not unique.
    Eigen::MatrixXd a(dim, dim);  // a(i, j) = rate i -> j while folding
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) a(i, j) = i == j ? 0.0 : g(j, i);
    }
    std::vector<int> remaining(dim);
    std::iota(remaining.begin(), remaining.end(), 0);
    struct Eliminated {
        int state;
        double escape_rate;
        std::vector<std::pair<int, double>> inflow;  // remaining state -> rate into `state`
    };
    std::vector<Eliminated> eliminated;
    eliminated.reserve(dim - 1);

    while (remaining.size() > 1) {
        std::size_t pick = 0;
        double best_escape = -1.0;
        std::vector<double> escape(remaining.size(), 0.0);
        for (std::size_t x = 0; x < remaining.size(); ++x) {
            for (std::size_t j = 0; j < remaining.size(); ++j) {
                if (j != x) escape[x] += a(remaining[x], remaining[j]);
            }
            if (escape[x] > best_escape) {
                best_escape = escape[x];
                pick = x;
            }
        }
        if (!(best_escape > 0.0)) {
            std::ostringstream oss;
            oss << "steady state is not unique: states {";
            for (std::size_t i = 0; i < remaining.size(); ++i) {
                if (i) oss << ",";
                oss << (remaining[i] + 1);
            }
            oss << "} have no transitions among themselves at the given temperatures";
            throw SingularSystem(oss.str());
        }

        const int x = remaining[pick];
        remaining.erase(remaining.begin() + pick);
        Eliminated record{x, best_escape, {}};
        record.inflow.reserve(remaining.size());
        for (int i : remaining) {
            record.inflow.emplace_back(i, a(i, x));
        }
        for (int i : remaining) {
            const double a_ix = a(i, x);
            if (a_ix == 0.0) continue;
            for (int j : remaining) {
                if (j != i) a(i, j) += a_ix * (a(x, j) / best_escape);
            }
        }
        eliminated.push_back(std::move(record));
    }

    PopulationVector p = PopulationVector::Zero(dim);
    p(remaining.front()) = 1.0;
    for (auto it = eliminated.rbegin(); it != eliminated.rend(); ++it) {
        double inflow = 0.0;
        for (const auto& [i, rate] : it->inflow) inflow += p(i) * rate;
        p(it->state) = inflow / it->escape_rate;
    }
    p /= p.sum();

    const double residual = (g * p).cwiseAbs().maxCoeff();
    if (!(residual <= kSteadyResidualTol) || !p.allFinite()) {
        std::ostringstream oss;
        oss << "steady state not attained (residual " << residual << ")";
        throw SingularSystem(oss.str());
    }
    return p;
}

EvolveResult evolve(const RateMatrix& rate_matrix,
                    const PopulationVector& initial,
                    double duration,
                    double step) {
    const Eigen::MatrixXd& g = rate_matrix.generator;
    const int dim = static_cast<int>(g.rows());
    if (initial.size() != dim) {
        throw std::invalid_argument("evolve: initial vector size does not match the generator");
    }
    if (std::abs(initial.sum() - 1.0) > 1e-6) {
        throw std::invalid_argument("evolve: initial populations must be normalized");
    }
    if (!(duration >= 0.0)) {
        throw std::invalid_argument("evolve: duration must be >= 0");
    }

    const double max_diag = g.diagonal().cwiseAbs().maxCoeff();
    const double residual_tol = 1e-10 * std::max(1.0, max_diag);

    PopulationVector p = initial;
    if (max_diag > 0.0 && duration > 0.0) {
        double h = step > 0.0 ? step : 0.1 / max_diag;
        const auto n_steps = static_cast<long>(std::ceil(duration / h));
        h = duration / static_cast<double>(n_steps);

        PopulationVector k1(dim), k2(dim), k3(dim), k4(dim);
        for (long s = 0; s < n_steps; ++s) {
            k1.noalias() = g * p;
            k2.noalias() = g * (p + 0.5 * h * k1);
            k3.noalias() = g * (p + 0.5 * h * k2);
            k4.noalias() = g * (p + h * k3);
            p += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            p /= p.sum();
        }
    }

    EvolveResult result;
    result.stationarity_residual = dim > 0 ? (g * p).cwiseAbs().maxCoeff() : 0.0;
    result.converged = result.stationarity_residual <= residual_tol;
    result.populations = std::move(p);
    return result;
}

} // namespace qtherm
