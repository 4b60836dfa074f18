// support.hpp — Shared fixtures for the test suites: canonical device
// builders, randomized network generation, Gibbs vectors, and a spectral-gap
// estimate used to size time-integration runs.

#pragma once

#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "qtherm/dynamics.hpp"
#include "qtherm/model.hpp"

namespace qtherm::test {

inline TlsNetwork diode_network(double t_l, double t_r, double w_l = 1.0, double w_r = 0.0,
                                double w_lr = 0.1) {
    Eigen::VectorXd omega(2);
    omega << w_l, w_r;
    Eigen::MatrixXd coupling(2, 2);
    coupling << 0.0, w_lr, w_lr, 0.0;
    Eigen::VectorXd temps(2);
    temps << t_l, t_r;
    return make_network(omega, coupling, temps);
}

inline TlsNetwork transistor_network(double t_l, double t_m, double t_r, double delta = 1.0) {
    Eigen::VectorXd omega = Eigen::VectorXd::Zero(3);
    Eigen::MatrixXd coupling(3, 3);
    coupling << 0.0, delta, 0.0, delta, 0.0, delta, 0.0, delta, 0.0;
    Eigen::VectorXd temps(3);
    temps << t_l, t_m, t_r;
    return make_network(omega, coupling, temps);
}

// Site energies and couplings uniform in [0, 2]; temperatures log-uniform in
// [0.01, 10]. With min_log_separation > 0 every pair of temperatures differs
// by at least that factor in log space, keeping the instance measurably away
// from global equilibrium.
inline TlsNetwork random_network(std::mt19937& rng, int n, double min_log_separation = 0.0) {
    std::uniform_real_distribution<double> u_energy(0.0, 2.0);
    std::uniform_real_distribution<double> u_log_t(std::log(0.01), std::log(10.0));

    Eigen::VectorXd omega(n);
    for (int i = 0; i < n; ++i) omega(i) = u_energy(rng);
    Eigen::MatrixXd coupling = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            coupling(i, j) = coupling(j, i) = u_energy(rng);
        }
    }
    Eigen::VectorXd temps(n);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        for (int i = 0; i < n; ++i) temps(i) = u_log_t(rng);
        bool separated = true;
        for (int i = 0; i < n && separated; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (std::abs(temps(i) - temps(j)) < min_log_separation) {
                    separated = false;
                    break;
                }
            }
        }
        if (separated) break;
    }
    for (int i = 0; i < n; ++i) temps(i) = std::exp(temps(i));
    return make_network(omega, coupling, temps);
}

inline TlsNetwork random_network_uniform_t(std::mt19937& rng, int n, double temperature) {
    TlsNetwork net = random_network(rng, n);
    net.bath_temperature.setConstant(temperature);
    return net;
}

inline Eigen::VectorXd gibbs_vector(const TlsNetwork& network, double temperature) {
    const int dim = network.dimension();
    Eigen::VectorXd energies(dim);
    for (int k = 0; k < dim; ++k) energies(k) = state_energy(network, k);
    const double e_min = energies.minCoeff();
    Eigen::VectorXd g(dim);
    for (int k = 0; k < dim; ++k) g(k) = std::exp(-(energies(k) - e_min) / temperature);
    return g / g.sum();
}

// Smallest nonzero decay rate of the generator. Exactly one eigenvalue is
// the stationary mode; only that one (the smallest in magnitude) is
// excluded, so a second near-zero eigenvalue shows up as a vanishing gap
// rather than being mistaken for stationarity.
inline double spectral_gap(const Eigen::MatrixXd& generator) {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(generator);
    const auto& lambdas = solver.eigenvalues();
    int stationary = 0;
    for (int i = 1; i < lambdas.size(); ++i) {
        if (std::abs(lambdas(i)) < std::abs(lambdas(stationary))) stationary = i;
    }
    double gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < lambdas.size(); ++i) {
        if (i == stationary) continue;
        gap = std::min(gap, -lambdas(i).real());
    }
    if (!std::isfinite(gap) || gap <= 0.0) return 0.0;
    return gap;
}

inline const RatedTransition& find_rated(const RateMatrix& rm, int bath, int upper, int lower) {
    for (const RatedTransition& rt : rm.rated) {
        if (rt.transition.bath == bath && rt.transition.upper == upper &&
            rt.transition.lower == lower) {
            return rt;
        }
    }
    throw std::logic_error("find_rated: no such transition");
}

} // namespace qtherm::test
