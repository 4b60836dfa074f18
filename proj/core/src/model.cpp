#include "qtherm/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace qtherm {

namespace {

// Site 0 lives in the most significant bit so that ordinal order matches the
// all-up-first state labelling.
int bit_of_site(int site, int n_sites) { return n_sites - 1 - site; }

} // namespace

void TlsNetwork::validate() const {
    const int n = n_sites();
    if (n < 1) {
        throw std::invalid_argument("site_energy: need at least one site");
    }
    if (n > 16) {
        throw std::invalid_argument("site_energy: more than 16 sites is not supported");
    }
    if (coupling.rows() != n || coupling.cols() != n) {
        throw std::invalid_argument("coupling: matrix must be n_sites x n_sites");
    }
    for (int p = 0; p < n; ++p) {
        if (coupling(p, p) != 0.0) {
            throw std::invalid_argument("coupling: diagonal entry (" + std::to_string(p) + "," +
                                        std::to_string(p) + ") must be zero");
        }
        for (int q = p + 1; q < n; ++q) {
            if (coupling(p, q) != coupling(q, p)) {
                throw std::invalid_argument("coupling: entry (" + std::to_string(p) + "," +
                                            std::to_string(q) + ") is not symmetric");
            }
            if (!std::isfinite(coupling(p, q))) {
                throw std::invalid_argument("coupling: entry (" + std::to_string(p) + "," +
                                            std::to_string(q) + ") is not finite");
            }
        }
    }
    if (bath_temperature.size() != n) {
        throw std::invalid_argument("bath_temperature: need one bath per site");
    }
    for (int p = 0; p < n; ++p) {
        if (!std::isfinite(site_energy(p))) {
            throw std::invalid_argument("site_energy[" + std::to_string(p) + "]: not finite");
        }
        if (!(bath_temperature(p) >= 0.0)) {
            throw std::invalid_argument("bath_temperature[" + std::to_string(p) +
                                        "]: must be >= 0");
        }
    }
    if (bath_coupling.size() != 0) {
        if (bath_coupling.size() != n) {
            throw std::invalid_argument("bath_coupling: need one entry per bath or none");
        }
        for (int p = 0; p < n; ++p) {
            if (!(bath_coupling(p) >= 0.0) || !std::isfinite(bath_coupling(p))) {
                throw std::invalid_argument("bath_coupling[" + std::to_string(p) +
                                            "]: must be finite and >= 0");
            }
        }
    }
}

TlsNetwork make_network(Eigen::VectorXd site_energy,
                        Eigen::MatrixXd coupling,
                        Eigen::VectorXd bath_temperature) {
    TlsNetwork network;
    network.site_energy = std::move(site_energy);
    network.coupling = std::move(coupling);
    network.bath_temperature = std::move(bath_temperature);
    network.validate();
    return network;
}

int spin_of(int ordinal, int site, int n_sites) {
    return (ordinal >> bit_of_site(site, n_sites)) & 1 ? -1 : +1;
}

int flip_site(int ordinal, int site, int n_sites) {
    return ordinal ^ (1 << bit_of_site(site, n_sites));
}

double state_energy(const TlsNetwork& network, int ordinal) {
    const int n = network.n_sites();
    double energy = 0.0;
    for (int p = 0; p < n; ++p) {
        const int sp = spin_of(ordinal, p, n);
        energy += 0.5 * network.site_energy(p) * sp;
        for (int q = p + 1; q < n; ++q) {
            energy += 0.5 * network.coupling(p, q) * sp * spin_of(ordinal, q, n);
        }
    }
    return energy;
}

std::vector<BasisState> enumerate_states(const TlsNetwork& network) {
    network.validate();
    const int dim = network.dimension();
    std::vector<BasisState> states;
    states.reserve(dim);
    for (int k = 0; k < dim; ++k) {
        states.push_back({k, state_energy(network, k)});
    }
    return states;
}

std::vector<Transition> TransitionSet::for_bath(int bath) const {
    std::vector<Transition> out;
    for (const Transition& t : entries) {
        if (t.bath == bath) out.push_back(t);
    }
    return out;
}

TransitionSet allowed_transitions(const TlsNetwork& network) {
    network.validate();
    const int n = network.n_sites();
    const int dim = network.dimension();

    TransitionSet set;
    set.entries.reserve(static_cast<std::size_t>(n) * (dim / 2));
    for (int bath = 0; bath < n; ++bath) {
        for (int s = 0; s < dim; ++s) {
            const int t = flip_site(s, bath, n);
            if (s > t) continue;  // visit each pair once, spin-up member first
            const double es = state_energy(network, s);
            const double et = state_energy(network, t);
            Transition entry;
            entry.bath = bath;
            if (et > es) {
                entry.upper = t;
                entry.lower = s;
                entry.frequency = et - es;
            } else {
                // Degenerate pairs keep the smaller ordinal as "upper".
                entry.upper = s;
                entry.lower = t;
                entry.frequency = es - et;
            }
            set.entries.push_back(entry);
        }
    }
    return set;
}

} // namespace qtherm
