// model.hpp — Networks of coupled two-level systems with per-site thermal
// baths: eigenstate enumeration and the single-spin-flip transitions each
// bath can drive.

#pragma once

#include <vector>

#include <Eigen/Dense>

namespace qtherm {

// A network of N two-level systems (TLS). Site P carries a level splitting
// site_energy[P], every unordered pair (P,Q) a sigma_z/sigma_z coupling
// coupling(P,Q), and each site its own thermal bath at bath_temperature[P].
// Units: hbar = k_B = 1, so energies, frequencies and temperatures share one
// scale. bath_coupling is a dimensionless per-bath dissipation scale; leave
// it empty for the default of 1 everywhere.
struct TlsNetwork {
    Eigen::VectorXd site_energy;
    Eigen::MatrixXd coupling;          // symmetric, zero diagonal
    Eigen::VectorXd bath_temperature;  // >= 0, one bath per site
    Eigen::VectorXd bath_coupling;     // optional, > 0, defaults to all ones

    int n_sites() const { return static_cast<int>(site_energy.size()); }
    int dimension() const { return 1 << n_sites(); }
    double bath_scale(int bath) const {
        return bath_coupling.size() > 0 ? bath_coupling(bath) : 1.0;
    }

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

TlsNetwork make_network(Eigen::VectorXd site_energy,
                        Eigen::MatrixXd coupling,
                        Eigen::VectorXd bath_temperature);

// Basis states are spin product states ordered as in the usual convention
// |1> = all-up, descending lexicographically with site 0 as the most
// significant spin. Ordinals are 0-based: ordinal k encodes the spins in the
// bits of k (bit clear = up), so |1> has ordinal 0 and all-down has ordinal
// 2^N - 1.
struct BasisState {
    int ordinal;
    double energy;  // diagonal Hamiltonian element of this configuration
};

// Spin of `site` in configuration `ordinal`: +1 (up) or -1 (down).
int spin_of(int ordinal, int site, int n_sites);

// Configuration with the spin of `site` flipped.
int flip_site(int ordinal, int site, int n_sites);

// Energy of one configuration:
//   sum_P site_energy[P]/2 * s_P + sum_{P<Q} coupling(P,Q)/2 * s_P s_Q.
double state_energy(const TlsNetwork& network, int ordinal);

// All 2^N basis states in ordinal order with exact energies.
std::vector<BasisState> enumerate_states(const TlsNetwork& network);

// One bath-induced transition. Baths flip exactly one spin, so upper and
// lower differ in the bit of `bath` only. frequency = E(upper) - E(lower)
// is always >= 0; degenerate pairs are stored with frequency 0 and the
// smaller ordinal in `upper` so the orientation is deterministic.
struct Transition {
    int bath;
    int upper;
    int lower;
    double frequency;
};

struct TransitionSet {
    std::vector<Transition> entries;  // bath-major, deterministic order

    std::vector<Transition> for_bath(int bath) const;
};

// The 2^(N-1) single-flip transitions per bath, N * 2^(N-1) in total.
TransitionSet allowed_transitions(const TlsNetwork& network);

} // namespace qtherm
