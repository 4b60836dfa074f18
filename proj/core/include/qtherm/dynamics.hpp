// dynamics.hpp — Classical master equation over populations: Bose-Einstein
// occupancies, ohmic transition rates, generator assembly, the steady state,
// and a fixed-step RK4 integrator used as an independent time-domain check.

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "qtherm/errors.hpp"
#include "qtherm/model.hpp"

namespace qtherm {

using PopulationVector = Eigen::VectorXd;

// Mean occupation 1/(e^{omega/T} - 1) of a bath mode. Returns 0 for T = 0.
// omega must be positive; the omega -> 0 limit is handled analytically in
// rate_coefficients, not here (throws std::domain_error).
double bose_einstein(double omega, double temperature);

struct RateCoefficients {
    double up;    // absorption, omega * n
    double down;  // emission, omega * (1 + n)
};

// Ohmic rates for a transition of frequency omega against a bath at the
// given temperature. omega = 0 returns the analytic limit (T, T); T = 0
// returns (0, omega).
RateCoefficients rate_coefficients(double omega, double temperature);

struct RatedTransition {
    Transition transition;
    double up_rate;
    double down_rate;
};

// Generator of d p / dt = generator * p over basis-state populations.
// Column sums vanish by construction and off-diagonal entries are the
// transition rates; `rated` keeps the per-transition coefficients for
// current evaluation.
struct RateMatrix {
    Eigen::MatrixXd generator;
    std::vector<RatedTransition> rated;
};

RateMatrix build_rate_matrix(const TlsNetwork& network);

// Unique stationary population vector: generator * p = 0, sum(p) = 1,
// solved by replacing the redundant last row with the normalization row.
// Residual ||generator * p||_inf <= 1e-12 is checked after the solve.
// Throws SingularSystem when the state graph is disconnected at the given
// temperatures (the message lists the components) or the stationary state
// is otherwise non-unique.
PopulationVector steady_state(const RateMatrix& rate_matrix);

struct EvolveResult {
    PopulationVector populations;
    bool converged;                // stationary within tolerance at the end
    double stationarity_residual;  // ||generator * p||_inf at the end
};

// Integrates d p / dt = generator * p with classic RK4 at a fixed step,
// renormalizing the trace each step. step <= 0 picks 0.1 / max |diagonal|.
// Failure to stabilize is diagnostic: converged is cleared, no throw.
EvolveResult evolve(const RateMatrix& rate_matrix,
                    const PopulationVector& initial,
                    double duration,
                    double step = 0.0);

} // namespace qtherm
