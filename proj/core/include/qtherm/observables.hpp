// observables.hpp — Heat currents at the steady state, diode rectification,
// transistor amplification factors, and the searches for the base-current
// zero and minimum.

#pragma once

#include <Eigen/Dense>

#include "qtherm/dynamics.hpp"
#include "qtherm/errors.hpp"
#include "qtherm/model.hpp"

namespace qtherm {

// Per-bath heat currents, positive when heat flows from the bath into the
// system. conservation_residual = |sum over baths|; it vanishes at the
// steady state up to solver precision.
struct CurrentReport {
    Eigen::VectorXd current;
    double conservation_residual;
};

// current[P] = sum over bath-P transitions of frequency * (net upward rate).
// Zero-frequency transitions carry no heat.
CurrentReport heat_currents(const TlsNetwork& network, const PopulationVector& populations);
CurrentReport heat_currents(const TlsNetwork& network,
                            const RateMatrix& rate_matrix,
                            const PopulationVector& populations);

// Normalized flow asymmetry of a two-site device under temperature reversal:
//   R = |J(t_a, t_b) + J(t_b, t_a)| / max(|J(t_a, t_b)|, |J(t_b, t_a)|)
// with J the current injected by bath 0. Throws DegenerateInput for t_a ==
// t_b or when both fluxes are below 1e-30.
double rectification_ratio(const TlsNetwork& network, double t_a, double t_b);

struct AmplificationOptions {
    int base_bath = 1;  // the bath whose temperature is swept (the "base")
    // |dJ_base/dT| below this fraction of the collector/emitter slopes marks
    // the derivative quotient as unbounded.
    double divergence_rel = 1e-5;
};

struct AmplificationReport {
    double alpha_L;   // dJ_L / dJ_M
    double alpha_R;   // dJ_R / dJ_M
    double dJL_dTM;
    double dJM_dTM;
    double dJR_dTM;
    bool diverged;    // alphas reported unbounded, not as noise quotients
};

// Central finite differences of the three currents along the base-bath
// temperature t_m; alpha_X = dJ_X/dT / dJ_M/dT. delta_t <= 0 picks
// t_m / 1000; the step is halved once internally and the refined slopes are
// reported, with the drift feeding the divergence detection. Requires a
// three-site network; throws DegenerateInput when t_m - delta_t < 0.
AmplificationReport amplification(const TlsNetwork& network,
                                  double t_m,
                                  double delta_t = 0.0,
                                  const AmplificationOptions& options = {});

struct SearchOptions {
    int base_bath = 1;
    double current_tol = 1e-14;  // |J_M| accepted as zero
    double bracket_tol = 1e-10;  // bisection bracket width
    double width_tol = 1e-8;     // golden-section bracket width
};

// Base-bath temperature at which J_M crosses zero. Bisection with a guarded
// secant step; requires a sign change over [t_lo, t_hi] (throws NoBracket).
double find_jm_zero(const TlsNetwork& network, double t_lo, double t_hi,
                    const SearchOptions& options = {});

// Base-bath temperature of the interior minimum of J_M. Coarse scan plus
// golden-section refinement; throws NoInteriorMinimum when J_M is monotone
// over the bracket.
double find_jm_minimum(const TlsNetwork& network, double t_lo, double t_hi,
                       const SearchOptions& options = {});

} // namespace qtherm
