// closedform.hpp — Analytic approximations for the two-site diode and the
// degenerate three-site transistor. These exist to cross-validate the
// numerical solver and never feed it.

#pragma once

#include <array>

#include "qtherm/dynamics.hpp"
#include "qtherm/model.hpp"

namespace qtherm {
namespace closedform {

// Validity bounds of the transistor expansion: e^{-Delta/T_L} small and
// e^{-Delta/T_R} much smaller still.
inline constexpr double kMaxTLOverDelta = 0.25;
inline constexpr double kMaxTROverDelta = 0.0625;

bool transistor_regime_ok(double delta, double t_l, double t_r);

// Approximate diode current for omega_R = 0 and a cold right bath:
//   J_L ~ (omega_L * omega_LR / 2) * e^{-omega_LR/T_L} / cosh(omega_L/T_L).
double diode_current_approx(double omega_l, double omega_lr, double t_l);

// Populations of the three-site device merged over the degenerate pairs
// {1,8}, {2,7}, {3,6}, {4,5} (1-based state labels).
struct ReducedTransistorState {
    double rho_I;
    double rho_II;
    double rho_III;
    double rho_IV;

    double sum() const { return rho_I + rho_II + rho_III + rho_IV; }
};

// Merge an 8-state population vector; the total is preserved exactly.
ReducedTransistorState reduce_degenerate(const PopulationVector& populations);

// First-order closed forms. regime_warning is set when T_L lies outside the
// expansion's validity bound; the values are still returned. The four
// populations need not sum to 1 exactly (first-order truncation).
struct PopulationsApprox {
    ReducedTransistorState populations;
    bool regime_warning;
};
PopulationsApprox transistor_populations_approx(double delta, double t_l, double t_m);

struct CurrentsApprox {
    double j_l;
    double j_m;
    double j_r;
    bool regime_warning;
};
CurrentsApprox transistor_currents_approx(double delta, double t_l, double t_m);

// Low-T_M plateau estimate of the amplification magnitude, e^{Delta/T_L}.
double amplification_approx(double delta, double t_l);

// Exact reduced-current expressions
//   J_L = -Delta [Gamma^L_{I-IV} + Gamma^L_{II-III}]
//   J_M = -2 Delta Gamma^M_{I-III}
//   J_R = -Delta [Gamma^R_{I-II} + Gamma^R_{IV-III}]
// evaluated on merged populations. Valid only for the degenerate
// configuration (zero site energies, coupling(L,R) = 0, coupling(L,M) =
// coupling(M,R) = Delta); throws std::invalid_argument otherwise. Returns
// {J_L, J_M, J_R}.
std::array<double, 3> transistor_currents_reduced(const TlsNetwork& network,
                                                  const ReducedTransistorState& reduced);

} // namespace closedform
} // namespace qtherm
