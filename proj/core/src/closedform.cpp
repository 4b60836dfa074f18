#include "qtherm/closedform.hpp"

#include <cmath>
#include <stdexcept>

namespace qtherm {
namespace closedform {

bool transistor_regime_ok(double delta, double t_l, double t_r) {
    return t_l <= kMaxTLOverDelta * delta && t_r <= kMaxTROverDelta * delta;
}

double diode_current_approx(double omega_l, double omega_lr, double t_l) {
    return 0.5 * omega_l * omega_lr * std::exp(-omega_lr / t_l) / std::cosh(omega_l / t_l);
}

ReducedTransistorState reduce_degenerate(const PopulationVector& populations) {
    if (populations.size() != 8) {
        throw std::invalid_argument("reduce_degenerate: expected an 8-state population vector");
    }
    ReducedTransistorState r;
    r.rho_I = populations(0) + populations(7);
    r.rho_II = populations(1) + populations(6);
    r.rho_III = populations(2) + populations(5);
    r.rho_IV = populations(3) + populations(4);
    return r;
}

PopulationsApprox transistor_populations_approx(double delta, double t_l, double t_m) {
    const double boltz_l = std::exp(-delta / t_l);
    PopulationsApprox out;
    out.regime_warning = !(t_l <= kMaxTLOverDelta * delta);
    out.populations.rho_I = 0.5 * std::exp(-2.0 * delta / t_m) +
                            t_m / (4.0 * delta + 8.0 * t_m) * std::exp(-2.0 * delta / t_l);
    out.populations.rho_II = (delta + t_m) / (delta + 2.0 * t_m) * boltz_l;
    out.populations.rho_III = 1.0 - boltz_l;
    out.populations.rho_IV = t_m / (delta + 2.0 * t_m) * boltz_l;
    return out;
}

CurrentsApprox transistor_currents_approx(double delta, double t_l, double t_m) {
    CurrentsApprox out;
    out.regime_warning = !(t_l <= kMaxTLOverDelta * delta);
    out.j_l = delta * delta * t_m * std::exp(-delta / t_l) / (delta + 2.0 * t_m);
    out.j_m = delta * delta *
              (-t_m / (delta + 2.0 * t_m) * std::exp(-2.0 * delta / t_l) +
               2.0 * std::exp(-2.0 * delta / t_m));
    out.j_r = -out.j_l;
    return out;
}

double amplification_approx(double delta, double t_l) {
    return std::exp(delta / t_l);
}

std::array<double, 3> transistor_currents_reduced(const TlsNetwork& network,
                                                  const ReducedTransistorState& reduced) {
    if (network.n_sites() != 3) {
        throw std::invalid_argument("transistor_currents_reduced: requires a three-site network");
    }
    const double delta = network.coupling(0, 1);
    const bool degenerate = network.site_energy.isZero(0.0) && network.coupling(0, 2) == 0.0 &&
                            network.coupling(1, 2) == delta && delta > 0.0;
    if (!degenerate) {
        throw std::invalid_argument(
            "transistor_currents_reduced: needs the degenerate configuration "
            "(zero site energies, coupling(L,R) = 0, coupling(L,M) = coupling(M,R) > 0)");
    }

    const double t_l = network.bath_temperature(0);
    const double t_m = network.bath_temperature(1);
    const double t_r = network.bath_temperature(2);

    const auto l = rate_coefficients(delta, t_l);           // L flips at frequency Delta
    const auto m = rate_coefficients(2.0 * delta, t_m);     // M flips I <-> III at 2 Delta
    const auto r = rate_coefficients(delta, t_r);
    const double sl = network.bath_scale(0);
    const double sm = network.bath_scale(1);
    const double sr = network.bath_scale(2);

    const double gamma_l_i_iv = sl * (l.down * reduced.rho_I - l.up * reduced.rho_IV);
    const double gamma_l_ii_iii = sl * (l.down * reduced.rho_II - l.up * reduced.rho_III);
    const double gamma_m_i_iii = sm * (m.down * reduced.rho_I - m.up * reduced.rho_III);
    const double gamma_r_i_ii = sr * (r.down * reduced.rho_I - r.up * reduced.rho_II);
    const double gamma_r_iv_iii = sr * (r.down * reduced.rho_IV - r.up * reduced.rho_III);

    return {-delta * (gamma_l_i_iv + gamma_l_ii_iii),
            -2.0 * delta * gamma_m_i_iii,
            -delta * (gamma_r_i_ii + gamma_r_iv_iii)};
}

} // namespace closedform
} // namespace qtherm
