#include "qtherm/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qtherm {

namespace {

// Currents of all baths with the base-bath temperature overridden.
Eigen::VectorXd currents_at(const TlsNetwork& network, int base_bath, double t_base) {
    TlsNetwork probe = network;
    probe.bath_temperature(base_bath) = t_base;
    const RateMatrix rm = build_rate_matrix(probe);
    return heat_currents(probe, rm, steady_state(rm)).current;
}

void require_three_sites(const TlsNetwork& network, const char* who) {
    if (network.n_sites() != 3) {
        throw std::invalid_argument(std::string(who) + ": requires a three-site network");
    }
}

} // namespace

CurrentReport heat_currents(const TlsNetwork& network,
                            const RateMatrix& rate_matrix,
                            const PopulationVector& populations) {
    const int dim = network.dimension();
    if (populations.size() != dim) {
        throw std::invalid_argument("heat_currents: population vector size does not match");
    }
    CurrentReport report;
    report.current = Eigen::VectorXd::Zero(network.n_sites());
    for (const RatedTransition& rt : rate_matrix.rated) {
        if (rt.transition.frequency == 0.0) continue;  // no energy exchanged
        const double net_up = rt.up_rate * populations(rt.transition.lower) -
                              rt.down_rate * populations(rt.transition.upper);
        report.current(rt.transition.bath) += rt.transition.frequency * net_up;
    }
    report.conservation_residual = std::abs(report.current.sum());
    return report;
}

CurrentReport heat_currents(const TlsNetwork& network, const PopulationVector& populations) {
    return heat_currents(network, build_rate_matrix(network), populations);
}

double rectification_ratio(const TlsNetwork& network, double t_a, double t_b) {
    if (network.n_sites() != 2) {
        throw std::invalid_argument("rectification_ratio: requires a two-site network");
    }
    if (t_a == t_b) {
        throw DegenerateInput("rectification_ratio: equal temperatures give 0/0");
    }

    TlsNetwork probe = network;
    probe.bath_temperature << t_a, t_b;
    RateMatrix rm = build_rate_matrix(probe);
    const double j_forward = heat_currents(probe, rm, steady_state(rm)).current(0);

    probe.bath_temperature << t_b, t_a;
    rm = build_rate_matrix(probe);
    const double j_reversed = heat_currents(probe, rm, steady_state(rm)).current(0);

    const double largest = std::max(std::abs(j_forward), std::abs(j_reversed));
    if (largest < 1e-30) {
        throw DegenerateInput("rectification_ratio: both fluxes below 1e-30, ratio undefined");
    }
    return std::abs(j_forward + j_reversed) / largest;
}

AmplificationReport amplification(const TlsNetwork& network,
                                  double t_m,
                                  double delta_t,
                                  const AmplificationOptions& options) {
    require_three_sites(network, "amplification");
    if (options.base_bath < 0 || options.base_bath >= network.n_sites()) {
        throw std::invalid_argument("amplification: base_bath out of range");
    }
    const double h = delta_t > 0.0 ? delta_t : t_m / 1000.0;
    if (!(h > 0.0) || t_m - h < 0.0) {
        throw DegenerateInput("amplification: T_M +/- delta_T leaves the valid temperature domain");
    }

    const int base = options.base_bath;
    const int left = base == 0 ? 1 : 0;
    const int right = base == 2 ? 1 : 2;

    const auto slopes = [&](double step) -> Eigen::VectorXd {
        const Eigen::VectorXd plus = currents_at(network, base, t_m + step);
        const Eigen::VectorXd minus = currents_at(network, base, t_m - step);
        return (plus - minus) / (2.0 * step);
    };
    const Eigen::VectorXd coarse = slopes(h);
    const Eigen::VectorXd fine = slopes(0.5 * h);

    AmplificationReport report;
    report.dJL_dTM = fine(left);
    report.dJM_dTM = fine(base);
    report.dJR_dTM = fine(right);

    // The base slope is unbounded in alpha terms when it is negligible
    // against the other slopes, or indistinguishable from its own
    // finite-difference error (step-halving drift).
    const double drift = std::abs(fine(base) - coarse(base));
    const double other = std::max(std::abs(report.dJL_dTM), std::abs(report.dJR_dTM));
    report.diverged = std::abs(report.dJM_dTM) < options.divergence_rel * other ||
                      std::abs(report.dJM_dTM) <= 4.0 * drift;

    if (report.diverged) {
        constexpr double inf = std::numeric_limits<double>::infinity();
        report.alpha_L = std::copysign(inf, report.dJL_dTM * report.dJM_dTM);
        report.alpha_R = std::copysign(inf, report.dJR_dTM * report.dJM_dTM);
    } else {
        report.alpha_L = report.dJL_dTM / report.dJM_dTM;
        report.alpha_R = report.dJR_dTM / report.dJM_dTM;
    }
    return report;
}

double find_jm_zero(const TlsNetwork& network, double t_lo, double t_hi,
                    const SearchOptions& options) {
    require_three_sites(network, "find_jm_zero");
    if (!(t_lo < t_hi)) {
        throw std::invalid_argument("find_jm_zero: need t_lo < t_hi");
    }
    const auto jm = [&](double t) { return currents_at(network, options.base_bath, t)(options.base_bath); };

    double lo = t_lo, hi = t_hi;
    double f_lo = jm(lo), f_hi = jm(hi);
    if (std::abs(f_lo) <= options.current_tol) return lo;
    if (std::abs(f_hi) <= options.current_tol) return hi;
    if ((f_lo < 0.0) == (f_hi < 0.0)) {
        std::ostringstream oss;
        oss << "find_jm_zero: J_M has the same sign at both bracket ends (" << f_lo << ", " << f_hi
            << ")";
        throw NoBracket(oss.str());
    }

    for (int iter = 0; iter < 200 && hi - lo > options.bracket_tol; ++iter) {
        // Secant candidate, bisection fallback.
        double t = lo - f_lo * (hi - lo) / (f_hi - f_lo);
        const double mid = 0.5 * (lo + hi);
        if (!(t > lo && t < hi)) t = mid;
        if (std::min(t - lo, hi - t) < 0.01 * (hi - lo)) t = mid;

        const double f = jm(t);
        if (std::abs(f) <= options.current_tol) return t;
        if ((f < 0.0) == (f_lo < 0.0)) {
            lo = t;
            f_lo = f;
        } else {
            hi = t;
            f_hi = f;
        }
    }
    return 0.5 * (lo + hi);
}

double find_jm_minimum(const TlsNetwork& network, double t_lo, double t_hi,
                       const SearchOptions& options) {
    require_three_sites(network, "find_jm_minimum");
    if (!(t_lo < t_hi)) {
        throw std::invalid_argument("find_jm_minimum: need t_lo < t_hi");
    }
    const auto jm = [&](double t) { return currents_at(network, options.base_bath, t)(options.base_bath); };

    // Coarse scan to localize the dip and reject monotone brackets.
    constexpr int kScan = 64;
    double best_f = std::numeric_limits<double>::infinity();
    int best_k = 0;
    for (int k = 0; k <= kScan; ++k) {
        const double t = t_lo + (t_hi - t_lo) * k / kScan;
        const double f = jm(t);
        if (f < best_f) {
            best_f = f;
            best_k = k;
        }
    }
    if (best_k == 0 || best_k == kScan) {
        throw NoInteriorMinimum("find_jm_minimum: J_M is monotone on the bracket");
    }

    double a = t_lo + (t_hi - t_lo) * (best_k - 1) / kScan;
    double b = t_lo + (t_hi - t_lo) * (best_k + 1) / kScan;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = jm(x1);
    double f2 = jm(x2);
    while (b - a > options.width_tol) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = jm(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = jm(x2);
        }
    }
    return 0.5 * (a + b);
}

} // namespace qtherm
