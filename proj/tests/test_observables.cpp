#include <doctest.h>

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "qtherm/observables.hpp"
#include "support.hpp"

using namespace qtherm;
using test::diode_network;
using test::find_rated;
using test::random_network;
using test::transistor_network;

namespace {

// Markov tree theorem for the diode's four-state cycle 1-3-4-2-1: steady
// populations are proportional to rooted spanning-tree weights. Entirely
// independent of the linear-solve path.
struct TreeSolution {
    Eigen::Vector4d populations;
    double cycle_flux;  // net 3 -> 1 -> 2 -> 4 -> 3 circulation
};

TreeSolution diode_tree_solution(const TlsNetwork& net) {
    const double t_l = net.bath_temperature(0);
    const double t_r = net.bath_temperature(1);
    const double w_a = state_energy(net, 0) - state_energy(net, 2);  // L: 1 <-> 3
    const double w_b = state_energy(net, 1) - state_energy(net, 3);  // L: 2 <-> 4
    const double w_c = state_energy(net, 0) - state_energy(net, 1);  // R: 1 <-> 2
    const double w_d = state_energy(net, 3) - state_energy(net, 2);  // R: 4 <-> 3

    const auto a = rate_coefficients(w_a, t_l);
    const auto b = rate_coefficients(w_b, t_l);
    const auto c = rate_coefficients(w_c, t_r);
    const auto d = rate_coefficients(w_d, t_r);

    Eigen::Vector4d weight;
    weight(0) = d.up * b.up * c.up + b.down * d.down * a.up + c.up * d.down * a.up +
                b.up * c.up * a.up;
    weight(1) = d.up * b.up * c.down + a.down * d.up * b.up + d.down * a.up * c.down +
                a.up * c.down * b.up;
    weight(2) = c.down * b.down * d.down + a.down * b.down * d.down + c.up * a.down * d.down +
                b.up * c.up * a.down;
    weight(3) = c.down * b.down * d.up + a.down * d.up * b.down + c.up * a.down * d.up +
                a.up * c.down * b.down;

    TreeSolution solution;
    const double total = weight.sum();
    solution.populations = weight / total;
    solution.cycle_flux =
        (a.up * c.down * b.down * d.down - a.down * d.up * b.up * c.up) / total;
    return solution;
}

} // namespace

TEST_CASE("diode current matches the spanning-tree oracle and J_L = 2 w_LR Gamma") {
    const TlsNetwork net = diode_network(1.0, 0.1);
    const RateMatrix rm = build_rate_matrix(net);
    const PopulationVector p = steady_state(rm);
    const CurrentReport report = heat_currents(net, rm, p);

    const TreeSolution tree = diode_tree_solution(net);
    for (int i = 0; i < 4; ++i) {
        CHECK(p(i) == doctest::Approx(tree.populations(i)).epsilon(1e-12));
    }

    const double j_l = report.current(0);
    CHECK(j_l > 0.0);
    CHECK(j_l == doctest::Approx(2.0 * 0.1 * tree.cycle_flux).epsilon(1e-11));
    CHECK(report.current(1) == doctest::Approx(-j_l).epsilon(1e-10));
    CHECK(report.conservation_residual <= 1e-10 * std::abs(j_l));

    // Chain value from the steady state itself agrees as well.
    const auto& c = find_rated(rm, 1, 0, 1);
    const double gamma = c.down_rate * p(0) - c.up_rate * p(1);
    CHECK(j_l == doctest::Approx(2.0 * 0.1 * gamma).epsilon(1e-11));
}

TEST_CASE("solver agrees with the tree oracle across random temperature pairs") {
    std::mt19937 rng(331209);
    std::uniform_real_distribution<double> u_log_t(std::log(0.05), std::log(10.0));
    for (int rep = 0; rep < 20; ++rep) {
        const TlsNetwork net = diode_network(std::exp(u_log_t(rng)), std::exp(u_log_t(rng)));
        const RateMatrix rm = build_rate_matrix(net);
        const PopulationVector p = steady_state(rm);
        const TreeSolution tree = diode_tree_solution(net);
        for (int i = 0; i < 4; ++i) {
            CHECK(p(i) == doctest::Approx(tree.populations(i)).epsilon(1e-11));
        }
        const double j_l = heat_currents(net, rm, p).current(0);
        CHECK(std::abs(j_l - 2.0 * 0.1 * tree.cycle_flux) <=
              1e-11 * std::max(std::abs(j_l), 1e-6));
    }
}

TEST_CASE("uniform temperature means zero current everywhere") {
    std::mt19937 rng(460917);
    for (int rep = 0; rep < 20; ++rep) {
        const TlsNetwork net = test::random_network_uniform_t(rng, rep % 2 == 0 ? 2 : 3, 0.9);
        const CurrentReport report = heat_currents(net, steady_state(build_rate_matrix(net)));
        CHECK(report.current.cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("currents are conserved for driven random networks") {
    std::mt19937 rng(52247);
    for (int rep = 0; rep < 40; ++rep) {
        const TlsNetwork net = random_network(rng, rep % 2 == 0 ? 2 : 3, 0.05);
        const CurrentReport report = heat_currents(net, steady_state(build_rate_matrix(net)));
        const double scale = report.current.cwiseAbs().maxCoeff();
        CHECK(report.conservation_residual <= std::max(1e-10 * scale, 1e-14));
    }
}

TEST_CASE("exchanging the two sites maps J_L onto J_R") {
    const TlsNetwork net = diode_network(1.0, 0.25, 1.0, 0.3, 0.15);
    const CurrentReport fwd = heat_currents(net, steady_state(build_rate_matrix(net)));

    const TlsNetwork swapped = diode_network(0.25, 1.0, 0.3, 1.0, 0.15);
    const CurrentReport rev = heat_currents(swapped, steady_state(build_rate_matrix(swapped)));

    CHECK(fwd.current(0) == doctest::Approx(rev.current(1)).epsilon(1e-11));
    CHECK(fwd.current(1) == doctest::Approx(rev.current(0)).epsilon(1e-11));
}

TEST_CASE("zero-frequency transitions carry no heat but shape the populations") {
    const TlsNetwork net = transistor_network(0.1, 0.05, 0.01);
    const RateMatrix rm = build_rate_matrix(net);
    const PopulationVector p = steady_state(rm);

    // The energy flux restricted to finite-frequency entries is the whole flux.
    Eigen::VectorXd positive_only = Eigen::VectorXd::Zero(3);
    Eigen::VectorXd all_entries = Eigen::VectorXd::Zero(3);
    for (const RatedTransition& rt : rm.rated) {
        const double net_up =
            rt.up_rate * p(rt.transition.lower) - rt.down_rate * p(rt.transition.upper);
        all_entries(rt.transition.bath) += rt.transition.frequency * net_up;
        if (rt.transition.frequency > 0.0) {
            positive_only(rt.transition.bath) += rt.transition.frequency * net_up;
        }
    }
    CHECK((positive_only - all_entries).cwiseAbs().maxCoeff() == 0.0);

    // Removing the frozen transitions themselves is not harmless: the
    // intermediate-level population changes at the tens-of-percent scale.
    RateMatrix filtered;
    filtered.generator = Eigen::MatrixXd::Zero(8, 8);
    for (const RatedTransition& rt : rm.rated) {
        if (rt.transition.frequency == 0.0) continue;
        filtered.rated.push_back(rt);
        filtered.generator(rt.transition.lower, rt.transition.upper) += rt.down_rate;
        filtered.generator(rt.transition.upper, rt.transition.lower) += rt.up_rate;
    }
    for (int j = 0; j < 8; ++j) {
        double out = 0.0;
        for (int i = 0; i < 8; ++i) {
            if (i != j) out += filtered.generator(i, j);
        }
        filtered.generator(j, j) = -out;
    }
    const PopulationVector q = steady_state(filtered);
    const double rho_iv = p(3) + p(4);
    const double rho_iv_filtered = q(3) + q(4);
    CHECK(std::abs(rho_iv_filtered - rho_iv) > 0.1 * rho_iv);
}

TEST_CASE("rectification vanishes for a mirror-symmetric device") {
    const TlsNetwork net = diode_network(1.0, 1.0, 1.0, 1.0, 0.1);
    CHECK(rectification_ratio(net, 1.0, 0.1) <= 1e-10);
}

TEST_CASE("diode rectification approaches one as the left bath freezes") {
    const TlsNetwork net = diode_network(1.0, 0.1);
    CHECK(rectification_ratio(net, 1e-3, 0.1) >= 0.9999);
}

TEST_CASE("rectification is weak at high temperatures") {
    const TlsNetwork net = diode_network(1.0, 0.1);
    CHECK(rectification_ratio(net, 10.0, 100.0) < 0.5);
    CHECK(rectification_ratio(net, 10.0, 100.0) < rectification_ratio(net, 1.0, 0.1));
}

TEST_CASE("rectification rejects degenerate inputs") {
    const TlsNetwork net = diode_network(1.0, 0.1);
    CHECK_THROWS_AS(rectification_ratio(net, 0.5, 0.5), DegenerateInput);
    // A fully frozen device pushes both fluxes below the 1e-30 floor.
    const TlsNetwork frozen = diode_network(1.0, 1.0, 1.0, 1.0, 0.5);
    CHECK_THROWS_AS(rectification_ratio(frozen, 2e-3, 1e-3), DegenerateInput);
    CHECK_THROWS_AS(rectification_ratio(transistor_network(0.1, 0.05, 0.01), 1.0, 0.1),
                    std::invalid_argument);
}

TEST_CASE("amplification factors satisfy alpha_L + alpha_R = -1") {
    const TlsNetwork net = transistor_network(0.1, 0.05, 0.01);
    for (double t_m : {0.03, 0.05, 0.0858, 0.095}) {
        const AmplificationReport amp = amplification(net, t_m);
        REQUIRE(!amp.diverged);
        CHECK(std::abs(amp.alpha_L + amp.alpha_R + 1.0) <= 1e-3);
    }
}

TEST_CASE("low base temperature amplification sits on the e^{D/T_L} plateau") {
    const TlsNetwork net = transistor_network(0.1, 0.05, 0.01);
    const AmplificationReport amp = amplification(net, 0.02);
    REQUIRE(!amp.diverged);
    CHECK(std::abs(amp.alpha_L) == doctest::Approx(22026.465794806718).epsilon(0.15));
    CHECK(std::abs(amp.alpha_R) == doctest::Approx(22026.465794806718).epsilon(0.15));
}

TEST_CASE("finite-difference alpha agrees with a dense-sweep slope ratio") {
    const TlsNetwork net = transistor_network(0.1, 0.05, 0.01);
    const int grid_points = 9;
    const double lo = 0.02, hi = 0.03;
    std::vector<double> t(grid_points), jl(grid_points), jm(grid_points);
    for (int i = 0; i < grid_points; ++i) {
        t[i] = lo + (hi - lo) * i / (grid_points - 1);
        TlsNetwork probe = net;
        probe.bath_temperature(1) = t[i];
        const CurrentReport report =
            heat_currents(probe, steady_state(build_rate_matrix(probe)));
        jl[i] = report.current(0);
        jm[i] = report.current(1);
    }
    for (int i = 0; i + 1 < grid_points; ++i) {
        const double alpha_secant = (jl[i + 1] - jl[i]) / (jm[i + 1] - jm[i]);
        const AmplificationReport amp = amplification(net, 0.5 * (t[i] + t[i + 1]));
        REQUIRE(!amp.diverged);
        CHECK(amp.alpha_L == doctest::Approx(alpha_secant).epsilon(0.01));
    }
}

TEST_CASE("amplification rejects steps that leave the temperature domain") {
    const TlsNetwork net = transistor_network(0.1, 0.05, 0.01);
    CHECK_THROWS_AS(amplification(net, 0.01, 0.02), DegenerateInput);
    CHECK_THROWS_AS(amplification(diode_network(1.0, 0.1), 0.05), std::invalid_argument);
}

TEST_CASE("the base-current zero crossing sits near 0.0858 D") {
    const TlsNetwork net = transistor_network(0.1, 0.05, 0.01);
    const double t_zero = find_jm_zero(net, 0.05, 0.1);
    CHECK(t_zero == doctest::Approx(0.08581).epsilon(0.006));

    TlsNetwork probe = net;
    probe.bath_temperature(1) = t_zero;
    const CurrentReport report = heat_currents(probe, steady_state(build_rate_matrix(probe)));
    CHECK(std::abs(report.current(1)) <= 1e-13);
    CHECK(report.current(0) > 0.0);
    CHECK(report.current(2) < 0.0);
}

TEST_CASE("find_jm_zero demands a sign change") {
    const TlsNetwork net = transistor_network(0.1, 0.05, 0.01);
    CHECK_THROWS_AS(find_jm_zero(net, 0.02, 0.05), NoBracket);
}

TEST_CASE("the base current has its minimum near 0.0744 D with divergent amplification") {
    const TlsNetwork net = transistor_network(0.1, 0.05, 0.01);
    const double t_min = find_jm_minimum(net, 0.02, 0.1);
    CHECK(t_min == doctest::Approx(0.07444).epsilon(0.007));
    const AmplificationReport amp = amplification(net, t_min);
    CHECK(amp.diverged);
    CHECK(std::isinf(amp.alpha_L));
}

TEST_CASE("find_jm_minimum rejects monotone brackets") {
    const TlsNetwork net = transistor_network(0.1, 0.05, 0.01);
    CHECK_THROWS_AS(find_jm_minimum(net, 0.002, 0.02), NoInteriorMinimum);
}

TEST_CASE("base current stays smallest in magnitude across the working range") {
    const TlsNetwork net = transistor_network(0.1, 0.05, 0.01);
    for (double t_m : {0.02, 0.05, 0.09}) {
        TlsNetwork probe = net;
        probe.bath_temperature(1) = t_m;
        const CurrentReport report =
            heat_currents(probe, steady_state(build_rate_matrix(probe)));
        CHECK(std::abs(report.current(1)) < std::abs(report.current(0)));
        CHECK(std::abs(report.current(1)) < std::abs(report.current(2)));
    }
}

TEST_CASE("entropy production is non-negative on random driven instances") {
    std::mt19937 rng(777101);
    for (int rep = 0; rep < 40; ++rep) {
        const TlsNetwork net = random_network(rng, rep % 2 == 0 ? 2 : 3, 0.05);
        const CurrentReport report = heat_currents(net, steady_state(build_rate_matrix(net)));
        double sigma = 0.0;
        double scale = 0.0;
        for (int b = 0; b < net.n_sites(); ++b) {
            sigma += report.current(b) / net.bath_temperature(b);
            scale += std::abs(report.current(b) / net.bath_temperature(b));
        }
        CHECK(sigma <= std::max(1e-10 * scale, 1e-12));
    }
}
