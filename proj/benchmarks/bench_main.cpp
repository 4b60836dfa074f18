// Microbenchmarks for the hot paths: generator assembly, the dense
// steady-state solve, a full sweep point, and the RK4 oracle.

#include <benchmark/benchmark.h>

#include "qtherm/dynamics.hpp"
#include "qtherm/observables.hpp"

using namespace qtherm;

namespace {

TlsNetwork diode() {
    Eigen::VectorXd omega(2);
    omega << 1.0, 0.0;
    Eigen::MatrixXd coupling(2, 2);
    coupling << 0.0, 0.1, 0.1, 0.0;
    Eigen::VectorXd temps(2);
    temps << 1.0, 0.1;
    return make_network(omega, coupling, temps);
}

TlsNetwork transistor() {
    Eigen::VectorXd omega = Eigen::VectorXd::Zero(3);
    Eigen::MatrixXd coupling(3, 3);
    coupling << 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0;
    Eigen::VectorXd temps(3);
    temps << 0.1, 0.05, 0.01;
    return make_network(omega, coupling, temps);
}

void BM_BuildRateMatrix(benchmark::State& state) {
    const TlsNetwork net = state.range(0) == 2 ? diode() : transistor();
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_rate_matrix(net));
    }
}
BENCHMARK(BM_BuildRateMatrix)->Arg(2)->Arg(3);

void BM_SteadyState(benchmark::State& state) {
    const TlsNetwork net = state.range(0) == 2 ? diode() : transistor();
    const RateMatrix rm = build_rate_matrix(net);
    for (auto _ : state) {
        benchmark::DoNotOptimize(steady_state(rm));
    }
}
BENCHMARK(BM_SteadyState)->Arg(2)->Arg(3);

void BM_SweepPoint(benchmark::State& state) {
    const TlsNetwork net = transistor();
    for (auto _ : state) {
        const RateMatrix rm = build_rate_matrix(net);
        const PopulationVector p = steady_state(rm);
        benchmark::DoNotOptimize(heat_currents(net, rm, p));
    }
}
BENCHMARK(BM_SweepPoint);

void BM_Amplification(benchmark::State& state) {
    const TlsNetwork net = transistor();
    for (auto _ : state) {
        benchmark::DoNotOptimize(amplification(net, 0.05));
    }
}
BENCHMARK(BM_Amplification);

void BM_EvolveUnitTime(benchmark::State& state) {
    const TlsNetwork net = transistor();
    const RateMatrix rm = build_rate_matrix(net);
    const PopulationVector p0 = Eigen::VectorXd::Constant(8, 0.125);
    for (auto _ : state) {
        benchmark::DoNotOptimize(evolve(rm, p0, 1.0));
    }
}
BENCHMARK(BM_EvolveUnitTime);

} // namespace

BENCHMARK_MAIN();
