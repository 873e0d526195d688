// Micro-benchmarks for the numeric hot paths: the three concurrence
// computation paths, Schmidt decomposition, the swapping protocol, the
// row-resolved supplier measurement, and a single roof-optimizer start.

#include <benchmark/benchmark.h>

#include "qcm/convex_roof.hpp"
#include "qcm/monotones.hpp"
#include "qcm/random.hpp"
#include "qcm/red_sim.hpp"
#include "qcm/rpbes.hpp"
#include "qcm/states.hpp"

using namespace qcm;

namespace {

PureState fixed_state(int da, int db) {
    auto g = rng::derive(17, 0);
    return rng::pure_state(g, da, db);
}

void BM_MonotonesSchmidt(benchmark::State& state) {
    const PureState psi = fixed_state(6, 6);
    for (auto _ : state)
        benchmark::DoNotOptimize(monotone_vector(psi, ConcurrencePath::Schmidt));
}
BENCHMARK(BM_MonotonesSchmidt);

void BM_MonotonesCompound(benchmark::State& state) {
    const PureState psi = fixed_state(6, 6);
    for (auto _ : state)
        benchmark::DoNotOptimize(monotone_vector(psi, ConcurrencePath::Compound));
}
BENCHMARK(BM_MonotonesCompound);

void BM_MonotonesPowerSum(benchmark::State& state) {
    const PureState psi = fixed_state(6, 6);
    for (auto _ : state)
        benchmark::DoNotOptimize(monotone_vector(psi, ConcurrencePath::PowerSum));
}
BENCHMARK(BM_MonotonesPowerSum);

void BM_GConcurrence(benchmark::State& state) {
    const PureState psi = fixed_state(8, 8);
    for (auto _ : state)
        benchmark::DoNotOptimize(g_concurrence(psi));
}
BENCHMARK(BM_GConcurrence);

void BM_SchmidtDecomposition(benchmark::State& state) {
    const PureState psi = fixed_state(6, 8);
    for (auto _ : state)
        benchmark::DoNotOptimize(schmidt(psi));
}
BENCHMARK(BM_SchmidtDecomposition);

void BM_SwapProtocol(benchmark::State& state) {
    auto g = rng::derive(18, 0);
    const RealVector lambda = rng::spectrum(g, 4);
    const RealVector eta = rng::spectrum(g, 4);
    const rpbes::PhaseMatrix phases = rpbes::PhaseMatrix::canonical(4);
    for (auto _ : state)
        benchmark::DoNotOptimize(rpbes::run_protocol(lambda, eta, phases));
}
BENCHMARK(BM_SwapProtocol);

void BM_SupplierMeasure(benchmark::State& state) {
    auto g = rng::derive(19, 0);
    const PureState link12 = rng::pure_state(g, 3, 3);
    const PureState link34 = rng::pure_state(g, 3, 3);
    const red::KrausSet kraus = red::rpbes_canonical_kraus(3);
    for (auto _ : state)
        benchmark::DoNotOptimize(red::supplier_measure(link12, link34, kraus));
}
BENCHMARK(BM_SupplierMeasure);

void BM_RoofSingleStart(benchmark::State& state) {
    auto g = rng::derive(20, 0);
    const DensityMatrix rho = rng::density(g, 4, 2);
    RoofOptions opts;
    opts.restarts = 1;
    opts.seed = 21;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            roof_minimize(rho, 2, 2, MonotoneSelector::c(2), opts));
}
BENCHMARK(BM_RoofSingleStart);

} // namespace

BENCHMARK_MAIN();
