// Microbenchmarks for the hot paths: basis construction, quorum selection,
// simulation, and the two estimators.

#include <benchmark/benchmark.h>

#include <symtomo/estimate.hpp>
#include <symtomo/matlin.hpp>
#include <symtomo/statesim.hpp>
#include <symtomo/symmetry.hpp>

using namespace symtomo;

namespace {

SymmetricBasis make_basis(const std::string& name, int n) {
    return symmetric_basis(catalog_symmetry(name, n));
}

struct Problem {
    SymmetricBasis basis;
    DensityMatrix rho;
    MeasurementSet set;
    MeasurementRecord record;
};

Problem make_problem(const std::string& name, int n, const NoiseModel& noise) {
    Problem p{make_basis(name, n), cat_state(n, 0.5), {}, {}};
    p.set = select_quorum(polarization_projector_pool(n), p.basis);
    p.record = simulate(p.rho, p.set, noise);
    return p;
}

NoiseModel photonic_noise(std::uint64_t seed) {
    NoiseModel noise;
    noise.kind = NoiseKind::binomial_photonic;
    noise.mu = 0.18;
    noise.lambda_dc = 5e-5;
    noise.n_trials = 500000;
    noise.seed = seed;
    return noise;
}

}  // namespace

static void BM_SymmetricBasisPermutation(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const SymmetrySpec spec = catalog_symmetry("permutation", n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(symmetric_basis(spec));
    }
}
BENCHMARK(BM_SymmetricBasisPermutation)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_SymmetricBasisGlobalRotation(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const SymmetrySpec spec = catalog_symmetry("global_rotation_z", n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(symmetric_basis(spec));
    }
}
BENCHMARK(BM_SymmetricBasisGlobalRotation)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_SymmetricBasisWerner(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const SymmetrySpec spec = catalog_symmetry("werner", n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(symmetric_basis(spec));
    }
}
BENCHMARK(BM_SymmetricBasisWerner)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

static void BM_SelectQuorum(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const SymmetricBasis basis = make_basis("permutation", n);
    const MeasurementSet pool = polarization_projector_pool(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(select_quorum(pool, basis));
    }
}
BENCHMARK(BM_SelectQuorum)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_ProjectSymmetric(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const SymmetricBasis basis = make_basis("permutation", n);
    const DensityMatrix rho = random_density(n, dim_for_qubits(n), 11);
    for (auto _ : state) {
        benchmark::DoNotOptimize(project_symmetric(rho, basis));
    }
}
BENCHMARK(BM_ProjectSymmetric)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_SimulatePhotonic(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Problem p = make_problem("permutation", n, photonic_noise(7));
    NoiseModel noise = photonic_noise(7);
    for (auto _ : state) {
        noise.seed += 1;
        benchmark::DoNotOptimize(simulate(p.rho, p.set, noise));
    }
}
BENCHMARK(BM_SimulatePhotonic)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_LinearInversion(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Problem p = make_problem("permutation", n, photonic_noise(7));
    for (auto _ : state) {
        benchmark::DoNotOptimize(linear_inversion(p.record, p.basis));
    }
}
BENCHMARK(BM_LinearInversion)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_VqtPermutation(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Problem p = make_problem("permutation", n, photonic_noise(7));
    for (auto _ : state) {
        benchmark::DoNotOptimize(vqt_estimate(p.record, p.basis));
    }
}
BENCHMARK(BM_VqtPermutation)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_VqtIndividualRotation(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const SymmetricBasis basis = make_basis("individual_rotation_z", n);
    const DensityMatrix rho = random_symmetric_state(basis, dim_for_qubits(n), 5);
    const MeasurementSet set = select_quorum(polarization_projector_pool(n), basis);
    const MeasurementRecord record = simulate(rho, set, photonic_noise(7));
    for (auto _ : state) {
        benchmark::DoNotOptimize(vqt_estimate(record, basis));
    }
}
BENCHMARK(BM_VqtIndividualRotation)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_Fidelity(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const DensityMatrix a = random_density(n, dim_for_qubits(n), 3);
    const DensityMatrix b = random_density(n, dim_for_qubits(n), 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fidelity(a, b));
    }
}
BENCHMARK(BM_Fidelity)->DenseRange(2, 5)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
