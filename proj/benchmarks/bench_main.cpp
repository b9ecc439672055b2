#include <benchmark/benchmark.h>

#include <vector>

#include "dfsslab/dynamics.hpp"
#include "dfsslab/ensemble.hpp"
#include "dfsslab/resultant.hpp"
#include "dfsslab/subspace.hpp"

namespace {

using namespace dfsslab;

DeltaMatrix gaussian(int n, std::uint64_t seed) {
  Rng rng(seed);
  return sample_delta({EnsembleKind::gaussian_symmetric, n, 1.0, seed}, rng);
}

void BM_Hamiltonian(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DeltaMatrix d = gaussian(n, 1);
  for (auto _ : state) {
    LindbladModel model(QubitCount(n), d);
    benchmark::DoNotOptimize(model.hamiltonian().data());
  }
}
BENCHMARK(BM_Hamiltonian)->DenseRange(2, 8, 2);

void BM_CdfsInvariant(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const LindbladModel model(QubitCount(n), gaussian(n, 2));
  const Subspace dfs = dfs_basis(model, n / 2);
  for (auto _ : state) benchmark::DoNotOptimize(cdfs_invariant(model, dfs).dim());
}
BENCHMARK(BM_CdfsInvariant)->DenseRange(3, 7, 1);

void BM_CdfsCommutator(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const LindbladModel model(QubitCount(n), gaussian(n, 2));
  const Subspace dfs = dfs_basis(model, 1);
  for (auto _ : state) benchmark::DoNotOptimize(cdfs_commutator(model, dfs, n + 1).dim());
}
BENCHMARK(BM_CdfsCommutator)->DenseRange(3, 6, 1);

void BM_Resultant(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DeltaMatrix d = gaussian(n, 3);
  for (auto _ : state) benchmark::DoNotOptimize(cdfs_exists_v1(d).normalized_resultant);
}
BENCHMARK(BM_Resultant)->DenseRange(3, 8, 1);

void BM_Superoperator(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const LindbladModel model(QubitCount(n), gaussian(n, 4));
  for (auto _ : state) benchmark::DoNotOptimize(superoperator(model).data());
}
BENCHMARK(BM_Superoperator)->DenseRange(1, 4, 1);

void BM_Evolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const LindbladModel model(QubitCount(n), gaussian(n, 5));
  CVector psi = CVector::Zero(model.dim());
  psi(1) = 1.0;
  const DensityMatrix rho0 = DensityMatrix::pure(psi);
  const std::vector<double> times{0.0, 0.5, 1.0};
  EvolveOptions opts;
  opts.backend = state.range(1) == 0 ? Backend::expm : Backend::ode;
  for (auto _ : state) benchmark::DoNotOptimize(evolve(model, rho0, times, opts).back().data().data());
}
BENCHMARK(BM_Evolve)->ArgsProduct({{2, 3, 4}, {0, 1}});

void BM_RarityStudy(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(rarity_study({EnsembleKind::gaussian_symmetric, n, 1.0, 6}, 200, Detector::both).hits);
  }
}
BENCHMARK(BM_RarityStudy)->DenseRange(3, 5, 1);

}  // namespace
BENCHMARK_MAIN();
