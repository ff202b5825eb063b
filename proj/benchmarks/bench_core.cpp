#include <benchmark/benchmark.h>

#include "qmaxent/correlation.hpp"
#include "qmaxent/numrange.hpp"
#include "qmaxent/random.hpp"

using namespace qmaxent;

static void BM_HermitianEig(benchmark::State& state) {
  Rng rng(42);
  const CMatrix h = random_hermitian(state.range(0), rng);
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eig(h));
}
BENCHMARK(BM_HermitianEig)->Arg(3)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

static void BM_MaxEntInterior(benchmark::State& state) {
  Rng rng(42);
  const auto d = state.range(0);
  std::vector<CMatrix> obs;
  for (int i = 0; i < 3; ++i) obs.push_back(random_hermitian(d, rng));
  const ObservableSet u(obs);
  const RVector alpha = expected_values(u, random_state(d, rng));
  for (auto _ : state) benchmark::DoNotOptimize(maxent(u, alpha));
}
BENCHMARK(BM_MaxEntInterior)->Arg(3)->Arg(5)->Arg(8);

static void BM_C3Ghz(benchmark::State& state) {
  const auto rho = density_from_vector(ghz_vector(Complex(0.6, 0)));
  for (auto _ : state) benchmark::DoNotOptimize(c3(rho));
}
BENCHMARK(BM_C3Ghz)->Unit(benchmark::kMillisecond);

static void BM_BoundarySweep(benchmark::State& state) {
  Rng rng(42);
  const CMatrix a = random_complex(state.range(0), state.range(0), rng);
  for (auto _ : state) benchmark::DoNotOptimize(boundary_sweep(a, static_cast<int>(state.range(1))));
}
BENCHMARK(BM_BoundarySweep)->Args({3, 512})->Args({3, 2048})->Args({5, 2048})->Unit(benchmark::kMillisecond);

static void BM_DiscontinuityCandidates(benchmark::State& state) {
  Rng rng(42);
  const CMatrix a = random_complex(state.range(0), state.range(0), rng);
  for (auto _ : state) benchmark::DoNotOptimize(discontinuity_candidates(a, 2048));
}
BENCHMARK(BM_DiscontinuityCandidates)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
