// Serial reference vs OpenMP kernels.

#include <random>

#include <benchmark/benchmark.h>

#include "bnsaga/kernels.hpp"

using namespace bnsaga;

namespace {

GlmProblem make(Index n, Index d, Loss loss) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal;
  Matrix a(d, n);
  for (Index k = 0; k < a.size(); ++k) a.data()[k] = normal(rng);
  Vector y(n);
  for (Index i = 0; i < n; ++i) y[i] = loss == Loss::ridge ? normal(rng) : (rng() & 1 ? 1.0 : -1.0);
  return make_problem({FeatureMatrix(std::move(a)), std::move(y)}, loss, 1e-3);
}

template <Vector (*Grad)(const GlmProblem&, const Vector&)>
void full_gradient(benchmark::State& state) {
  const auto p = make(state.range(0), 50, Loss::logistic);
  const Vector w = Vector::Constant(50, 0.01);
  for (auto _ : state) benchmark::DoNotOptimize(Grad(p, w));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <std::vector<double> (*Sums)(const GlmProblem&, Index)>
void subset_sums(benchmark::State& state) {
  const auto p = make(18, 10, Loss::ridge);
  for (auto _ : state) benchmark::DoNotOptimize(Sums(p, state.range(0)));
}

template <std::vector<double> (*Trials)(const MatrixEnsemble&, Index, Index, std::uint64_t)>
void bernstein_trials(benchmark::State& state) {
  const auto ens = random_ensemble(8, 30, 3);
  for (auto _ : state) benchmark::DoNotOptimize(Trials(ens, 10, state.range(0), 5));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(full_gradient<serial::full_gradient>)->Arg(10000)->Arg(100000)->Name("full_gradient/serial");
BENCHMARK(full_gradient<parallel::full_gradient>)->Arg(10000)->Arg(100000)->Name("full_gradient/parallel");
BENCHMARK(subset_sums<serial::subset_sums>)->Arg(4)->Arg(9)->Name("subset_sums/serial");
BENCHMARK(subset_sums<parallel::subset_sums>)->Arg(4)->Arg(9)->Name("subset_sums/parallel");
BENCHMARK(bernstein_trials<serial::bernstein_trials>)->Arg(10000)->Name("bernstein_trials/serial");
BENCHMARK(bernstein_trials<parallel::bernstein_trials>)->Arg(10000)->Name("bernstein_trials/parallel");

BENCHMARK_MAIN();
