// Compares the OpenMP-parallel pruned Sigma_2 kernel against the serial
// recursive reference evaluator, and the parallel rounding batch against a
// serial loop over the same seeds.
#include <benchmark/benchmark.h>

#include <omp.h>

#include "mgw/evaluate.hpp"
#include "mgw/experiments.hpp"
#include "mgw/rng.hpp"
#include "mgw/rounding.hpp"

using namespace mgw;

namespace {

const Formula& abelian_defect() {
  static const Formula f = parse_formula("inf x. sup y. d(x*y, y*x)");
  return f;
}

void BM_sigma2_pruned_parallel(benchmark::State& state) {
  const MetricStructure s = MetricStructure::sym(static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) {
    Value v = sigma2_value(s, abelian_defect());
    benchmark::DoNotOptimize(v);
  }
}

void BM_sigma2_serial_reference(benchmark::State& state) {
  const MetricStructure s = MetricStructure::sym(static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) {
    Value v = evaluate(s, abelian_defect());
    benchmark::DoNotOptimize(v);
  }
}

void BM_round_batch_parallel(benchmark::State& state) {
  for (auto _ : state) {
    ExperimentResult r = round_experiment(64, 3, Rational(1, 3), 64, 7);
    benchmark::DoNotOptimize(r.csv.data());
  }
}

void BM_round_batch_serial(benchmark::State& state) {
  for (auto _ : state) {
    Rational total = 0;
    for (std::uint64_t s = 0; s < 64; ++s) {
      Rng rng = Rng::substream(7, s);
      const Permutation sigma = random_permutation(192, rng);
      total += round_to_subgroup(sigma, 64, 3).achieved_distance;
    }
    benchmark::DoNotOptimize(total);
  }
}

}  // namespace

BENCHMARK(BM_sigma2_pruned_parallel)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sigma2_serial_reference)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_round_batch_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_round_batch_serial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
