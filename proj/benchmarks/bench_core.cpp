#include <benchmark/benchmark.h>

#include "bprt/certification.hpp"
#include "bprt/corpus.hpp"
#include "bprt/criteria.hpp"
#include "bprt/expansion.hpp"
#include "bprt/operators.hpp"
#include "bprt/sweep.hpp"

namespace {

bprt::CorpusFamily family(bprt::Index dim) {
  bprt::CorpusSpec spec;
  spec.kind = bprt::CorpusKind::RandomDecay;
  spec.dim = spec.count = dim;
  spec.decay = 1.0;
  spec.scale = 0.2;
  spec.seed = 1;
  spec.base = bprt::BaseKind::RandomGeneral;
  return bprt::generate(spec);
}

void BM_GeneralizedSum(benchmark::State& state) {
  const auto c = family(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bprt::generalized_sum(c.basis, c.dual, c.family));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GeneralizedSum)->RangeMultiplier(2)->Range(32, 512)->Complexity(benchmark::oNSquared);

void BM_BuildBundle(benchmark::State& state) {
  const auto c = family(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bprt::build_bundle(c.basis, c.dual, c.family, c.basis.count()));
}
BENCHMARK(BM_BuildBundle)->RangeMultiplier(2)->Range(32, 256);

void BM_Certify(benchmark::State& state) {
  const auto c = family(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bprt::certify(c.basis, c.dual, c.family));
}
BENCHMARK(BM_Certify)->RangeMultiplier(2)->Range(16, 256)->Unit(benchmark::kMillisecond);

void BM_Expand(benchmark::State& state) {
  const auto c = family(state.range(0));
  const auto bundle = bprt::build_bundle(c.basis, c.dual, c.family, c.basis.count());
  const bprt::ExpansionSolver solver(bundle);
  const bprt::Vector y = bprt::Vector::Ones(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bprt::expand(solver, c.basis, y));
}
BENCHMARK(BM_Expand)->RangeMultiplier(2)->Range(16, 256);

void BM_OperatorGap(benchmark::State& state) {
  const auto c = family(state.range(0));
  const bprt::Index n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(bprt::operator_gap(c.basis, c.dual, c.family, n / 2, n));
}
BENCHMARK(BM_OperatorGap)->RangeMultiplier(2)->Range(16, 256)->Unit(benchmark::kMillisecond);

void BM_Sweep(benchmark::State& state) {
  const auto c = family(128);
  const auto levels = bprt::default_levels(128);
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bprt::sweep(c.basis, c.dual, c.family, levels, 1e-6, threads));
}
BENCHMARK(BM_Sweep)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
