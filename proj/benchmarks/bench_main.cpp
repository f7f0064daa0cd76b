// SPDX-License-Identifier: MIT
#include <benchmark/benchmark.h>

#include "qlattice/ontic.hpp"
#include "qlattice/quantum.hpp"
#include "qlattice/real.hpp"
#include "qlattice/tensor.hpp"

namespace {

using namespace qlattice;

RealSpacePtr zprime(int n) { return std::make_shared<const RealSpace>(make_zprime(n)); }

void BM_BuildTensorZprime(benchmark::State& state) {
  const auto z = zprime(int(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_tensor(z, z).space->size());
}
BENCHMARK(BM_BuildTensorZprime)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_NormalizePairs(benchmark::State& state) {
  const auto z = zprime(2);
  const TensorProduct t(z, z);
  std::vector<std::vector<Gen>> sets;
  for (Id a = 0; a < z->size(); ++a)
    for (Id b = 0; b < z->size(); ++b)
      for (Id c = 0; c < z->size(); ++c) sets.push_back({{a, b}, {c, a}, {b, c}});
  for (auto _ : state)
    for (const auto& g : sets) benchmark::DoNotOptimize(t.normalize_general(g));
  state.SetItemsProcessed(std::int64_t(state.iterations() * sets.size()));
}
BENCHMARK(BM_NormalizePairs)->Unit(benchmark::kMillisecond);

void BM_CompletionEnumerate(benchmark::State& state) {
  const auto z = zprime(int(state.range(0)));
  for (auto _ : state) {
    const Completion c(z);
    benchmark::DoNotOptimize(c.enumerate().theta.size());
  }
}
BENCHMARK(BM_CompletionEnumerate)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_ClosureTwoQubitPair(benchmark::State& state) {
  const auto z = zprime(2);
  const auto t = build_tensor(z, z);
  const auto& s = t.space->space;
  const IdSet u{s.maximal()[0], s.maximal()[1]};
  for (auto _ : state) benchmark::DoNotOptimize(closure(s, u, ClosureMode::full).size());
}
BENCHMARK(BM_ClosureTwoQubitPair)->Unit(benchmark::kMicrosecond);

void BM_LambdaScan(benchmark::State& state) {
  const auto z = zprime(2);
  const auto phi = bell_marginals(make_bell(z, z));
  for (auto _ : state) benchmark::DoNotOptimize(lambda_search(phi).scanned);
}
BENCHMARK(BM_LambdaScan)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
