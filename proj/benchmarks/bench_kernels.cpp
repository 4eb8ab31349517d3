#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>

#include "mqap/evaluation.hpp"
#include "mqap/instance.hpp"
#include "mqap/metrics.hpp"
#include "mqap/ranking.hpp"

namespace {

mqap::Instance make_instance(std::size_t n, std::size_t m) {
  return mqap::generate_uniform({n, m, 0.0, 42, 100});
}

mqap::Permutation shuffled(std::size_t n) {
  auto p = mqap::identity_permutation(n);
  std::mt19937_64 rng(7);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

void BM_EvaluateFull(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto inst = make_instance(n, 2);
  const auto perm = shuffled(n);
  for (auto _ : state) benchmark::DoNotOptimize(mqap::evaluate_full(inst, perm));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EvaluateFull)->RangeMultiplier(2)->Range(8, 128)->Complexity(benchmark::oNSquared);

void BM_EvaluateDelta(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto inst = make_instance(n, 2);
  const auto sol = mqap::make_solution(inst, shuffled(n));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mqap::evaluate_delta(inst, sol, i % n, (i * 7 + 1) % n));
    ++i;
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EvaluateDelta)->RangeMultiplier(2)->Range(8, 128)->Complexity(benchmark::oN);

void BM_DominanceDepth(benchmark::State& state) {
  const auto size = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> v(0, 1000);
  std::vector<mqap::Solution> pop(size);
  for (auto& s : pop) s.objectives = {v(rng), v(rng), v(rng)};
  for (auto _ : state) benchmark::DoNotOptimize(mqap::rank_and_crowd(pop));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DominanceDepth)->RangeMultiplier(2)->Range(16, 512)->Complexity(benchmark::oNSquared);

void BM_Hypervolume(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto points = static_cast<std::size_t>(state.range(1));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  mqap::Front front(points, mqap::Point(d));
  for (auto& p : front) {
    double sum = 0;
    for (auto& x : p) sum += (x = u(rng));
    for (auto& x : p) x /= sum;  // spread points over a simplex-like front
  }
  const mqap::Point ref(d, 1.01);
  for (auto _ : state) benchmark::DoNotOptimize(mqap::hypervolume(front, ref));
}
BENCHMARK(BM_Hypervolume)->ArgsProduct({{2, 3, 4}, {20, 100}});

}  // namespace

BENCHMARK_MAIN();
