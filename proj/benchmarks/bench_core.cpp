#include <benchmark/benchmark.h>

#include <string>

#include "pseudoform/complex.hpp"
#include "pseudoform/generators.hpp"
#include "pseudoform/isomorphism.hpp"
#include "pseudoform/moves.hpp"
#include "pseudoform/normality.hpp"
#include "pseudoform/reducer.hpp"
#include "pseudoform/rigidity.hpp"

using namespace pseudoform;

namespace {

SimplicialComplex stacked(std::int64_t subdivisions) {
  return generate(parse_generator_spec("stacked:" + std::to_string(subdivisions) + ":1")).complex;
}

SimplicialComplex grown(std::int64_t budget) {
  return generate(parse_generator_spec("random:3:" + std::to_string(budget))).complex;
}

void BM_FVector(benchmark::State& state) {
  const auto k = stacked(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(f_vector(k));
  state.counters["f3"] = static_cast<double>(k.facets().size());
}
BENCHMARK(BM_FVector)->Arg(10)->Arg(50)->Arg(200);

void BM_ValidateNormal(benchmark::State& state) {
  const auto k = stacked(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(validate_normal(k));
}
BENCHMARK(BM_ValidateNormal)->Arg(10)->Arg(50)->Arg(200);

void BM_Isomorphism(benchmark::State& state) {
  const auto k = grown(state.range(0));
  std::map<Vertex, Vertex> shift;
  for (Vertex v : k.vertices()) shift[v] = 1000 - v;
  const auto other = relabel(k, shift);
  for (auto _ : state) benchmark::DoNotOptimize(are_isomorphic(k, other));
}
BENCHMARK(BM_Isomorphism)->Arg(10)->Arg(30);

void BM_RigidityRank(benchmark::State& state) {
  const auto g = graph_of(stacked(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rigidity_rank(g));
}
BENCHMARK(BM_RigidityRank)->Arg(10)->Arg(40)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_Reduce(benchmark::State& state) {
  const auto k = grown(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(reduce(k));
}
BENCHMARK(BM_Reduce)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_ReduceFolded(benchmark::State& state) {
  const auto sphere = generate(parse_generator_spec("stacked:4:9")).complex;
  const auto site = *find_admissible_fold(sphere);
  const auto k = edge_fold(sphere, site.s1, site.s2, site.psi).complex;
  for (auto _ : state) benchmark::DoNotOptimize(reduce(k));
}
BENCHMARK(BM_ReduceFolded)->Unit(benchmark::kMillisecond);

void BM_Replay(benchmark::State& state) {
  const auto trace = reduce(grown(state.range(0))).trace;
  for (auto _ : state) benchmark::DoNotOptimize(replay(trace));
}
BENCHMARK(BM_Replay)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_AdmissibleFolds(benchmark::State& state) {
  const auto k = stacked(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(admissible_folds(k));
}
BENCHMARK(BM_AdmissibleFolds)->Arg(4)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_Generate(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(grown(state.range(0)));
}
BENCHMARK(BM_Generate)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
