// Copyright 2026 The dpdsg Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <memory>

#include "benchmark/benchmark.h"
#include "dpdsg/continual_dsg.h"
#include "dpdsg/densest.h"
#include "dpdsg/generators.h"
#include "dpdsg/static_solver.h"

namespace dpdsg {
namespace {

// Planted clique of size sqrt(n) over roughly 4n background edges.
SimpleGraph PlantedGraph(VertexId n) {
  RandomStreamParams p;
  p.n = n;
  p.clique_size = 1;
  while (static_cast<VertexId>(p.clique_size + 1) * (p.clique_size + 1) <= n) {
    ++p.clique_size;
  }
  p.m = static_cast<std::int64_t>(p.clique_size) * (p.clique_size - 1) / 2 +
        4 * static_cast<std::int64_t>(n);
  p.model = RandomModel::kPlantedClique;
  return ReplayStream(*GenerateRandomStream(p, 1));
}

void BM_ExactDensest(benchmark::State& state) {
  const SimpleGraph g = PlantedGraph(static_cast<VertexId>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ExactDensest(g));
  state.SetComplexityN(g.num_edges());
}
BENCHMARK(BM_ExactDensest)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_CharikarPeel(benchmark::State& state) {
  const SimpleGraph g = PlantedGraph(static_cast<VertexId>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(CharikarPeel(g));
  state.SetComplexityN(g.num_edges());
}
BENCHMARK(BM_CharikarPeel)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_NoisyPeeling(benchmark::State& state) {
  const SimpleGraph g = PlantedGraph(static_cast<VertexId>(state.range(0)));
  const NoisyPeelingSolver solver(kDefaultPeelingEta, kDefaultPeelingZetaScale);
  NoiseSource src(7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solver.Solve(g, 1.0, 1e-6, src));
  }
}
BENCHMARK(BM_NoisyPeeling)->RangeMultiplier(4)->Range(64, 4096);

// Amortized cost of one ProcessUpdate over a planted-clique stream.
void BM_ProcessUpdate(benchmark::State& state) {
  const auto n = static_cast<VertexId>(state.range(0));
  RandomStreamParams sp;
  sp.n = n;
  sp.clique_size = n / 4;
  sp.m = static_cast<std::int64_t>(sp.clique_size) * (sp.clique_size - 1) / 2 +
         4 * static_cast<std::int64_t>(n);
  sp.model = RandomModel::kPlantedClique;
  const EdgeStream stream = *GenerateRandomStream(sp, 2);
  DsgParams p;
  p.n = n;
  p.eps = 4.0;
  p.eta = 0.5;
  auto solver = std::make_shared<OracleSolver>();
  std::int64_t steps = 0;
  for (auto _ : state) {
    state.PauseTiming();
    auto dsg = *PrivateContinualDsg::Create(p, {}, solver, NoiseSource(3));
    state.ResumeTiming();
    for (const Update& u : stream.updates) {
      benchmark::DoNotOptimize(dsg->ProcessUpdate(u));
    }
    steps += static_cast<std::int64_t>(stream.length());
  }
  state.SetItemsProcessed(steps);
}
BENCHMARK(BM_ProcessUpdate)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace dpdsg

BENCHMARK_MAIN();
