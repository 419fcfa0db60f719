/*
 * Copyright 2026 The comesh Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <benchmark/benchmark.h>

#include <numeric>

#include "comesh/balanced_partition.hpp"
#include "comesh/dam_sim.hpp"
#include "comesh/generators.hpp"
#include "comesh/layout.hpp"
#include "comesh/separator.hpp"

namespace {

using namespace comesh;

void BM_FindSeparator(benchmark::State& state) {
  const Mesh m = gen_grid2d(static_cast<int>(state.range(0)));
  std::vector<std::uint32_t> all(m.num_vertices());
  std::iota(all.begin(), all.end(), 0u);
  SeparatorWorkspace ws(m.num_vertices());
  SeparatorConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_separator(m, all, cfg, ws));
    ++cfg.seed;
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(m.num_vertices()));
}
BENCHMARK(BM_FindSeparator)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_BuildFbTree(benchmark::State& state) {
  const Mesh m = gen_grid2d(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_fb_tree(m, {}));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(m.num_vertices()));
}
BENCHMARK(BM_BuildFbTree)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_RelabelMesh(benchmark::State& state) {
  const Mesh m = gen_grid2d(static_cast<int>(state.range(0)));
  const LayoutPermutation perm = random_permutation_layout(m, 1);
  for (auto _ : state) benchmark::DoNotOptimize(relabel_mesh(m, perm));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(m.num_half_edges()));
}
BENCHMARK(BM_RelabelMesh)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_SimulateUpdate(benchmark::State& state) {
  const Mesh m = gen_grid2d(256);
  const MemoryImage img = serialize_layout(cache_oblivious_layout(m, LayoutAlgo::Fb, {}).mesh);
  const auto B = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(simulate_update(img, {B, 64 * B}));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(m.num_half_edges() + m.num_vertices()));
}
BENCHMARK(BM_SimulateUpdate)->Arg(8)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
