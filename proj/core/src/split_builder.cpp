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

#include "split_builder.hpp"

#include <algorithm>

#include "comesh/rng.hpp"

namespace comesh::detail {

SeparatorConfig seeded(const SeparatorConfig& cfg, const BitId& id) {
  SeparatorConfig c = cfg;
  c.seed = mix_seed(cfg.seed, id.hash());
  return c;
}

void stamp_crossing(const Mesh& mesh, std::span<const std::uint32_t> part0, const SeparatorWorkspace& ws,
                    const BitId& id, const EdgeTable* table, std::vector<std::optional<BitId>>* owner,
                    std::vector<StampedEdge>* stamped) {
  if (!owner && !stamped) return;
  for (std::uint32_t u : part0) {
    const std::size_t base = mesh.half_edge_begin(u);
    auto nb = mesh.neighbors(u);
    for (std::size_t k = 0; k < nb.size(); ++k) {
      const std::uint32_t v = nb[k].to;
      if (!ws.member(v) || ws.side(v) != 1) continue;
      if (owner && table) (*owner)[table->edge_of_half(base + k)] = id;
      if (stamped) stamped->push_back({std::min(u, v), std::max(u, v), id});
    }
  }
}

void SplitBuilder::split(std::vector<std::uint32_t>& order, std::size_t lo, std::size_t hi, const BitId& id,
                         int levels) {
  if (hi - lo <= 1 || levels == 0) {
    if (vertex_id)
      for (std::size_t i = lo; i < hi; ++i) (*vertex_id)[order[i]] = id;
    if (leaves) leaves->push_back({lo, hi, id});
    return;
  }
  std::span<std::uint32_t> range(order.data() + lo, hi - lo);
  find_separator(mesh_, range, seeded(cfg_, id), ws_);
  auto mid_it = std::stable_partition(range.begin(), range.end(),
                                      [this](std::uint32_t v) { return ws_.side(v) == 0; });
  const std::size_t mid = lo + static_cast<std::size_t>(mid_it - range.begin());
  stamp_crossing(mesh_, std::span<const std::uint32_t>(order.data() + lo, mid - lo), ws_, id, edge_table,
                 owner, stamped);
  const int next = levels < 0 ? levels : levels - 1;
  split(order, lo, mid, id.child(false), next);
  split(order, mid, hi, id.child(true), next);
}

}  // namespace comesh::detail
