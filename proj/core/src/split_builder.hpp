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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "comesh/bit_id.hpp"
#include "comesh/mesh.hpp"
#include "comesh/relax_partition.hpp"
#include "comesh/separator.hpp"

namespace comesh::detail {

struct LeafSpan {
  std::size_t begin = 0, end = 0;
  BitId id;
};

/// Separator config whose seed is derived from the node id.
SeparatorConfig seeded(const SeparatorConfig& cfg, const BitId& id);

/**
 * Recursive separator splits over a slice of a working order. Each optional
 * sink receives its part of the result.
 */
class SplitBuilder {
 public:
  SplitBuilder(const Mesh& mesh, const SeparatorConfig& cfg, SeparatorWorkspace& ws)
      : mesh_(mesh), cfg_(cfg), ws_(ws) {}

  std::vector<BitId>* vertex_id = nullptr;
  const EdgeTable* edge_table = nullptr;
  std::vector<std::optional<BitId>>* owner = nullptr;
  std::vector<StampedEdge>* stamped = nullptr;
  std::vector<LeafSpan>* leaves = nullptr;

  /// Splits order[lo, hi) below node `id`; `levels` < 0 means down to single vertices.
  void split(std::vector<std::uint32_t>& order, std::size_t lo, std::size_t hi, const BitId& id, int levels);

 private:
  const Mesh& mesh_;
  const SeparatorConfig& cfg_;
  SeparatorWorkspace& ws_;
};

/// Records the edges between the workspace's side-0 and side-1 members of
/// `part0` as owned by `id`.
void stamp_crossing(const Mesh& mesh, std::span<const std::uint32_t> part0, const SeparatorWorkspace& ws,
                    const BitId& id, const EdgeTable* table, std::vector<std::optional<BitId>>* owner,
                    std::vector<StampedEdge>* stamped);

}  // namespace comesh::detail
