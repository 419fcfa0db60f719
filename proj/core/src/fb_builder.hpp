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

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "comesh/balanced_partition.hpp"
#include "split_builder.hpp"

namespace comesh::detail {

/// Necklace split of `leaf_order`; leaves `ws` marking the subset with
/// side 0 for left and side 1 for right.
FBPartition necklace_split(const Mesh& mesh, std::span<const std::uint32_t> leaf_order, SeparatorWorkspace& ws);

/// Fully balanced split of `subset` using `cfg` as given (already seeded).
FBPartition fb_split(const Mesh& mesh, std::span<const std::uint32_t> subset, const SeparatorConfig& cfg,
                     SeparatorWorkspace& ws);

/// Recursive fully balanced splits with the same optional sinks as SplitBuilder.
class FbBuilder {
 public:
  FbBuilder(const Mesh& mesh, const SeparatorConfig& cfg, SeparatorWorkspace& ws)
      : mesh_(mesh), cfg_(cfg), ws_(ws) {}

  std::vector<BitId>* vertex_id = nullptr;
  const EdgeTable* edge_table = nullptr;
  std::vector<std::optional<BitId>>* owner = nullptr;
  std::vector<LeafSpan>* leaves = nullptr;

  void split(std::vector<std::uint32_t>& order, std::size_t lo, std::size_t hi, const BitId& id, int levels);

 private:
  const Mesh& mesh_;
  const SeparatorConfig& cfg_;
  SeparatorWorkspace& ws_;
};

}  // namespace comesh::detail
