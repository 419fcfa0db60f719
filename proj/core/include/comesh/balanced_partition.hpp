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
#include <span>
#include <vector>

#include "comesh/decomp_tree.hpp"
#include "comesh/mesh.hpp"
#include "comesh/necklace.hpp"
#include "comesh/separator.hpp"

namespace comesh {

/// Two-way split of a vertex subset with exact edge counts.
struct FBPartition {
  std::vector<std::uint32_t> left;
  std::vector<std::uint32_t> right;
  std::vector<Edge> crossing_edges;  ///< E(left, right), canonical u < v
  std::size_t outgoing_left = 0;     ///< edges from left to outside the subset
  std::size_t outgoing_right = 0;
  Window window;                     ///< necklace window over the red-blue array
};

/// Per-vertex count of neighbors outside `subset`, aligned with `subset`.
std::vector<std::uint32_t> outgoing_counts(const Mesh& mesh, std::span<const std::uint32_t> subset);

/// build_red_blue_array over the leaf order of a whole-mesh tree.
RedBlueArray build_red_blue_array(const DecompTree& tree, std::span<const std::uint32_t> outer_per_vertex);

/**
 * @brief Necklace split of a subset already arranged in leaf order.
 *
 * Left is the set of blues inside the window, right everything else in leaf
 * order. Counts are recomputed from the mesh.
 */
FBPartition partition_by_necklace(const Mesh& mesh, std::span<const std::uint32_t> leaf_order);

/// Builds a plain decomposition tree of the subset, then partition_by_necklace.
FBPartition fully_balanced_partition(const Mesh& mesh, std::span<const std::uint32_t> subset,
                                     const SeparatorConfig& cfg);

/// c_cross n^a (1 + beta^a) / (1 - beta^a) with a = 1 - 1/d.
double fb_crossing_bound(const SeparatorConfig& cfg, int d, std::size_t n);

DecompTree build_fb_tree(const Mesh& mesh, const SeparatorConfig& cfg);

/**
 * @brief Edges crossing at the nodes on the root paths of the two cuts that
 * bound the blue range [first, last) of leaf positions.
 *
 * A cut between neighboring leaves contributes the nodes from their lowest
 * common ancestor up to the root. A cut at either end of the array
 * contributes only the root.
 */
std::vector<Edge> cut_path_edges(const DecompTree& tree, std::size_t first, std::size_t last);

struct FbAudit {
  TreeAudit structure;
  std::size_t max_sibling_diff = 0;
  std::size_t max_outgoing_diff = 0;
  double max_crossing_ratio = 0.0;  ///< crossing / fb_crossing_bound
  std::size_t size_violations = 0;
  std::size_t outgoing_violations = 0;
  std::size_t crossing_violations = 0;
  std::size_t level_violations = 0;  ///< node at depth i off N/2^i by more than i
  bool ok() const noexcept {
    return structure.ok() && size_violations + outgoing_violations + crossing_violations +
                                     level_violations ==
                                 0;
  }
};

/// `b` defaults to the measured maximum degree.
FbAudit audit_fb_tree(const DecompTree& tree, const Mesh& mesh, const SeparatorConfig& cfg, int b = -1);

enum class KwayMethod { Partial, Full };

/// k contiguous blocks of the fully-balanced leaf order.
std::vector<std::vector<std::uint32_t>> kway_partition(const Mesh& mesh, std::size_t k,
                                                       const SeparatorConfig& cfg,
                                                       KwayMethod method = KwayMethod::Partial);

}  // namespace comesh
