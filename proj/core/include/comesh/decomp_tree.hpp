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
#include <string>
#include <vector>

#include "comesh/bit_id.hpp"
#include "comesh/mesh.hpp"
#include "comesh/separator.hpp"

namespace comesh {

/**
 * @brief Decomposition tree stored as a leaf-ordered vertex array plus ids.
 *
 * No node objects exist. The vertices of node p are the vertices whose id
 * starts with p, and they occupy one contiguous range of `leaf_array`.
 * Edge e is crossing at node `edge_owner[e]`; edges are numbered as in
 * EdgeTable.
 */
struct DecompTree {
  std::vector<std::uint32_t> leaf_array;
  std::vector<BitId> vertex_id;                  ///< indexed by vertex
  std::vector<Edge> edges;                       ///< canonical edge list
  std::vector<std::optional<BitId>> edge_owner;  ///< indexed like `edges`

  std::size_t num_vertices() const noexcept { return leaf_array.size(); }
  /// Position of every vertex in leaf_array.
  std::vector<std::uint32_t> positions() const;
  std::size_t depth() const;
};

DecompTree build_decomposition_tree(const Mesh& mesh, const SeparatorConfig& cfg);

/// Empty tree skeleton for `mesh` with every edge unowned.
DecompTree make_tree_skeleton(const Mesh& mesh);

/// Recomputes every owner as the longest common prefix of the endpoint ids.
void assign_edge_owners(DecompTree& tree);

struct IndexRange {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const noexcept { return end - begin; }
  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

/// Positions of the vertices below `id`. Throws std::out_of_range for an
/// id that names no node.
IndexRange subtree_range(const DecompTree& tree, const BitId& id);

enum class EdgeClass { Inner, Crossing, Outgoing, Outer, Unrelated };
std::string edge_class_name(EdgeClass c);

/**
 * @brief Class of edge `e` relative to node `node`.
 *
 * Outer and Outgoing both mean exactly one endpoint lies below `node`.
 * Outer: the edge is crossing at the parent of `node`, so it joins `node` to
 * its sibling. Outgoing: crossing higher up, so it also leaves the parent.
 */
EdgeClass classify_edge(const DecompTree& tree, std::size_t e, const BitId& node);

/// Per-node measurements derived from leaf positions alone.
struct NodeStats {
  BitId id;
  std::size_t begin = 0, end = 0;  ///< range in leaf_array
  bool leaf = false;
  std::size_t left_size = 0, right_size = 0;
  std::size_t crossing = 0;        ///< edges between the two children
  std::size_t outer = 0;           ///< edges with exactly one endpoint inside
  std::size_t outgoing_left = 0;   ///< edges leaving child 0 but not this node
  std::size_t outgoing_right = 0;  ///< edges leaving child 1 but not this node
  std::size_t size() const noexcept { return end - begin; }
};

/// Walks every node in preorder. Requires leaf_array sorted by id.
std::vector<NodeStats> node_stats(const DecompTree& tree, const Mesh& mesh);

struct TreeAudit {
  std::size_t permutation_violations = 0;
  std::size_t contiguity_violations = 0;
  std::size_t ownership_violations = 0;
  std::size_t balance_violations = 0;
  std::size_t crossing_violations = 0;
  double max_balance = 0.0;         ///< max child size / node size
  double max_crossing_ratio = 0.0;  ///< max crossing / (c_cross n^(1-1/d))
  std::size_t depth = 0;
  std::size_t owned_edges = 0;
  std::vector<std::string> messages;

  bool ok() const noexcept {
    return permutation_violations + contiguity_violations + ownership_violations +
               balance_violations + crossing_violations ==
           0;
  }
};

/// Structure audit plus the separator balance and crossing bounds per node.
TreeAudit verify_tree(const DecompTree& tree, const Mesh& mesh, const SeparatorConfig& cfg);

/// Structure only: permutation, ordering/contiguity and edge ownership.
TreeAudit verify_tree_structure(const DecompTree& tree, const Mesh& mesh);

}  // namespace comesh
