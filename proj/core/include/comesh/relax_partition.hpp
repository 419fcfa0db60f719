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

#include "comesh/bit_id.hpp"
#include "comesh/decomp_tree.hpp"
#include "comesh/mesh.hpp"
#include "comesh/separator.hpp"

namespace comesh {

/// Thresholds shared by every level of one relax-balanced build.
struct RelaxContext {
  std::size_t global_n = 0;
  double beta = 0.8;
  double c_size = 4.0;
  double c_out = 4.0;
  int depth_override = 0;  ///< positive: use this upper-tree depth instead of the formula

  static RelaxContext for_mesh(const Mesh& mesh, const SeparatorConfig& cfg);

  /// log2(global_n).
  double log_n() const;
  /// Subsets smaller than log2^3(global_n) get a full tree.
  double small_threshold() const;
  /// ceil(3 log_{1/beta} log2(global_n)), at least 1, unless overridden.
  int upper_depth() const;
  /// A leaf is refined when its outer-edge count exceeds outer_total / log2^2(global_n).
  double refine_threshold(std::size_t outer_total) const;
};

/// Maximal run of leaf_array that must stay together (size 1 once refined).
struct RelaxLeaf {
  std::size_t begin = 0, end = 0;
  BitId id;
  std::size_t size() const noexcept { return end - begin; }
};

struct UpperLeaf {
  BitId id;
  std::size_t begin = 0, end = 0;
  std::size_t outer_edges = 0;
  bool refined = false;
};

/// An edge stamped crossing while building a relax tree.
struct StampedEdge {
  std::uint32_t u = 0, v = 0;
  BitId owner;
};

struct RelaxTree {
  std::vector<std::uint32_t> leaf_array;
  std::vector<RelaxLeaf> leaves;         ///< covers leaf_array in order
  std::vector<UpperLeaf> upper_leaves;   ///< empty when full_tree
  std::vector<StampedEdge> owned_edges;
  bool full_tree = false;

  std::size_t refined_count() const;
  std::size_t max_unrefined_size() const;
};

RelaxTree build_relax_partition_tree(const Mesh& mesh, std::span<const std::uint32_t> subset,
                                     const RelaxContext& ctx, const SeparatorConfig& cfg);

struct RBPartition {
  std::vector<std::uint32_t> left;
  std::vector<std::uint32_t> right;
  std::vector<Edge> crossing_edges;
  std::size_t outgoing_left = 0;
  std::size_t outgoing_right = 0;
  std::size_t raw_begin = 0, raw_end = 0;  ///< necklace window in blue positions
  std::size_t begin = 0, end = 0;          ///< after moving cuts to leaf boundaries
  std::size_t displacement = 0;            ///< blues moved by the adjustment
};

/**
 * @brief Necklace split that keeps every multi-vertex leaf on one side.
 *
 * A window endpoint inside a leaf moves to the closer boundary of that leaf;
 * at equal distance it moves outward. If the result would be empty or the
 * whole array, the other boundary is tried.
 */
RBPartition partition_relax_order(const Mesh& mesh, std::span<const std::uint32_t> leaf_order,
                                  std::span<const RelaxLeaf> leaves);

RBPartition relax_balanced_partition(const Mesh& mesh, std::span<const std::uint32_t> subset,
                                     const RelaxContext& ctx, const SeparatorConfig& cfg);

/// One split made while building a relax-balanced tree.
struct RbNodeRecord {
  BitId id;
  std::size_t size = 0;
  std::size_t left = 0, right = 0;
  std::size_t outgoing_left = 0, outgoing_right = 0;
  std::size_t crossing = 0;
  bool full_tree = false;
  std::size_t upper_leaves = 0;
  std::size_t refined_leaves = 0;
  std::size_t max_unrefined = 0;
  std::size_t displacement = 0;
};

struct RelaxOptions {
  double c_size = 4.0;
  double c_out = 4.0;
  /// Positive values shorten the upper tree. At desk-scale sizes the formula
  /// depth exceeds the real tree depth, which makes rb coincide with fb.
  int upper_depth = 0;
};

DecompTree build_rb_tree(const Mesh& mesh, const SeparatorConfig& cfg,
                         const RelaxOptions& opts = {}, std::vector<RbNodeRecord>* records = nullptr);

struct RbAudit {
  std::size_t size_violations = 0;
  std::size_t outgoing_violations = 0;
  std::size_t crossing_violations = 0;
  std::size_t refined_violations = 0;
  std::size_t leaf_size_violations = 0;
  double max_size_slack = 0.0;      ///< |left-right| - 1 over |G_p|/L^3
  double max_outgoing_slack = 0.0;  ///< (|out diff| - 2b - 1) over out_right/L^2
  std::size_t max_refined = 0;
  bool ok() const noexcept {
    return size_violations + outgoing_violations + crossing_violations + refined_violations +
               leaf_size_violations ==
           0;
  }
};

/// Checks every recorded split against the relax-balanced bounds.
RbAudit audit_rb_records(std::span<const RbNodeRecord> records, const RelaxContext& ctx,
                         const SeparatorConfig& cfg, int d, int b);

/// Per-depth max/min node size ratio of a tree (leaves included).
std::vector<double> level_size_ratios(const DecompTree& tree, const Mesh& mesh);

}  // namespace comesh
