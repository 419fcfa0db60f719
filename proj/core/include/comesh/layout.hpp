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
#include <string>
#include <vector>

#include "comesh/decomp_tree.hpp"
#include "comesh/mesh.hpp"
#include "comesh/permutation.hpp"
#include "comesh/separator.hpp"

namespace comesh {

/// Vertex position = rank of its leaf. Throws std::invalid_argument if two
/// vertices share a leaf.
LayoutPermutation leaf_order(const DecompTree& tree);

/// Directed edge record of the relabeling pipeline.
struct HalfEdgeRecord {
  std::uint32_t first = 0;
  std::uint32_t second = 0;
  double weight = 1.0;
  friend bool operator==(const HalfEdgeRecord&, const HalfEdgeRecord&) = default;
};

struct RelabelTrace {
  int scans = 0;
  int sorts = 0;
  int vertex_emissions = 0;
};

/**
 * @brief Relabels a half-edge list: rename first endpoints by a scan, sort by
 * second endpoint, rename second endpoints by a scan, sort by first endpoint.
 */
std::vector<HalfEdgeRecord> relabel_half_edges(std::vector<HalfEdgeRecord> list,
                                               const LayoutPermutation& perm,
                                               RelabelTrace* trace = nullptr);

/// Vertex v of the result is vertex perm.order()[v] of `mesh`.
Mesh relabel_mesh(const Mesh& mesh, const LayoutPermutation& perm, RelabelTrace* trace = nullptr);

enum class LayoutAlgo { Fb, Rb, Geo };
std::string layout_algo_name(LayoutAlgo algo);
/// Throws std::invalid_argument for unknown names.
LayoutAlgo parse_layout_algo(const std::string& name);

struct LayoutResult {
  Mesh mesh;
  LayoutPermutation perm;
  DecompTree tree;
};

DecompTree build_tree(const Mesh& mesh, LayoutAlgo algo, const SeparatorConfig& cfg);
LayoutResult cache_oblivious_layout(const Mesh& mesh, LayoutAlgo algo, const SeparatorConfig& cfg);

struct StatsReport {
  std::vector<std::size_t> histogram;  ///< histogram[s] = edges of span s
  double mean = 0.0;
  double median = 0.0;
  double p99 = 0.0;
  std::size_t max = 0;
};

/// Spans |pos(u) - pos(v)| over undirected edges.
StatsReport layout_stats(const Mesh& mesh, const LayoutPermutation& perm);
StatsReport layout_stats(const Mesh& mesh);

}  // namespace comesh
