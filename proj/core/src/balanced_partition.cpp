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

#include "comesh/balanced_partition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include "fb_builder.hpp"

namespace comesh {

namespace {

bool edge_less(const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); }

std::vector<std::uint32_t> red_counts(const Mesh& mesh, std::span<const std::uint32_t> subset,
                                      const SeparatorWorkspace& ws) {
  std::vector<std::uint32_t> reds(subset.size(), 0);
  for (std::size_t i = 0; i < subset.size(); ++i)
    for (const HalfEdge& h : mesh.neighbors(subset[i]))
      if (!ws.member(h.to)) ++reds[i];
  return reds;
}

}  // namespace

namespace detail {

FBPartition necklace_split(const Mesh& mesh, std::span<const std::uint32_t> leaf_order, SeparatorWorkspace& ws) {
  if (leaf_order.size() < 2) throw std::invalid_argument("fully balanced partition: need at least two vertices");
  ws.mark(leaf_order);
  const std::vector<std::uint32_t> reds = red_counts(mesh, leaf_order, ws);
  const RedBlueArray arr = build_red_blue_array(leaf_order, reds);
  FBPartition part;
  part.window = necklace_bisect(arr);

  for (std::uint32_t v : leaf_order) ws.set_side(v, 1);
  for (std::size_t i = part.window.start; i < part.window.end(); ++i)
    if (arr.is_blue(i)) {
      part.left.push_back(arr.elements[i]);
      ws.set_side(arr.elements[i], 0);
    }
  for (std::size_t i = 0; i < leaf_order.size(); ++i) {
    if (ws.side(leaf_order[i]) == 1) {
      part.right.push_back(leaf_order[i]);
      part.outgoing_right += reds[i];
    } else {
      part.outgoing_left += reds[i];
    }
  }
  for (std::uint32_t u : part.left)
    for (const HalfEdge& h : mesh.neighbors(u))
      if (ws.member(h.to) && ws.side(h.to) == 1)
        part.crossing_edges.push_back({std::min(u, h.to), std::max(u, h.to), h.weight});
  std::sort(part.crossing_edges.begin(), part.crossing_edges.end(), edge_less);
  return part;
}

FBPartition fb_split(const Mesh& mesh, std::span<const std::uint32_t> subset, const SeparatorConfig& cfg,
                     SeparatorWorkspace& ws) {
  std::vector<std::uint32_t> order(subset.begin(), subset.end());
  SplitBuilder inner(mesh, cfg, ws);
  inner.split(order, 0, order.size(), BitId{}, -1);
  return necklace_split(mesh, order, ws);
}

void FbBuilder::split(std::vector<std::uint32_t>& order, std::size_t lo, std::size_t hi, const BitId& id,
                      int levels) {
  if (hi - lo <= 1 || levels == 0) {
    if (vertex_id)
      for (std::size_t i = lo; i < hi; ++i) (*vertex_id)[order[i]] = id;
    if (leaves) leaves->push_back({lo, hi, id});
    return;
  }
  FBPartition part = fb_split(mesh_, std::span<const std::uint32_t>(order.data() + lo, hi - lo), seeded(cfg_, id), ws_);
  std::copy(part.left.begin(), part.left.end(), order.begin() + static_cast<std::ptrdiff_t>(lo));
  const std::size_t mid = lo + part.left.size();
  std::copy(part.right.begin(), part.right.end(), order.begin() + static_cast<std::ptrdiff_t>(mid));
  stamp_crossing(mesh_, part.left, ws_, id, edge_table, owner, nullptr);
  const int next = levels < 0 ? levels : levels - 1;
  split(order, lo, mid, id.child(false), next);
  split(order, mid, hi, id.child(true), next);
}

}  // namespace detail

std::vector<std::uint32_t> outgoing_counts(const Mesh& mesh, std::span<const std::uint32_t> subset) {
  SeparatorWorkspace ws(mesh.num_vertices());
  ws.mark(subset);
  return red_counts(mesh, subset, ws);
}

RedBlueArray build_red_blue_array(const DecompTree& tree, std::span<const std::uint32_t> outer_per_vertex) {
  std::vector<std::uint32_t> reds(tree.leaf_array.size());
  for (std::size_t i = 0; i < reds.size(); ++i) reds[i] = outer_per_vertex[tree.leaf_array[i]];
  return build_red_blue_array(tree.leaf_array, reds);
}

FBPartition partition_by_necklace(const Mesh& mesh, std::span<const std::uint32_t> leaf_order) {
  SeparatorWorkspace ws(mesh.num_vertices());
  return detail::necklace_split(mesh, leaf_order, ws);
}

FBPartition fully_balanced_partition(const Mesh& mesh, std::span<const std::uint32_t> subset,
                                     const SeparatorConfig& cfg) {
  cfg.validate(mesh.dim());
  SeparatorWorkspace ws(mesh.num_vertices());
  return detail::fb_split(mesh, subset, cfg, ws);
}

double fb_crossing_bound(const SeparatorConfig& cfg, int d, std::size_t n) {
  const double a = 1.0 - 1.0 / d;
  const double ba = std::pow(cfg.beta(d), a);
  return cfg.c_cross * std::pow(static_cast<double>(n), a) * (1.0 + ba) / (1.0 - ba);
}

DecompTree build_fb_tree(const Mesh& mesh, const SeparatorConfig& cfg) {
  if (!validate_mesh(mesh).valid) throw std::invalid_argument("build_fb_tree: invalid mesh");
  cfg.validate(mesh.dim());
  DecompTree t = make_tree_skeleton(mesh);
  EdgeTable table(mesh);
  SeparatorWorkspace ws(mesh.num_vertices());
  detail::FbBuilder b(mesh, cfg, ws);
  b.vertex_id = &t.vertex_id;
  b.edge_table = &table;
  b.owner = &t.edge_owner;
  b.split(t.leaf_array, 0, t.leaf_array.size(), BitId{}, -1);
  return t;
}

std::vector<Edge> cut_path_edges(const DecompTree& tree, std::size_t first, std::size_t last) {
  const std::size_t n = tree.leaf_array.size();
  if (first > last || last > n) throw std::invalid_argument("cut_path_edges: bad range");
  auto meeting = [&](std::size_t c) {
    if (c == 0 || c == n) return BitId{};
    return common_prefix(tree.vertex_id[tree.leaf_array[c - 1]], tree.vertex_id[tree.leaf_array[c]]);
  };
  const BitId a = meeting(first), b = meeting(last);
  std::vector<Edge> out;
  for (std::size_t e = 0; e < tree.edges.size(); ++e) {
    const auto& o = tree.edge_owner[e];
    if (o && (o->is_prefix_of(a) || o->is_prefix_of(b))) out.push_back(tree.edges[e]);
  }
  return out;
}

FbAudit audit_fb_tree(const DecompTree& tree, const Mesh& mesh, const SeparatorConfig& cfg, int b) {
  FbAudit a;
  a.structure = verify_tree_structure(tree, mesh);
  if (a.structure.permutation_violations || a.structure.contiguity_violations) return a;
  if (b < 0) b = mesh.max_degree();
  const int d = mesh.dim();
  const double N = static_cast<double>(tree.leaf_array.size());
  for (const NodeStats& s : node_stats(tree, mesh)) {
    const double depth = static_cast<double>(s.id.size());
    if (std::abs(static_cast<double>(s.size()) - N / std::pow(2.0, depth)) > std::max(depth, 1.0)) ++a.level_violations;
    if (s.leaf) continue;
    const std::size_t sd = s.left_size > s.right_size ? s.left_size - s.right_size : s.right_size - s.left_size;
    const std::size_t od = s.outgoing_left > s.outgoing_right ? s.outgoing_left - s.outgoing_right
                                                              : s.outgoing_right - s.outgoing_left;
    a.max_sibling_diff = std::max(a.max_sibling_diff, sd);
    a.max_outgoing_diff = std::max(a.max_outgoing_diff, od);
    if (sd > 1) ++a.size_violations;
    if (od > static_cast<std::size_t>(2 * b + 1)) ++a.outgoing_violations;
    const double bound = fb_crossing_bound(cfg, d, s.size());
    a.max_crossing_ratio = std::max(a.max_crossing_ratio, static_cast<double>(s.crossing) / bound);
    if (static_cast<double>(s.crossing) > bound) ++a.crossing_violations;
  }
  return a;
}

std::vector<std::vector<std::uint32_t>> kway_partition(const Mesh& mesh, std::size_t k, const SeparatorConfig& cfg,
                                                       KwayMethod method) {
  const std::size_t n = mesh.num_vertices();
  if (k < 2 || k > n) throw std::invalid_argument("kway_partition: k must lie in [2, N]");
  std::vector<std::size_t> cut(k + 1, 0);
  for (std::size_t j = 0; j < k; ++j) cut[j + 1] = cut[j] + n / k + (j < n % k ? 1 : 0);

  std::vector<std::uint32_t> order;
  if (method == KwayMethod::Full) {
    order = build_fb_tree(mesh, cfg).leaf_array;
  } else {
    if (!validate_mesh(mesh).valid) throw std::invalid_argument("kway_partition: invalid mesh");
    cfg.validate(mesh.dim());
    order.resize(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<std::uint32_t>(i);
    SeparatorWorkspace ws(n);
    std::vector<detail::LeafSpan> top;
    int levels = 2;
    while ((std::size_t{1} << (levels - 2)) < k) ++levels;
    detail::FbBuilder b(mesh, cfg, ws);
    b.leaves = &top;
    b.split(order, 0, n, BitId{}, levels);
    detail::FbBuilder refine(mesh, cfg, ws);
    for (const detail::LeafSpan& leaf : top) {
      const bool straddles = std::any_of(cut.begin(), cut.end(), [&](std::size_t c) { return leaf.begin < c && c < leaf.end; });
      if (straddles) refine.split(order, leaf.begin, leaf.end, leaf.id, -1);
    }
  }
  std::vector<std::vector<std::uint32_t>> parts(k);
  for (std::size_t j = 0; j < k; ++j) parts[j].assign(order.begin() + static_cast<std::ptrdiff_t>(cut[j]),
                                                      order.begin() + static_cast<std::ptrdiff_t>(cut[j + 1]));
  return parts;
}

}  // namespace comesh
