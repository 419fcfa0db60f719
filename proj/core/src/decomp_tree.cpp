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

#include "comesh/decomp_tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "split_builder.hpp"

namespace comesh {

std::vector<std::uint32_t> DecompTree::positions() const {
  std::vector<std::uint32_t> pos(vertex_id.size(), static_cast<std::uint32_t>(-1));
  for (std::size_t i = 0; i < leaf_array.size(); ++i) pos[leaf_array[i]] = static_cast<std::uint32_t>(i);
  return pos;
}

std::size_t DecompTree::depth() const {
  std::size_t d = 0;
  for (std::uint32_t v : leaf_array) d = std::max(d, vertex_id[v].size());
  return d;
}

DecompTree make_tree_skeleton(const Mesh& mesh) {
  DecompTree t;
  EdgeTable table(mesh);
  t.edges.assign(table.edges().begin(), table.edges().end());
  t.edge_owner.assign(t.edges.size(), std::nullopt);
  t.vertex_id.assign(mesh.num_vertices(), BitId{});
  t.leaf_array.resize(mesh.num_vertices());
  std::iota(t.leaf_array.begin(), t.leaf_array.end(), 0U);
  return t;
}

void assign_edge_owners(DecompTree& tree) {
  for (std::size_t e = 0; e < tree.edges.size(); ++e) {
    const BitId& a = tree.vertex_id[tree.edges[e].u];
    const BitId& b = tree.vertex_id[tree.edges[e].v];
    if (a == b)
      tree.edge_owner[e].reset();
    else
      tree.edge_owner[e] = common_prefix(a, b);
  }
}

DecompTree build_decomposition_tree(const Mesh& mesh, const SeparatorConfig& cfg) {
  if (!validate_mesh(mesh).valid) throw std::invalid_argument("build_decomposition_tree: invalid mesh");
  cfg.validate(mesh.dim());
  DecompTree t = make_tree_skeleton(mesh);
  EdgeTable table(mesh);
  SeparatorWorkspace ws(mesh.num_vertices());
  detail::SplitBuilder b(mesh, cfg, ws);
  b.vertex_id = &t.vertex_id;
  b.edge_table = &table;
  b.owner = &t.edge_owner;
  b.split(t.leaf_array, 0, t.leaf_array.size(), BitId{}, -1);
  return t;
}

IndexRange subtree_range(const DecompTree& tree, const BitId& id) {
  auto key = [&](std::uint32_t v) {
    const BitId& x = tree.vertex_id[v];
    return x.prefix(std::min(x.size(), id.size()));
  };
  const auto& la = tree.leaf_array;
  auto lo = std::partition_point(la.begin(), la.end(), [&](std::uint32_t v) { return key(v) < id; });
  auto hi = std::partition_point(lo, la.end(), [&](std::uint32_t v) { return key(v) == id; });
  if (lo == hi) throw std::out_of_range("subtree_range: no node with id '" + id.to_string() + "'");
  return {static_cast<std::size_t>(lo - la.begin()), static_cast<std::size_t>(hi - la.begin())};
}

std::string edge_class_name(EdgeClass c) {
  switch (c) {
    case EdgeClass::Inner: return "inner";
    case EdgeClass::Crossing: return "crossing";
    case EdgeClass::Outgoing: return "outgoing";
    case EdgeClass::Outer: return "outer";
    case EdgeClass::Unrelated: return "unrelated";
  }
  return "unknown";
}

EdgeClass classify_edge(const DecompTree& tree, std::size_t e, const BitId& node) {
  if (e >= tree.edges.size() || !tree.edge_owner[e])
    throw std::invalid_argument("classify_edge: edge has no owner");
  const BitId& owner = *tree.edge_owner[e];
  const bool in_u = node.is_prefix_of(tree.vertex_id[tree.edges[e].u]);
  const bool in_v = node.is_prefix_of(tree.vertex_id[tree.edges[e].v]);
  if (node == owner) return EdgeClass::Crossing;
  if (in_u && in_v) return EdgeClass::Inner;
  if (in_u || in_v) return owner == node.parent() ? EdgeClass::Outer : EdgeClass::Outgoing;
  return EdgeClass::Unrelated;
}

namespace {

class StatsWalker {
 public:
  StatsWalker(const DecompTree& t, const Mesh& m) : tree_(t), mesh_(m), pos_(t.positions()) {}

  std::vector<NodeStats> run() {
    if (!tree_.leaf_array.empty()) visit(0, tree_.leaf_array.size(), BitId{});
    return std::move(out_);
  }

 private:
  std::size_t outer_of(std::size_t lo, std::size_t hi) const {
    std::size_t c = 0;
    for (std::size_t i = lo; i < hi; ++i)
      for (const HalfEdge& h : mesh_.neighbors(tree_.leaf_array[i])) {
        const std::uint32_t p = pos_[h.to];
        if (p < lo || p >= hi) ++c;
      }
    return c;
  }

  // Returns the outer-edge count of the node.
  std::size_t visit(std::size_t lo, std::size_t hi, const BitId& id) {
    const std::size_t slot = out_.size();
    out_.push_back({});
    NodeStats s;
    s.id = id;
    s.begin = lo;
    s.end = hi;
    const std::size_t outer = outer_of(lo, hi);
    s.outer = outer;
    const std::size_t depth = id.size();
    const auto& la = tree_.leaf_array;
    const bool at_leaf = tree_.vertex_id[la[lo]].size() <= depth || depth >= BitId::kMaxBits;
    if (hi - lo == 1 || at_leaf) {
      s.leaf = true;
      out_[slot] = std::move(s);
      return outer;
    }
    std::size_t mid = lo;
    while (mid < hi && !tree_.vertex_id[la[mid]].bit(depth)) ++mid;
    s.left_size = mid - lo;
    s.right_size = hi - mid;
    for (std::size_t i = lo; i < mid; ++i)
      for (const HalfEdge& h : mesh_.neighbors(la[i])) {
        const std::uint32_t p = pos_[h.to];
        if (p >= mid && p < hi) ++s.crossing;
      }
    std::size_t out_l = 0, out_r = 0;
    if (mid > lo) out_l = visit(lo, mid, id.child(false));
    if (hi > mid) out_r = visit(mid, hi, id.child(true));
    s.outgoing_left = out_l - (mid > lo ? s.crossing : 0);
    s.outgoing_right = out_r - (hi > mid ? s.crossing : 0);
    out_[slot] = std::move(s);
    return outer;
  }

  const DecompTree& tree_;
  const Mesh& mesh_;
  std::vector<std::uint32_t> pos_;
  std::vector<NodeStats> out_;
};

}  // namespace

std::vector<NodeStats> node_stats(const DecompTree& tree, const Mesh& mesh) {
  return StatsWalker(tree, mesh).run();
}

TreeAudit verify_tree_structure(const DecompTree& tree, const Mesh& mesh) {
  TreeAudit a;
  const std::size_t n = mesh.num_vertices();
  auto msg = [&](std::string m) {
    if (a.messages.size() < 64) a.messages.push_back(std::move(m));
  };

  std::vector<int> seen(n, 0);
  if (tree.vertex_id.size() != n) {
    ++a.permutation_violations;
    msg("vertex id table has wrong size");
    return a;
  }
  for (std::uint32_t v : tree.leaf_array) {
    if (v >= n) {
      ++a.permutation_violations;
      msg("leaf array entry out of range");
      continue;
    }
    if (seen[v]++) {
      ++a.permutation_violations;
      msg("vertex " + std::to_string(v) + " appears twice in the leaf array");
    }
  }
  for (std::size_t v = 0; v < n; ++v)
    if (!seen[v]) {
      ++a.permutation_violations;
      msg("vertex " + std::to_string(v) + " missing from the leaf array");
    }
  if (a.permutation_violations) return a;

  for (std::size_t i = 1; i < tree.leaf_array.size(); ++i) {
    const BitId& x = tree.vertex_id[tree.leaf_array[i - 1]];
    const BitId& y = tree.vertex_id[tree.leaf_array[i]];
    if (y < x) {
      ++a.contiguity_violations;
      msg("leaf order breaks contiguity at position " + std::to_string(i));
    } else if (x.is_strict_prefix_of(y) || y.is_strict_prefix_of(x)) {
      ++a.contiguity_violations;
      msg("vertex id at an internal node near position " + std::to_string(i));
    }
  }
  a.depth = tree.depth();

  if (tree.edge_owner.size() != tree.edges.size()) {
    ++a.ownership_violations;
    msg("edge owner table has wrong size");
    return a;
  }
  for (std::size_t e = 0; e < tree.edges.size(); ++e) {
    const BitId& x = tree.vertex_id[tree.edges[e].u];
    const BitId& y = tree.vertex_id[tree.edges[e].v];
    const auto& o = tree.edge_owner[e];
    if (o) ++a.owned_edges;
    if (x == y) {
      if (o) {
        ++a.ownership_violations;
        msg("edge inside a leaf has an owner");
      }
      continue;
    }
    if (!o) {
      ++a.ownership_violations;
      msg("edge (" + std::to_string(tree.edges[e].u) + "," + std::to_string(tree.edges[e].v) + ") has no owner");
    } else if (*o != common_prefix(x, y)) {
      ++a.ownership_violations;
      msg("edge (" + std::to_string(tree.edges[e].u) + "," + std::to_string(tree.edges[e].v) +
          ") owned by '" + o->to_string() + "', not by the meeting node of its endpoints");
    }
  }
  return a;
}

TreeAudit verify_tree(const DecompTree& tree, const Mesh& mesh, const SeparatorConfig& cfg) {
  TreeAudit a = verify_tree_structure(tree, mesh);
  if (a.permutation_violations || a.contiguity_violations) return a;
  const int d = mesh.dim();
  const double beta = cfg.beta(d);
  for (const NodeStats& s : node_stats(tree, mesh)) {
    if (s.leaf) continue;
    const double n = static_cast<double>(s.size());
    const double big = static_cast<double>(std::max(s.left_size, s.right_size));
    a.max_balance = std::max(a.max_balance, big / n);
    if (big > std::ceil(beta * n - 1e-9)) {
      ++a.balance_violations;
      if (a.messages.size() < 64) a.messages.push_back("node '" + s.id.to_string() + "' is not beta-balanced");
    }
    const double bound = cfg.crossing_bound(d, s.size());
    a.max_crossing_ratio = std::max(a.max_crossing_ratio, static_cast<double>(s.crossing) / bound);
    if (static_cast<double>(s.crossing) > bound) {
      ++a.crossing_violations;
      if (a.messages.size() < 64) a.messages.push_back("node '" + s.id.to_string() + "' exceeds the crossing bound");
    }
  }
  return a;
}

}  // namespace comesh
