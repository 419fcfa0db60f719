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

#include "comesh/relax_partition.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>

#include "comesh/balanced_partition.hpp"
#include "comesh/necklace.hpp"
#include "split_builder.hpp"

namespace comesh {

RelaxContext RelaxContext::for_mesh(const Mesh& mesh, const SeparatorConfig& cfg) {
  RelaxContext ctx;
  ctx.global_n = mesh.num_vertices();
  ctx.beta = cfg.beta(mesh.dim());
  return ctx;
}

double RelaxContext::log_n() const { return std::log2(static_cast<double>(std::max<std::size_t>(global_n, 2))); }

double RelaxContext::small_threshold() const {
  const double L = log_n();
  return L * L * L;
}

int RelaxContext::upper_depth() const {
  if (depth_override > 0) return depth_override;
  const double L = log_n();
  if (L <= 1.0) return 1;
  return std::max(1, static_cast<int>(std::ceil(3.0 * std::log(L) / std::log(1.0 / beta) - 1e-12)));
}

double RelaxContext::refine_threshold(std::size_t outer_total) const {
  const double L = log_n();
  return static_cast<double>(outer_total) / (L * L);
}

std::size_t RelaxTree::refined_count() const {
  return static_cast<std::size_t>(std::count_if(upper_leaves.begin(), upper_leaves.end(),
                                                [](const UpperLeaf& l) { return l.refined; }));
}

std::size_t RelaxTree::max_unrefined_size() const {
  std::size_t m = 0;
  for (const UpperLeaf& l : upper_leaves)
    if (!l.refined) m = std::max(m, l.end - l.begin);
  return m;
}

namespace {

bool edge_less(const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); }

RelaxTree relax_tree_impl(const Mesh& mesh, std::span<const std::uint32_t> subset, const RelaxContext& ctx,
                          const SeparatorConfig& cfg, SeparatorWorkspace& ws) {
  const std::size_t n = subset.size();
  if (n < 2) throw std::invalid_argument("relax partition tree: need at least two vertices");
  RelaxTree t;
  t.leaf_array.assign(subset.begin(), subset.end());
  detail::SplitBuilder sb(mesh, cfg, ws);
  sb.stamped = &t.owned_edges;
  std::vector<detail::LeafSpan> spans;
  sb.leaves = &spans;

  if (static_cast<double>(n) < ctx.small_threshold()) {
    t.full_tree = true;
    sb.split(t.leaf_array, 0, n, BitId{}, -1);
    for (const auto& s : spans) t.leaves.push_back({s.begin, s.end, s.id});
    return t;
  }

  sb.split(t.leaf_array, 0, n, BitId{}, ctx.upper_depth());
  const std::vector<detail::LeafSpan> upper = std::move(spans);
  spans.clear();

  ws.mark(t.leaf_array);
  std::vector<std::uint32_t> reds(n, 0);
  std::size_t outer_total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (const HalfEdge& h : mesh.neighbors(t.leaf_array[i]))
      if (!ws.member(h.to)) ++reds[i];
    outer_total += reds[i];
  }
  const double threshold = ctx.refine_threshold(outer_total);

  for (const auto& u : upper) {
    std::size_t count = 0;
    for (std::size_t i = u.begin; i < u.end; ++i) count += reds[i];
    const bool refined = static_cast<double>(count) > threshold;
    t.upper_leaves.push_back({u.id, u.begin, u.end, count, refined});
    if (refined && u.end - u.begin > 1) {
      spans.clear();
      sb.split(t.leaf_array, u.begin, u.end, u.id, -1);
      for (const auto& s : spans) t.leaves.push_back({s.begin, s.end, s.id});
    } else {
      t.leaves.push_back({u.begin, u.end, u.id});
    }
  }
  return t;
}

RBPartition partition_impl(const Mesh& mesh, std::span<const std::uint32_t> order,
                           std::span<const RelaxLeaf> leaves, SeparatorWorkspace& ws) {
  const std::size_t n = order.size();
  if (n < 2) throw std::invalid_argument("relax balanced partition: need at least two vertices");
  std::vector<char> valid(n + 1, 0);
  valid[0] = valid[n] = 1;
  std::size_t covered = 0;
  for (const RelaxLeaf& l : leaves) {
    if (l.begin != covered || l.end <= l.begin || l.end > n)
      throw std::invalid_argument("relax balanced partition: leaves must tile the order");
    valid[l.begin] = 1;
    covered = l.end;
  }
  if (covered != n) throw std::invalid_argument("relax balanced partition: leaves must tile the order");

  ws.mark(order);
  std::vector<std::uint32_t> reds(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (const HalfEdge& h : mesh.neighbors(order[i]))
      if (!ws.member(h.to)) ++reds[i];
  const RedBlueArray arr = build_red_blue_array(order, reds);
  const Window w = necklace_bisect(arr);
  std::size_t bl = 0, br = 0;
  for (std::size_t i = 0; i < w.end(); ++i)
    if (arr.is_blue(i)) (i < w.start ? bl : br)++;
  br += bl;

  auto lower = [&](std::size_t c) {
    while (!valid[c]) --c;
    return c;
  };
  auto upper = [&](std::size_t c) {
    while (!valid[c]) ++c;
    return c;
  };
  auto dist = [](std::size_t a, std::size_t b) { return a > b ? a - b : b - a; };
  // Preferred candidate first: closer boundary, outward on a tie.
  auto choices = [&](std::size_t c, bool left_end) {
    const std::size_t out = left_end ? lower(c) : upper(c);
    const std::size_t in = left_end ? upper(c) : lower(c);
    if (dist(in, c) < dist(out, c)) return std::pair{in, out};
    return std::pair{out, in};
  };
  const auto [l0, l1] = choices(bl, true);
  const auto [r0, r1] = choices(br, false);
  const std::array<std::pair<std::size_t, std::size_t>, 4> combos{{{l0, r0}, {l0, r1}, {l1, r0}, {l1, r1}}};
  std::array<int, 4> rank{0, 1, 2, 3};
  std::stable_sort(rank.begin() + 1, rank.begin() + 3, [&](int a, int b) {
    return dist(combos[a].first, bl) + dist(combos[a].second, br) <
           dist(combos[b].first, bl) + dist(combos[b].second, br);
  });
  std::size_t b = n, e = n;
  for (int k : rank) {
    const auto [cb, ce] = combos[k];
    if (cb < ce && !(cb == 0 && ce == n)) {
      b = cb;
      e = ce;
      break;
    }
  }
  if (b == n) throw std::logic_error("relax balanced partition: a leaf spans too much of the subset");

  RBPartition part;
  part.raw_begin = bl;
  part.raw_end = br;
  part.begin = b;
  part.end = e;
  part.displacement = dist(b, bl) + dist(e, br);
  for (std::size_t i = 0; i < n; ++i) {
    const bool in = i >= b && i < e;
    ws.set_side(order[i], in ? 0 : 1);
    (in ? part.left : part.right).push_back(order[i]);
    (in ? part.outgoing_left : part.outgoing_right) += reds[i];
  }
  for (std::uint32_t u : part.left)
    for (const HalfEdge& h : mesh.neighbors(u))
      if (ws.member(h.to) && ws.side(h.to) == 1)
        part.crossing_edges.push_back({std::min(u, h.to), std::max(u, h.to), h.weight});
  std::sort(part.crossing_edges.begin(), part.crossing_edges.end(), edge_less);
  return part;
}

class RbBuilder {
 public:
  RbBuilder(const Mesh& mesh, const SeparatorConfig& cfg, const RelaxContext& ctx, SeparatorWorkspace& ws)
      : mesh_(mesh), cfg_(cfg), ctx_(ctx), ws_(ws) {}

  std::vector<BitId>* vertex_id = nullptr;
  const EdgeTable* edge_table = nullptr;
  std::vector<std::optional<BitId>>* owner = nullptr;
  std::vector<RbNodeRecord>* records = nullptr;

  void split(std::vector<std::uint32_t>& order, std::size_t lo, std::size_t hi, const BitId& id) {
    if (hi - lo <= 1) {
      for (std::size_t i = lo; i < hi; ++i) (*vertex_id)[order[i]] = id;
      return;
    }
    std::span<const std::uint32_t> range(order.data() + lo, hi - lo);
    const RelaxTree rt = relax_tree_impl(mesh_, range, ctx_, detail::seeded(cfg_, id), ws_);
    RBPartition part = partition_impl(mesh_, rt.leaf_array, rt.leaves, ws_);
    std::copy(part.left.begin(), part.left.end(), order.begin() + static_cast<std::ptrdiff_t>(lo));
    const std::size_t mid = lo + part.left.size();
    std::copy(part.right.begin(), part.right.end(), order.begin() + static_cast<std::ptrdiff_t>(mid));
    detail::stamp_crossing(mesh_, part.left, ws_, id, edge_table, owner, nullptr);
    if (records) {
      RbNodeRecord r;
      r.id = id;
      r.size = hi - lo;
      r.left = part.left.size();
      r.right = part.right.size();
      r.outgoing_left = part.outgoing_left;
      r.outgoing_right = part.outgoing_right;
      r.crossing = part.crossing_edges.size();
      r.full_tree = rt.full_tree;
      r.upper_leaves = rt.upper_leaves.size();
      r.refined_leaves = rt.refined_count();
      r.max_unrefined = rt.max_unrefined_size();
      r.displacement = part.displacement;
      records->push_back(std::move(r));
    }
    split(order, lo, mid, id.child(false));
    split(order, mid, hi, id.child(true));
  }

 private:
  const Mesh& mesh_;
  const SeparatorConfig& cfg_;
  const RelaxContext& ctx_;
  SeparatorWorkspace& ws_;
};

}  // namespace

RelaxTree build_relax_partition_tree(const Mesh& mesh, std::span<const std::uint32_t> subset,
                                     const RelaxContext& ctx, const SeparatorConfig& cfg) {
  cfg.validate(mesh.dim());
  SeparatorWorkspace ws(mesh.num_vertices());
  return relax_tree_impl(mesh, subset, ctx, cfg, ws);
}

RBPartition partition_relax_order(const Mesh& mesh, std::span<const std::uint32_t> leaf_order,
                                  std::span<const RelaxLeaf> leaves) {
  SeparatorWorkspace ws(mesh.num_vertices());
  return partition_impl(mesh, leaf_order, leaves, ws);
}

RBPartition relax_balanced_partition(const Mesh& mesh, std::span<const std::uint32_t> subset,
                                     const RelaxContext& ctx, const SeparatorConfig& cfg) {
  cfg.validate(mesh.dim());
  SeparatorWorkspace ws(mesh.num_vertices());
  const RelaxTree t = relax_tree_impl(mesh, subset, ctx, cfg, ws);
  return partition_impl(mesh, t.leaf_array, t.leaves, ws);
}

DecompTree build_rb_tree(const Mesh& mesh, const SeparatorConfig& cfg, const RelaxOptions& opts,
                         std::vector<RbNodeRecord>* records) {
  if (!validate_mesh(mesh).valid) throw std::invalid_argument("build_rb_tree: invalid mesh");
  cfg.validate(mesh.dim());
  RelaxContext ctx = RelaxContext::for_mesh(mesh, cfg);
  ctx.c_size = opts.c_size;
  ctx.c_out = opts.c_out;
  ctx.depth_override = opts.upper_depth;
  DecompTree t = make_tree_skeleton(mesh);
  EdgeTable table(mesh);
  SeparatorWorkspace ws(mesh.num_vertices());
  RbBuilder b(mesh, cfg, ctx, ws);
  b.vertex_id = &t.vertex_id;
  b.edge_table = &table;
  b.owner = &t.edge_owner;
  b.records = records;
  b.split(t.leaf_array, 0, t.leaf_array.size(), BitId{});
  return t;
}

RbAudit audit_rb_records(std::span<const RbNodeRecord> records, const RelaxContext& ctx,
                         const SeparatorConfig& cfg, int d, int b) {
  RbAudit a;
  const double L = ctx.log_n();
  for (const RbNodeRecord& r : records) {
    const double n = static_cast<double>(r.size);
    const double sd = std::abs(static_cast<double>(r.left) - static_cast<double>(r.right));
    const double od = std::abs(static_cast<double>(r.outgoing_left) - static_cast<double>(r.outgoing_right));
    const double size_room = n / (L * L * L);
    const double out_room = static_cast<double>(r.outgoing_right) / (L * L);
    if (sd > ctx.c_size * size_room + 1.0) ++a.size_violations;
    if (od > ctx.c_out * out_room + 2.0 * b + 1.0) ++a.outgoing_violations;
    if (sd > 1.0) a.max_size_slack = std::max(a.max_size_slack, (sd - 1.0) / size_room);
    if (od > 2.0 * b + 1.0)
      a.max_outgoing_slack = std::max(a.max_outgoing_slack, out_room > 0 ? (od - 2.0 * b - 1.0) / out_room : 1e300);
    if (static_cast<double>(r.crossing) > fb_crossing_bound(cfg, d, r.size)) ++a.crossing_violations;
    if (!r.full_tree) {
      a.max_refined = std::max(a.max_refined, r.refined_leaves);
      if (static_cast<double>(r.refined_leaves) > L * L) ++a.refined_violations;
      if (static_cast<double>(r.max_unrefined) > size_room) ++a.leaf_size_violations;
    }
  }
  return a;
}

std::vector<double> level_size_ratios(const DecompTree& tree, const Mesh& mesh) {
  std::map<std::size_t, std::pair<std::size_t, std::size_t>> range;
  for (const NodeStats& s : node_stats(tree, mesh)) {
    auto [it, fresh] = range.try_emplace(s.id.size(), s.size(), s.size());
    if (!fresh) {
      it->second.first = std::min(it->second.first, s.size());
      it->second.second = std::max(it->second.second, s.size());
    }
  }
  std::vector<double> out;
  for (const auto& [depth, mm] : range) out.push_back(static_cast<double>(mm.second) / static_cast<double>(mm.first));
  return out;
}

}  // namespace comesh
