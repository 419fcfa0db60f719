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

#include "comesh/layout.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include "comesh/balanced_partition.hpp"
#include "comesh/relax_partition.hpp"

namespace comesh {

LayoutPermutation leaf_order(const DecompTree& tree) {
  for (std::size_t i = 1; i < tree.leaf_array.size(); ++i)
    if (tree.vertex_id[tree.leaf_array[i - 1]] == tree.vertex_id[tree.leaf_array[i]])
      throw std::invalid_argument("leaf_order: leaf '" + tree.vertex_id[tree.leaf_array[i]].to_string() +
                                  "' holds more than one vertex");
  return LayoutPermutation::from_order(tree.leaf_array);
}

std::vector<HalfEdgeRecord> relabel_half_edges(std::vector<HalfEdgeRecord> list, const LayoutPermutation& perm,
                                               RelabelTrace* trace) {
  RelabelTrace local;
  RelabelTrace& t = trace ? *trace : local;
  for (HalfEdgeRecord& r : list) r.first = perm[r.first];
  ++t.scans;
  std::stable_sort(list.begin(), list.end(),
                   [](const HalfEdgeRecord& a, const HalfEdgeRecord& b) { return a.second < b.second; });
  ++t.sorts;
  for (HalfEdgeRecord& r : list) r.second = perm[r.second];
  ++t.scans;
  std::stable_sort(list.begin(), list.end(), [](const HalfEdgeRecord& a, const HalfEdgeRecord& b) {
    return std::tie(a.first, a.second) < std::tie(b.first, b.second);
  });
  ++t.sorts;
  return list;
}

Mesh relabel_mesh(const Mesh& mesh, const LayoutPermutation& perm, RelabelTrace* trace) {
  const std::size_t n = mesh.num_vertices();
  if (perm.size() != n) throw std::invalid_argument("relabel_mesh: permutation size does not match the mesh");
  std::vector<HalfEdgeRecord> list;
  list.reserve(mesh.num_half_edges());
  for (std::uint32_t u = 0; u < n; ++u)
    for (const HalfEdge& h : mesh.neighbors(u)) list.push_back({u, h.to, h.weight});
  list = relabel_half_edges(std::move(list), perm, trace);

  std::vector<std::size_t> offsets(n + 1, 0);
  std::vector<HalfEdge> half(list.size());
  for (std::size_t i = 0; i < list.size(); ++i) {
    ++offsets[list[i].first + 1];
    half[i] = {list[i].second, list[i].weight};
  }
  for (std::size_t v = 0; v < n; ++v) offsets[v + 1] += offsets[v];

  const int d = mesh.dim();
  std::vector<double> coords(mesh.all_coords().size());
  std::vector<double> weights(n);
  for (std::uint32_t v = 0; v < n; ++v) {
    const std::uint32_t p = perm[v];
    auto c = mesh.coords(v);
    std::copy(c.begin(), c.end(), coords.begin() + static_cast<std::ptrdiff_t>(p) * d);
    weights[p] = mesh.weight(v);
  }
  if (trace) ++trace->vertex_emissions;
  return Mesh::from_csr(d, std::move(coords), std::move(weights), std::move(offsets), std::move(half),
                        mesh.degree_bound());
}

std::string layout_algo_name(LayoutAlgo algo) {
  switch (algo) {
    case LayoutAlgo::Fb: return "fb";
    case LayoutAlgo::Rb: return "rb";
    case LayoutAlgo::Geo: return "geo";
  }
  return "unknown";
}

LayoutAlgo parse_layout_algo(const std::string& name) {
  if (name == "fb") return LayoutAlgo::Fb;
  if (name == "rb") return LayoutAlgo::Rb;
  if (name == "geo") return LayoutAlgo::Geo;
  throw std::invalid_argument("unknown layout algorithm '" + name + "'");
}

DecompTree build_tree(const Mesh& mesh, LayoutAlgo algo, const SeparatorConfig& cfg) {
  switch (algo) {
    case LayoutAlgo::Fb: return build_fb_tree(mesh, cfg);
    case LayoutAlgo::Rb: return build_rb_tree(mesh, cfg);
    case LayoutAlgo::Geo: return build_decomposition_tree(mesh, cfg);
  }
  throw std::invalid_argument("unknown layout algorithm");
}

LayoutResult cache_oblivious_layout(const Mesh& mesh, LayoutAlgo algo, const SeparatorConfig& cfg) {
  LayoutResult r;
  r.tree = build_tree(mesh, algo, cfg);
  r.perm = leaf_order(r.tree);
  r.mesh = relabel_mesh(mesh, r.perm);
  return r;
}

StatsReport layout_stats(const Mesh& mesh, const LayoutPermutation& perm) {
  if (perm.size() != mesh.num_vertices()) throw std::invalid_argument("layout_stats: permutation size mismatch");
  std::vector<std::size_t> spans;
  spans.reserve(mesh.num_edges());
  for (std::uint32_t u = 0; u < mesh.num_vertices(); ++u)
    for (const HalfEdge& h : mesh.neighbors(u))
      if (u < h.to) {
        const std::uint32_t a = perm[u], b = perm[h.to];
        spans.push_back(a > b ? a - b : b - a);
      }
  StatsReport r;
  if (spans.empty()) return r;
  std::sort(spans.begin(), spans.end());
  r.max = spans.back();
  r.histogram.assign(r.max + 1, 0);
  double sum = 0.0;
  for (std::size_t s : spans) {
    ++r.histogram[s];
    sum += static_cast<double>(s);
  }
  const std::size_t m = spans.size();
  r.mean = sum / static_cast<double>(m);
  r.median = m % 2 ? static_cast<double>(spans[m / 2])
                   : 0.5 * static_cast<double>(spans[m / 2 - 1] + spans[m / 2]);
  const auto rank = static_cast<std::size_t>(std::ceil(0.99 * static_cast<double>(m)));
  r.p99 = static_cast<double>(spans[std::max<std::size_t>(rank, 1) - 1]);
  return r;
}

StatsReport layout_stats(const Mesh& mesh) { return layout_stats(mesh, LayoutPermutation::identity(mesh.num_vertices())); }

}  // namespace comesh
