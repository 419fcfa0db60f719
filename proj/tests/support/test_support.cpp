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

#include "test_support.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace comesh::testing {

std::vector<std::uint32_t> random_connected_subset(const Mesh& mesh, std::size_t size, std::mt19937_64& rng) {
  const std::size_t n = mesh.num_vertices();
  if (size == 0 || size > n) throw std::invalid_argument("random_connected_subset: bad size");
  std::vector<char> in(n, 0), queued(n, 0);
  std::vector<std::uint32_t> chosen, frontier;
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(n - 1));
  const std::uint32_t start = pick(rng);
  frontier.push_back(start);
  queued[start] = 1;
  while (chosen.size() < size) {
    if (frontier.empty()) throw std::invalid_argument("random_connected_subset: component too small");
    std::uniform_int_distribution<std::size_t> f(0, frontier.size() - 1);
    const std::size_t i = f(rng);
    const std::uint32_t v = frontier[i];
    frontier[i] = frontier.back();
    frontier.pop_back();
    in[v] = 1;
    chosen.push_back(v);
    for (const HalfEdge& h : mesh.neighbors(v))
      if (!queued[h.to]) {
        queued[h.to] = 1;
        frontier.push_back(h.to);
      }
  }
  return chosen;
}

Mesh random_mesh(std::size_t n, double p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> coords(2 * n), weights(n);
  for (auto& c : coords) c = u(rng) * 10.0;
  for (auto& w : weights) w = u(rng) * 4.0 - 2.0;
  std::vector<Edge> edges;
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = a + 1; b < n; ++b)
      if (u(rng) < p) edges.push_back({a, b, 0.1 + u(rng) * 3.0});
  return Mesh::from_edges(2, std::move(coords), std::move(weights), edges);
}

std::vector<double> dense_matvec(const Mesh& mesh) {
  const std::size_t n = mesh.num_vertices();
  std::vector<double> a(n * n, 0.0);
  for (std::uint32_t u = 0; u < n; ++u)
    for (const HalfEdge& h : mesh.neighbors(u)) a[u * n + h.to] += h.weight;
  std::vector<double> y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) y[i] += a[i * n + j] * mesh.weight(static_cast<std::uint32_t>(j));
  return y;
}

std::size_t count_between(const Mesh& mesh, std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  std::unordered_set<std::uint32_t> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::size_t c = 0;
  for (const Edge& e : mesh.edge_list())
    if ((sa.count(e.u) && sb.count(e.v)) || (sa.count(e.v) && sb.count(e.u))) ++c;
  return c;
}

std::size_t count_leaving(const Mesh& mesh, std::span<const std::uint32_t> part,
                          std::span<const std::uint32_t> whole) {
  std::unordered_set<std::uint32_t> sp(part.begin(), part.end()), sw(whole.begin(), whole.end());
  std::size_t c = 0;
  for (const Edge& e : mesh.edge_list())
    if ((sp.count(e.u) && !sw.count(e.v)) || (sp.count(e.v) && !sw.count(e.u))) ++c;
  return c;
}

std::size_t halfspace_depth_3d(std::span<const std::vector<double>> pts, std::span<const double> q) {
  std::size_t best = pts.size();
  auto sub = [&](const std::vector<double>& p) { return std::array<double, 3>{p[0] - q[0], p[1] - q[1], p[2] - q[2]}; };
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const auto a = sub(pts[i]), b = sub(pts[j]);
      const std::array<double, 3> nrm{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
      const double len = std::sqrt(nrm[0] * nrm[0] + nrm[1] * nrm[1] + nrm[2] * nrm[2]);
      if (len < 1e-12) continue;
      std::size_t pos = 0, neg = 0;
      for (const auto& p : pts) {
        const auto r = sub(p);
        const double s = (r[0] * nrm[0] + r[1] * nrm[1] + r[2] * nrm[2]) / len;
        if (s > 1e-12) ++pos;
        else if (s < -1e-12) ++neg;
      }
      best = std::min({best, pos, neg});
    }
  return best;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> sorted_pairs(std::span<const Edge> edges) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (const Edge& e : edges) out.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

Edge e1(std::uint32_t a, std::uint32_t b) { return {a - 1, b - 1, 1.0}; }

}  // namespace

Mesh sample_graph(Outside outside) {
  // Rough planar positions.
  std::vector<double> coords{1.6, 2.3, 1.9, 1.35, 3.2, 1.4, 2.4, 2.2, 0.75, 1.6, 1.3, 3.1, 2.0, 3.3, 3.6, 2.4};
  std::vector<Edge> edges{e1(1, 6), e1(1, 5), e1(6, 7), e1(1, 2), e1(4, 7),
                          e1(2, 3), e1(3, 8), e1(2, 4), e1(2, 8), e1(4, 8)};
  std::size_t n = 8;
  if (outside != Outside::None) {
    const std::uint32_t odd = outside == Outside::RedAt5 ? 5 : 7;
    const std::vector<std::pair<std::uint32_t, int>> outer{{1, 2}, {6, 2}, {odd, 1}, {4, 1}, {3, 2}};
    for (auto [v, count] : outer)
      for (int k = 0; k < count; ++k) {
        const auto w = static_cast<std::uint32_t>(n++);
        coords.push_back(coords[2 * (v - 1)] + 0.1 * (k + 1));
        coords.push_back(-1.0 - static_cast<double>(w));
        edges.push_back({v - 1, w, 1.0});
      }
  }
  std::vector<double> weights(n);
  for (std::size_t i = 0; i < n; ++i) weights[i] = static_cast<double>(i + 1);
  return Mesh::from_edges(2, std::move(coords), std::move(weights), edges);
}

std::vector<std::uint32_t> sample_leaf_order() { return {0, 5, 4, 6, 1, 3, 7, 2}; }

DecompTree sample_tree(const Mesh& m) {
  DecompTree t = make_tree_skeleton(m);
  t.leaf_array = sample_leaf_order();
  // Leaves: 1=000 6=001 5=010 7=011 2=100 4=1010 8=1011 3=11.
  const std::vector<std::pair<std::uint32_t, const char*>> ids{{1, "000"}, {6, "001"}, {5, "010"},  {7, "011"},
                                                               {2, "100"}, {4, "1010"}, {8, "1011"}, {3, "11"}};
  for (auto [v, bits] : ids) t.vertex_id[v - 1] = BitId::from_string(bits);
  assign_edge_owners(t);
  return t;
}

Mesh four_vertex_example() {
  std::vector<double> coords{0, 0, 2, 0, 1, 1, 0, 2};
  std::vector<double> weights{1, 2, 3, 4};
  const std::vector<Edge> edges{{0, 2, 1.0}, {0, 3, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}};
  return Mesh::from_edges(2, std::move(coords), std::move(weights), edges);
}

}  // namespace comesh::testing
