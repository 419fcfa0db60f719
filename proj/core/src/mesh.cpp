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

#include "comesh/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>

namespace comesh {

namespace {

void check_shape(int dim, std::size_t n, std::size_t ncoords) {
  if (dim < 1) throw std::invalid_argument("mesh: dimension must be positive");
  if (ncoords != n * static_cast<std::size_t>(dim))
    throw std::invalid_argument("mesh: coordinate count does not match dim * vertices");
}

int measured_max_degree(const std::vector<std::size_t>& offsets) {
  std::size_t m = 0;
  for (std::size_t v = 0; v + 1 < offsets.size(); ++v) m = std::max(m, offsets[v + 1] - offsets[v]);
  return static_cast<int>(m);
}

}  // namespace

Mesh::Mesh(int dim, std::vector<double> coords, std::vector<double> weights,
           const std::vector<std::vector<HalfEdge>>& adjacency, int degree_bound) {
  if (adjacency.size() != weights.size())
    throw std::invalid_argument("mesh: adjacency count does not match vertices");
  std::vector<std::size_t> offsets(weights.size() + 1, 0);
  std::vector<HalfEdge> half;
  for (std::size_t v = 0; v < adjacency.size(); ++v) {
    offsets[v + 1] = offsets[v] + adjacency[v].size();
    half.insert(half.end(), adjacency[v].begin(), adjacency[v].end());
  }
  *this = from_csr(dim, std::move(coords), std::move(weights), std::move(offsets), std::move(half),
                   degree_bound);
}

Mesh Mesh::from_csr(int dim, std::vector<double> coords, std::vector<double> weights,
                    std::vector<std::size_t> offsets, std::vector<HalfEdge> half_edges,
                    int degree_bound) {
  const std::size_t n = weights.size();
  check_shape(dim, n, coords.size());
  if (n >= std::numeric_limits<std::uint32_t>::max())
    throw std::invalid_argument("mesh: too many vertices");
  if (offsets.size() != n + 1 || offsets.front() != 0 || offsets.back() != half_edges.size())
    throw std::invalid_argument("mesh: malformed adjacency offsets");
  for (std::size_t v = 0; v < n; ++v)
    if (offsets[v + 1] < offsets[v]) throw std::invalid_argument("mesh: malformed adjacency offsets");
  for (const HalfEdge& h : half_edges)
    if (h.to >= n) throw std::invalid_argument("mesh: neighbor index out of range");
  Mesh m;
  m.dim_ = dim;
  m.coords_ = std::move(coords);
  m.weights_ = std::move(weights);
  m.offsets_ = std::move(offsets);
  m.half_edges_ = std::move(half_edges);
  m.degree_bound_ = degree_bound > 0 ? degree_bound : measured_max_degree(m.offsets_);
  return m;
}

Mesh Mesh::from_edges(int dim, std::vector<double> coords, std::vector<double> weights,
                      std::span<const Edge> edges, int degree_bound) {
  const std::size_t n = weights.size();
  for (const Edge& e : edges)
    if (e.u >= n || e.v >= n) throw std::invalid_argument("mesh: edge endpoint out of range");
  std::vector<std::size_t> offsets(n + 1, 0);
  for (const Edge& e : edges) {
    ++offsets[e.u + 1];
    ++offsets[e.v + 1];
  }
  for (std::size_t v = 0; v < n; ++v) offsets[v + 1] += offsets[v];
  std::vector<HalfEdge> half(offsets.back());
  std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
  for (const Edge& e : edges) {
    half[fill[e.u]++] = {e.v, e.weight};
    half[fill[e.v]++] = {e.u, e.weight};
  }
  for (std::size_t v = 0; v < n; ++v)
    std::stable_sort(half.begin() + static_cast<std::ptrdiff_t>(offsets[v]),
                     half.begin() + static_cast<std::ptrdiff_t>(offsets[v + 1]),
                     [](const HalfEdge& a, const HalfEdge& b) { return a.to < b.to; });
  return from_csr(dim, std::move(coords), std::move(weights), std::move(offsets), std::move(half),
                  degree_bound);
}

int Mesh::max_degree() const noexcept { return measured_max_degree(offsets_); }

std::vector<Edge> Mesh::edge_list() const {
  std::vector<Edge> edges;
  edges.reserve(num_edges());
  for (std::uint32_t u = 0; u < num_vertices(); ++u)
    for (const HalfEdge& h : neighbors(u))
      if (u < h.to) edges.push_back({u, h.to, h.weight});
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
  return edges;
}

ValidationReport validate_mesh(const Mesh& mesh) {
  ValidationReport r;
  r.degree_bound = mesh.degree_bound();
  r.max_degree = mesh.max_degree();
  const std::size_t n = mesh.num_vertices();

  for (double c : mesh.all_coords())
    if (!std::isfinite(c)) ++r.nonfinite_coords;

  using Key = std::tuple<std::uint32_t, std::uint32_t, double>;
  std::vector<Key> fwd, rev;
  fwd.reserve(mesh.num_half_edges());
  rev.reserve(mesh.num_half_edges());
  for (std::uint32_t u = 0; u < n; ++u) {
    if (static_cast<int>(mesh.degree(u)) > r.degree_bound) ++r.degree_violations;
    for (const HalfEdge& h : mesh.neighbors(u)) {
      if (h.to == u) ++r.self_loops;
      if (!(h.weight > 0.0) || !std::isfinite(h.weight)) ++r.bad_weights;
      fwd.emplace_back(u, h.to, h.weight);
      rev.emplace_back(h.to, u, h.weight);
    }
  }
  std::sort(fwd.begin(), fwd.end());
  std::sort(rev.begin(), rev.end());
  for (std::size_t i = 1; i < fwd.size(); ++i)
    if (std::get<0>(fwd[i]) == std::get<0>(fwd[i - 1]) && std::get<1>(fwd[i]) == std::get<1>(fwd[i - 1]))
      ++r.duplicates;
  // Half-edges without a mirror image, counted on both multisets.
  std::vector<Key> diff;
  std::set_symmetric_difference(fwd.begin(), fwd.end(), rev.begin(), rev.end(), std::back_inserter(diff));
  r.asymmetric = diff.size() / 2 + diff.size() % 2;

  auto note = [&](std::size_t count, const char* what) {
    if (count) r.issues.push_back(std::to_string(count) + " " + what);
  };
  note(r.asymmetric, "asymmetric edge(s)");
  note(r.duplicates, "duplicate half-edge(s)");
  note(r.self_loops, "self-loop half-edge(s)");
  note(r.bad_weights, "non-positive or non-finite edge weight(s)");
  note(r.nonfinite_coords, "non-finite coordinate(s)");
  note(r.degree_violations, "vertex degree(s) above the degree bound");
  r.valid = r.issues.empty();
  return r;
}

EdgeTable::EdgeTable(const Mesh& mesh) {
  edges_ = mesh.edge_list();
  half_to_edge_.assign(mesh.num_half_edges(), std::numeric_limits<std::uint32_t>::max());
  for (std::uint32_t u = 0; u < mesh.num_vertices(); ++u) {
    const std::size_t base = mesh.half_edge_begin(u);
    auto nb = mesh.neighbors(u);
    for (std::size_t k = 0; k < nb.size(); ++k) {
      const std::uint32_t a = std::min(u, nb[k].to), b = std::max(u, nb[k].to);
      auto it = std::lower_bound(edges_.begin(), edges_.end(), Edge{a, b, 0.0},
                                 [](const Edge& x, const Edge& y) { return std::tie(x.u, x.v) < std::tie(y.u, y.v); });
      if (it == edges_.end() || it->u != a || it->v != b || it->weight != nb[k].weight)
        throw std::invalid_argument("edge table: mesh is not symmetric");
      half_to_edge_[base + k] = static_cast<std::uint32_t>(it - edges_.begin());
    }
  }
  if (2 * edges_.size() != mesh.num_half_edges())
    throw std::invalid_argument("edge table: mesh is not symmetric");
}

std::optional<std::uint32_t> EdgeTable::find(std::uint32_t u, std::uint32_t v) const {
  if (u > v) std::swap(u, v);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), Edge{u, v, 0.0},
                             [](const Edge& x, const Edge& y) { return std::tie(x.u, x.v) < std::tie(y.u, y.v); });
  if (it == edges_.end() || it->u != u || it->v != v) return std::nullopt;
  return static_cast<std::uint32_t>(it - edges_.begin());
}

namespace {

// Gaussian elimination with partial pivoting on a k x k system; false if singular.
bool solve_small(std::vector<double> a, std::vector<double> b, std::size_t k, std::vector<double>& x) {
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < k; ++r)
      if (std::abs(a[r * k + c]) > std::abs(a[piv * k + c])) piv = r;
    if (std::abs(a[piv * k + c]) < 1e-300) return false;
    if (piv != c) {
      for (std::size_t j = 0; j < k; ++j) std::swap(a[c * k + j], a[piv * k + j]);
      std::swap(b[c], b[piv]);
    }
    for (std::size_t r = c + 1; r < k; ++r) {
      const double f = a[r * k + c] / a[c * k + c];
      for (std::size_t j = c; j < k; ++j) a[r * k + j] -= f * a[c * k + j];
      b[r] -= f * b[c];
    }
  }
  x.assign(k, 0.0);
  for (std::size_t c = k; c-- > 0;) {
    double s = b[c];
    for (std::size_t j = c + 1; j < k; ++j) s -= a[c * k + j] * x[j];
    x[c] = s / a[c * k + c];
  }
  return true;
}

double determinant(std::vector<double> a, std::size_t k) {
  double det = 1.0;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < k; ++r)
      if (std::abs(a[r * k + c]) > std::abs(a[piv * k + c])) piv = r;
    if (a[piv * k + c] == 0.0) return 0.0;
    if (piv != c) {
      for (std::size_t j = 0; j < k; ++j) std::swap(a[c * k + j], a[piv * k + j]);
      det = -det;
    }
    det *= a[c * k + c];
    for (std::size_t r = c + 1; r < k; ++r) {
      const double f = a[r * k + c] / a[c * k + c];
      for (std::size_t j = c; j < k; ++j) a[r * k + j] -= f * a[c * k + j];
    }
  }
  return det;
}

// Volume of the simplex on the listed points.
double simplex_volume(std::span<const double> pts, int dim, const std::vector<std::size_t>& idx) {
  const std::size_t k = idx.size() - 1;
  if (k == 0) return 1.0;
  std::vector<double> gram(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      double s = 0.0;
      for (int c = 0; c < dim; ++c)
        s += (pts[idx[i + 1] * dim + c] - pts[idx[0] * dim + c]) *
             (pts[idx[j + 1] * dim + c] - pts[idx[0] * dim + c]);
      gram[i * k + j] = s;
    }
  double f = 1.0;
  for (std::size_t i = 2; i <= k; ++i) f *= static_cast<double>(i);
  return std::sqrt(std::max(0.0, determinant(gram, k))) / f;
}

}  // namespace

SimplexQuality simplex_quality(std::span<const double> points, int dim) {
  const std::size_t count = points.size() / dim;
  if (count != static_cast<std::size_t>(dim) + 1)
    throw std::invalid_argument("simplex_quality: need dim + 1 points");
  SimplexQuality q;

  // Smallest enclosing ball: the smallest circumball of a vertex subset that
  // covers all points.
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 1; mask < (1U << count); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < count; ++i)
      if (mask & (1U << i)) idx.push_back(i);
    if (idx.size() < 2) continue;
    const std::size_t k = idx.size() - 1;
    std::vector<double> gram(k * k), rhs(k), t;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        double s = 0.0;
        for (int c = 0; c < dim; ++c)
          s += (points[idx[i + 1] * dim + c] - points[idx[0] * dim + c]) *
               (points[idx[j + 1] * dim + c] - points[idx[0] * dim + c]);
        gram[i * k + j] = 2.0 * s;
      }
      rhs[i] = gram[i * k + i] / 2.0;
    }
    if (!solve_small(gram, rhs, k, t)) continue;
    std::vector<double> center(dim);
    for (int c = 0; c < dim; ++c) {
      double x = points[idx[0] * dim + c];
      for (std::size_t j = 0; j < k; ++j) x += t[j] * (points[idx[j + 1] * dim + c] - points[idx[0] * dim + c]);
      center[c] = x;
    }
    auto dist = [&](std::size_t i) {
      double s = 0.0;
      for (int c = 0; c < dim; ++c) s += (points[i * dim + c] - center[c]) * (points[i * dim + c] - center[c]);
      return std::sqrt(s);
    };
    const double r = dist(idx[0]);
    bool covers = true;
    for (std::size_t i = 0; i < count && covers; ++i) covers = dist(i) <= r * (1.0 + 1e-9) + 1e-300;
    if (covers) best = std::min(best, r);
  }
  q.circum_radius = best;

  std::vector<std::size_t> all(count);
  for (std::size_t i = 0; i < count; ++i) all[i] = i;
  const double vol = simplex_volume(points, dim, all);
  double facets = 0.0;
  for (std::size_t skip = 0; skip < count; ++skip) {
    std::vector<std::size_t> f;
    for (std::size_t i = 0; i < count; ++i)
      if (i != skip) f.push_back(i);
    facets += simplex_volume(points, dim, f);
  }
  q.in_radius = facets > 0.0 ? dim * vol / facets : 0.0;
  q.aspect = q.in_radius > 0.0 ? q.circum_radius / q.in_radius : std::numeric_limits<double>::infinity();
  return q;
}

}  // namespace comesh
