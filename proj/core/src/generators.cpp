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

#include "comesh/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "comesh/rng.hpp"

namespace comesh {

namespace {

std::vector<double> index_weights(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = static_cast<double>(i + 1);
  return w;
}

}  // namespace

Mesh gen_grid2d(int n, double jitter, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("gen_grid2d: n must be at least 2");
  if (!(jitter >= 0.0 && jitter < 0.3)) throw std::invalid_argument("gen_grid2d: jitter must lie in [0, 0.3)");
  const auto N = static_cast<std::size_t>(n) * n;
  std::vector<double> coords(2 * N);
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const std::size_t v = static_cast<std::size_t>(j) * n + i;
      double dx = 0.0, dy = 0.0;
      if (jitter > 0.0) {
        const double r = 0.5 * jitter * std::sqrt(unit(rng));
        const double t = 2.0 * std::numbers::pi * unit(rng);
        dx = r * std::cos(t);
        dy = r * std::sin(t);
      }
      coords[2 * v] = i + dx;
      coords[2 * v + 1] = j + dy;
    }
  std::vector<Edge> edges;
  edges.reserve(3 * N);
  auto id = [n](int i, int j) { return static_cast<std::uint32_t>(j * n + i); };
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      if (i + 1 < n) edges.push_back({id(i, j), id(i + 1, j), 1.0});
      if (j + 1 < n) edges.push_back({id(i, j), id(i, j + 1), 1.0});
      if (i + 1 < n && j + 1 < n) edges.push_back({id(i, j), id(i + 1, j + 1), 1.0});
    }
  return Mesh::from_edges(2, std::move(coords), index_weights(N), edges, kGrid2dDegreeBound);
}

std::vector<std::array<std::uint32_t, 3>> grid2d_triangles(int n) {
  std::vector<std::array<std::uint32_t, 3>> t;
  auto id = [n](int i, int j) { return static_cast<std::uint32_t>(j * n + i); };
  for (int j = 0; j + 1 < n; ++j)
    for (int i = 0; i + 1 < n; ++i) {
      t.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      t.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  return t;
}

namespace {

// Kuhn path steps: offsets 1, 1+2, 1+2+4 in (x, y, z) bits for each axis order.
constexpr std::array<std::array<int, 3>, 6> kAxisOrders{{
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

}  // namespace

std::vector<std::array<std::uint32_t, 4>> grid3d_tetrahedra(int n) {
  std::vector<std::array<std::uint32_t, 4>> tets;
  auto id = [n](int i, int j, int k) { return static_cast<std::uint32_t>((k * n + j) * n + i); };
  for (int k = 0; k + 1 < n; ++k)
    for (int j = 0; j + 1 < n; ++j)
      for (int i = 0; i + 1 < n; ++i)
        for (const auto& order : kAxisOrders) {
          std::array<int, 3> p{i, j, k};
          std::array<std::uint32_t, 4> t{};
          t[0] = id(p[0], p[1], p[2]);
          for (int s = 0; s < 3; ++s) {
            ++p[order[s]];
            t[s + 1] = id(p[0], p[1], p[2]);
          }
          tets.push_back(t);
        }
  return tets;
}

Mesh gen_grid3d(int n) {
  if (n < 2) throw std::invalid_argument("gen_grid3d: n must be at least 2");
  const auto N = static_cast<std::size_t>(n) * n * n;
  std::vector<double> coords(3 * N);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const std::size_t v = (static_cast<std::size_t>(k) * n + j) * n + i;
        coords[3 * v] = i;
        coords[3 * v + 1] = j;
        coords[3 * v + 2] = k;
      }
  // Kuhn edges join p and p + s for every nonzero 0/1 step s.
  std::vector<Edge> edges;
  auto id = [n](int i, int j, int k) { return static_cast<std::uint32_t>((k * n + j) * n + i); };
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        for (int s = 1; s < 8; ++s) {
          const int a = i + (s & 1), b = j + ((s >> 1) & 1), c = k + ((s >> 2) & 1);
          if (a < n && b < n && c < n) edges.push_back({id(i, j, k), id(a, b, c), 1.0});
        }
  return Mesh::from_edges(3, std::move(coords), index_weights(N), edges, kGrid3dDegreeBound);
}

Mesh gen_path(int n) {
  if (n < 1) throw std::invalid_argument("gen_path: n must be positive");
  std::vector<double> coords(2 * static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) coords[2 * i] = i;
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i)
    edges.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i + 1), 1.0});
  return Mesh::from_edges(2, std::move(coords), index_weights(n), edges);
}

LayoutPermutation random_permutation_layout(std::size_t n, std::uint64_t seed) {
  std::vector<std::uint32_t> p(n);
  std::iota(p.begin(), p.end(), 0U);
  Rng rng(seed);
  std::shuffle(p.begin(), p.end(), rng);
  return LayoutPermutation(std::move(p));
}

LayoutPermutation random_permutation_layout(const Mesh& mesh, std::uint64_t seed) {
  return random_permutation_layout(mesh.num_vertices(), seed);
}

}  // namespace comesh
