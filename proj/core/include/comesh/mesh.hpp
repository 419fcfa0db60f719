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
#include <span>
#include <string>
#include <vector>

namespace comesh {

/// One direction of an undirected edge, stored at its source vertex.
struct HalfEdge {
  std::uint32_t to = 0;
  double weight = 1.0;
  friend bool operator==(const HalfEdge&, const HalfEdge&) = default;
};

/// Undirected edge. Canonical form has u < v.
struct Edge {
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  double weight = 1.0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct VertexRec {
  std::uint32_t index = 0;
  std::span<const double> coords;
  double weight = 0.0;
};

/**
 * @brief Weighted geometric graph in compressed adjacency form.
 *
 * Every undirected edge is stored twice, once at each endpoint. Adjacency
 * lists keep the order they were given in. The constructor checks only shape
 * (array sizes, neighbor indices in range); use validate_mesh for the
 * semantic invariants.
 */
class Mesh {
 public:
  Mesh() = default;

  /// `degree_bound` of 0 means "use the measured maximum degree".
  Mesh(int dim, std::vector<double> coords, std::vector<double> weights,
       const std::vector<std::vector<HalfEdge>>& adjacency, int degree_bound = 0);

  /// Adjacency from compressed arrays; offsets has n+1 entries.
  static Mesh from_csr(int dim, std::vector<double> coords, std::vector<double> weights,
                       std::vector<std::size_t> offsets, std::vector<HalfEdge> half_edges,
                       int degree_bound = 0);

  /// Stores each edge at both endpoints; adjacency lists sorted by neighbor.
  static Mesh from_edges(int dim, std::vector<double> coords, std::vector<double> weights,
                         std::span<const Edge> edges, int degree_bound = 0);

  int dim() const noexcept { return dim_; }
  std::size_t num_vertices() const noexcept { return weights_.size(); }
  std::size_t num_half_edges() const noexcept { return half_edges_.size(); }
  std::size_t num_edges() const noexcept { return half_edges_.size() / 2; }

  std::span<const double> coords(std::uint32_t v) const noexcept {
    return {coords_.data() + static_cast<std::size_t>(v) * dim_, static_cast<std::size_t>(dim_)};
  }
  double weight(std::uint32_t v) const noexcept { return weights_[v]; }
  std::span<const HalfEdge> neighbors(std::uint32_t v) const noexcept {
    return {half_edges_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::size_t degree(std::uint32_t v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
  /// Index of the first half-edge of v in the global half-edge array.
  std::size_t half_edge_begin(std::uint32_t v) const noexcept { return offsets_[v]; }
  VertexRec vertex(std::uint32_t v) const noexcept { return {v, coords(v), weights_[v]}; }

  std::span<const double> all_coords() const noexcept { return coords_; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::span<const std::size_t> offsets() const noexcept { return offsets_; }
  std::span<const HalfEdge> half_edges() const noexcept { return half_edges_; }

  /// Declared degree bound b.
  int degree_bound() const noexcept { return degree_bound_; }
  int max_degree() const noexcept;

  /// Undirected edges with u < v, ordered by (u, v). Requires symmetry.
  std::vector<Edge> edge_list() const;

  /// Geometry, weights and adjacency; the declared degree bound is not compared.
  friend bool operator==(const Mesh& a, const Mesh& b) {
    return a.dim_ == b.dim_ && a.coords_ == b.coords_ && a.weights_ == b.weights_ && a.offsets_ == b.offsets_ &&
           a.half_edges_ == b.half_edges_;
  }

 private:
  int dim_ = 2;
  std::vector<double> coords_;
  std::vector<double> weights_;
  std::vector<std::size_t> offsets_{0};
  std::vector<HalfEdge> half_edges_;
  int degree_bound_ = 0;
};

struct ValidationReport {
  bool valid = true;
  int max_degree = 0;
  int degree_bound = 0;
  std::size_t asymmetric = 0;
  std::size_t duplicates = 0;
  std::size_t self_loops = 0;
  std::size_t bad_weights = 0;
  std::size_t nonfinite_coords = 0;
  std::size_t degree_violations = 0;
  std::vector<std::string> issues;
};

ValidationReport validate_mesh(const Mesh& mesh);

/**
 * @brief Canonical numbering of the undirected edges of a symmetric mesh.
 *
 * Edges are numbered in (u, v) order with u < v. Each half-edge maps to the
 * number of its undirected edge.
 */
class EdgeTable {
 public:
  EdgeTable() = default;
  /// Throws std::invalid_argument if the mesh is not symmetric.
  explicit EdgeTable(const Mesh& mesh);

  std::size_t size() const noexcept { return edges_.size(); }
  const Edge& operator[](std::size_t e) const noexcept { return edges_[e]; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::uint32_t edge_of_half(std::size_t half_edge) const noexcept { return half_to_edge_[half_edge]; }
  std::optional<std::uint32_t> find(std::uint32_t u, std::uint32_t v) const;

 private:
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> half_to_edge_;
};

struct SimplexQuality {
  double circum_radius = 0.0;  ///< radius of the smallest enclosing ball
  double in_radius = 0.0;
  double aspect = 0.0;
};

/// Quality of the simplex spanned by `count` points of dimension `dim`
/// (count = dim + 1), given as a flat coordinate array.
SimplexQuality simplex_quality(std::span<const double> points, int dim);

}  // namespace comesh
