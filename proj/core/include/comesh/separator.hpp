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

#include "comesh/error.hpp"
#include "comesh/mesh.hpp"

namespace comesh {

struct SeparatorConfig {
  double epsilon = 0.2;
  int sample_size = 200;
  double c_cross = 6.0;
  int max_retries = 64;
  std::uint64_t seed = 0;

  /// (d+1+epsilon)/(d+2).
  double beta(int d) const noexcept { return (d + 1 + epsilon) / (d + 2); }
  /// c_cross * n^(1-1/d).
  double crossing_bound(int d, std::size_t n) const;
  /// Throws std::invalid_argument on out-of-range fields.
  void validate(int d) const;
};

enum class CutKind { Sphere, Hyperplane, Enumerated };

/**
 * @brief A closed ball or halfspace. Points inside (ties included) go to
 * side 0.
 *
 * Sphere: |x - center| <= radius. Hyperplane: normal . x + offset <= 0.
 * Enumerated cuts come from the exhaustive small-subset search and carry no
 * geometry.
 */
struct SeparatorCut {
  CutKind kind = CutKind::Sphere;
  std::vector<double> center;
  double radius = 0.0;
  std::vector<double> normal;
  double offset = 0.0;

  bool contains(std::span<const double> x) const;
};

std::string cut_kind_name(CutKind kind);
/// `cut,sphere,<center...>,<radius>` or `cut,hyperplane,<normal...>,<offset>`.
std::string format_cut_csv(const SeparatorCut& cut);

struct SeparatorResult {
  SeparatorCut cut;
  std::vector<std::uint8_t> side_of;  ///< aligned with the subset order
  std::size_t crossing_count = 0;
  int retries_used = 0;               ///< trials drawn, including the accepted one
};

/// Flat array of points of one dimension.
struct PointCloud {
  int dim = 0;
  std::vector<double> data;

  std::size_t size() const noexcept { return dim == 0 ? 0 : data.size() / dim; }
  std::span<const double> operator[](std::size_t i) const noexcept {
    return {data.data() + i * dim, static_cast<std::size_t>(dim)};
  }
  void push_back(std::span<const double> p) { data.insert(data.end(), p.begin(), p.end()); }
};

/// Inverse stereographic projection onto the unit sphere of R^{d+1}.
std::vector<double> stereo_project(std::span<const double> x);
/// Inverse of stereo_project. The north pole has no preimage.
std::vector<double> stereo_unproject(std::span<const double> y);

/// Iterated Radon points. Requires at least dim + 2 points.
std::vector<double> approx_centerpoint(const PointCloud& points, std::uint64_t seed);

/// Radon point of exactly dim + 2 points.
std::vector<double> radon_point(const PointCloud& points);

/**
 * @brief Sphere-preserving map that moves a centerpoint to the center.
 *
 * A Householder reflection takes the centerpoint c to (0,...,0,|c|); the
 * plane is then scaled by alpha = sqrt((1-r)/(1+r)).
 */
struct ConformalMap {
  int dim = 0;                    ///< ambient dimension d+1
  std::vector<double> reflector;  ///< Householder vector, empty for identity
  double alpha = 1.0;

  std::vector<double> reflect(std::span<const double> y) const;
  /// Sphere point to mapped sphere point.
  std::vector<double> apply(std::span<const double> y) const;
  /// Mapped sphere point back to a point of R^d.
  std::vector<double> pull_back(std::span<const double> y) const;
};

ConformalMap conformal_map(std::span<const double> centerpoint);

/// Preimage in R^d of the great circle {y : normal . y = 0} under `map`.
SeparatorCut great_circle_to_cut(std::span<const double> normal, const ConformalMap& map);

/// Reusable per-vertex scratch for repeated separator calls on one mesh.
class SeparatorWorkspace {
 public:
  explicit SeparatorWorkspace(std::size_t num_vertices)
      : mark_(num_vertices, 0), side_(num_vertices, 0) {}

  /// Marks `subset` as the current member set.
  void mark(std::span<const std::uint32_t> subset);
  bool member(std::uint32_t v) const noexcept { return mark_[v] == epoch_; }
  std::uint8_t side(std::uint32_t v) const noexcept { return side_[v]; }
  void set_side(std::uint32_t v, std::uint8_t s) noexcept { side_[v] = s; }

 private:
  std::vector<std::uint32_t> mark_;
  std::vector<std::uint8_t> side_;
  std::uint32_t epoch_ = 0;
};

/**
 * @brief Splits the vertices `subset` of `mesh` by a random sphere.
 *
 * Subsets of at most 8 vertices are split by exhaustive search for the
 * balanced cut with the fewest crossing edges. On return the workspace marks
 * `subset` and holds each member's side.
 */
SeparatorResult find_separator(const Mesh& mesh, std::span<const std::uint32_t> subset,
                               const SeparatorConfig& cfg, SeparatorWorkspace& ws);
SeparatorResult find_separator(const Mesh& mesh, std::span<const std::uint32_t> subset,
                               const SeparatorConfig& cfg);

}  // namespace comesh
