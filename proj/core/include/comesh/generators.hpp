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

#include <array>
#include <cstdint>
#include <vector>

#include "comesh/mesh.hpp"
#include "comesh/permutation.hpp"

namespace comesh {

/// Declared degree bounds of the generator families.
inline constexpr int kGrid2dDegreeBound = 8;
inline constexpr int kGrid3dDegreeBound = 26;

/**
 * @brief n x n unit grid, each cell split by its lower-left to upper-right
 * diagonal.
 *
 * Vertex (i, j) has index j*n + i. With jitter > 0 each vertex moves by a
 * uniform point of the disk of radius jitter/2, which keeps every triangle
 * positively oriented for jitter < 0.3. Vertex weights are index + 1, edge
 * weights 1.
 */
Mesh gen_grid2d(int n, double jitter = 0.0, std::uint64_t seed = 0);

/// Triangles of gen_grid2d(n), counter-clockwise.
std::vector<std::array<std::uint32_t, 3>> grid2d_triangles(int n);

/**
 * @brief n x n x n grid with every cube cut into the 6 Kuhn tetrahedra.
 *
 * Vertex (i, j, k) has index (k*n + j)*n + i.
 */
Mesh gen_grid3d(int n);

std::vector<std::array<std::uint32_t, 4>> grid3d_tetrahedra(int n);

/// Path 0-1-...-(n-1) on the x axis.
Mesh gen_path(int n);

/// Uniformly random layout, deterministic in `seed`.
LayoutPermutation random_permutation_layout(const Mesh& mesh, std::uint64_t seed);
LayoutPermutation random_permutation_layout(std::size_t n, std::uint64_t seed);

}  // namespace comesh
