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
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "comesh/mesh.hpp"

namespace comesh {

/// Block size and cache capacity, both in vertex records. LRU replacement.
struct DamConfig {
  std::size_t B = 64;
  std::size_t M = 4096;
  /// Throws std::invalid_argument unless B >= 1 and M >= 2B.
  void validate() const;
};

/**
 * @brief Vertex records in layout order, each padded to `slots` neighbors.
 *
 * Neighbor references are record positions.
 */
struct MemoryImage {
  static constexpr std::uint32_t kEmpty = std::numeric_limits<std::uint32_t>::max();

  std::size_t slots = 0;
  std::vector<double> weight;
  std::vector<std::uint32_t> degree;
  std::vector<std::uint32_t> neighbor;  ///< size() * slots
  std::vector<double> edge_weight;      ///< size() * slots

  std::size_t size() const noexcept { return weight.size(); }
};

/// `degree_bound` of 0 uses the mesh's declared bound.
MemoryImage serialize_layout(const Mesh& mesh, int degree_bound = 0);
/// Rebuilds the mesh; geometry is not part of the image and is passed in.
Mesh deserialize_layout(const MemoryImage& image, int dim, std::span<const double> coords);

enum class Summation { SlotOrder, Sorted };

/// w'_i = sum_j w_j e_ij, all from the old weights.
std::vector<double> mesh_update(const MemoryImage& image, Summation order = Summation::SlotOrder);

struct SimResult {
  std::uint64_t transfers = 0;
  std::uint64_t distinct_blocks = 0;
  double scan_bound = 0.0;  ///< 1 + N/B
  double ratio = 0.0;       ///< transfers / scan_bound
};

/// Block fetches of one mesh update: for each record in order, its own block
/// then the block of each neighbor.
SimResult simulate_update(const MemoryImage& image, const DamConfig& cfg);

struct SweepCase {
  std::string layout;
  int d = 2;
  const MemoryImage* image = nullptr;
};

struct SweepRow {
  std::size_t n = 0;
  int d = 2;
  std::string layout;
  std::size_t B = 0, M = 0;
  SimResult result;
};

/// Every case under every (B, M); pairs with M < 2B are skipped.
std::vector<SweepRow> sweep(std::span<const SweepCase> cases, std::span<const std::size_t> Bs,
                            std::span<const std::size_t> Ms);

inline constexpr const char* kSweepHeader = "n,d,layout,B,M,transfers,scan_bound,ratio";
std::string format_sweep_row(const SweepRow& row);
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

}  // namespace comesh
