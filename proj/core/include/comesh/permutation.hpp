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
#include <vector>

namespace comesh {

/// Bijection old vertex index -> new position.
class LayoutPermutation {
 public:
  LayoutPermutation() = default;
  /// Throws std::invalid_argument unless `new_position` is a bijection on [0, n).
  explicit LayoutPermutation(std::vector<std::uint32_t> new_position);

  static LayoutPermutation identity(std::size_t n);
  /// `order[pos]` is the old index placed at `pos`.
  static LayoutPermutation from_order(std::span<const std::uint32_t> order);

  std::size_t size() const noexcept { return new_position_.size(); }
  std::uint32_t operator[](std::uint32_t old_index) const noexcept { return new_position_[old_index]; }
  std::span<const std::uint32_t> new_positions() const noexcept { return new_position_; }

  /// Old index at each new position.
  std::vector<std::uint32_t> order() const;
  LayoutPermutation inverse() const;

  friend bool operator==(const LayoutPermutation&, const LayoutPermutation&) = default;

 private:
  std::vector<std::uint32_t> new_position_;
};

}  // namespace comesh
