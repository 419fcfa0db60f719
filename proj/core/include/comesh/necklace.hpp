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
#include <limits>
#include <span>
#include <vector>

namespace comesh {

/// Blue elements are vertex indices; red elements are kRed.
struct RedBlueArray {
  static constexpr std::uint32_t kRed = std::numeric_limits<std::uint32_t>::max();

  std::vector<std::uint32_t> elements;
  std::size_t blue_count = 0;
  std::size_t red_count = 0;

  std::size_t size() const noexcept { return elements.size(); }
  bool is_blue(std::size_t i) const noexcept { return elements[i] != kRed; }
};

struct Window {
  std::size_t start = 0;
  std::size_t length = 0;
  std::size_t end() const noexcept { return start + length; }
  friend bool operator==(const Window&, const Window&) = default;
};

/// Each vertex of `leaf_order` followed by `red_counts[i]` reds.
RedBlueArray build_red_blue_array(std::span<const std::uint32_t> leaf_order,
                                  std::span<const std::uint32_t> red_counts);

/**
 * @brief First window of length ceil(N/2) holding half the blues.
 *
 * For odd N the window must hold exactly ceil(B/2) blues; for even N either
 * floor(B/2) or ceil(B/2). Such a window always exists.
 */
Window necklace_bisect(const RedBlueArray& arr);
Window necklace_bisect(std::span<const std::uint8_t> is_blue);

}  // namespace comesh
