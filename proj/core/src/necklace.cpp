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

#include "comesh/necklace.hpp"

#include <stdexcept>

namespace comesh {

RedBlueArray build_red_blue_array(std::span<const std::uint32_t> leaf_order,
                                  std::span<const std::uint32_t> red_counts) {
  if (leaf_order.size() != red_counts.size())
    throw std::invalid_argument("build_red_blue_array: one red count per vertex required");
  RedBlueArray arr;
  std::size_t total = leaf_order.size();
  for (std::uint32_t r : red_counts) total += r;
  arr.elements.reserve(total);
  for (std::size_t i = 0; i < leaf_order.size(); ++i) {
    if (leaf_order[i] == RedBlueArray::kRed) throw std::invalid_argument("build_red_blue_array: vertex id reserved");
    arr.elements.push_back(leaf_order[i]);
    arr.elements.insert(arr.elements.end(), red_counts[i], RedBlueArray::kRed);
    arr.red_count += red_counts[i];
  }
  arr.blue_count = leaf_order.size();
  return arr;
}

Window necklace_bisect(std::span<const std::uint8_t> is_blue) {
  const std::size_t n = is_blue.size();
  if (n == 0) throw std::invalid_argument("necklace_bisect: empty array");
  std::size_t blues = 0;
  for (std::uint8_t b : is_blue) blues += b ? 1 : 0;
  const std::size_t len = (n + 1) / 2;
  const std::size_t lo = n % 2 ? (blues + 1) / 2 : blues / 2;
  const std::size_t hi = (blues + 1) / 2;

  std::size_t in = 0;
  for (std::size_t i = 0; i < len; ++i) in += is_blue[i] ? 1 : 0;
  for (std::size_t s = 0;; ++s) {
    if (in >= lo && in <= hi) return {s, len};
    if (s + len >= n) break;
    in += (is_blue[s + len] ? 1 : 0);
    in -= (is_blue[s] ? 1 : 0);
  }
  throw std::logic_error("necklace_bisect: no balanced window");
}

Window necklace_bisect(const RedBlueArray& arr) {
  std::vector<std::uint8_t> blue(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) blue[i] = arr.is_blue(i) ? 1 : 0;
  return necklace_bisect(blue);
}

}  // namespace comesh
