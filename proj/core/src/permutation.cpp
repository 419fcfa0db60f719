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

#include "comesh/permutation.hpp"

#include <numeric>
#include <stdexcept>

namespace comesh {

LayoutPermutation::LayoutPermutation(std::vector<std::uint32_t> new_position)
    : new_position_(std::move(new_position)) {
  std::vector<char> seen(new_position_.size(), 0);
  for (std::uint32_t p : new_position_) {
    if (p >= new_position_.size() || seen[p])
      throw std::invalid_argument("layout permutation is not a bijection");
    seen[p] = 1;
  }
}

LayoutPermutation LayoutPermutation::identity(std::size_t n) {
  std::vector<std::uint32_t> p(n);
  std::iota(p.begin(), p.end(), 0U);
  return LayoutPermutation(std::move(p));
}

LayoutPermutation LayoutPermutation::from_order(std::span<const std::uint32_t> order) {
  std::vector<std::uint32_t> p(order.size(), static_cast<std::uint32_t>(order.size()));
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    if (order[pos] >= order.size()) throw std::invalid_argument("order entry out of range");
    p[order[pos]] = static_cast<std::uint32_t>(pos);
  }
  return LayoutPermutation(std::move(p));
}

std::vector<std::uint32_t> LayoutPermutation::order() const {
  std::vector<std::uint32_t> o(new_position_.size());
  for (std::size_t v = 0; v < new_position_.size(); ++v)
    o[new_position_[v]] = static_cast<std::uint32_t>(v);
  return o;
}

LayoutPermutation LayoutPermutation::inverse() const { return LayoutPermutation(order()); }

}  // namespace comesh
