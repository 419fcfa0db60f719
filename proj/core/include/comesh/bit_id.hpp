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
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace comesh {

/**
 * @brief Path from the root of a decomposition tree, one bit per level.
 *
 * Bits are packed most-significant first so that comparing the packed words
 * gives lexicographic order, with a proper prefix ordered before its
 * extensions. The root is the empty id.
 */
class BitId {
 public:
  static constexpr std::size_t kMaxBits = 128;

  BitId() = default;

  /// Parses a string of '0'/'1'. "" and "-" both denote the root.
  static BitId from_string(std::string_view bits);

  std::size_t size() const noexcept { return length_; }
  bool empty() const noexcept { return length_ == 0; }
  bool bit(std::size_t i) const noexcept {
    return (words_[i >> 6] >> (63 - (i & 63))) & 1U;
  }

  void push_back(bool b);
  BitId child(bool b) const {
    BitId c = *this;
    c.push_back(b);
    return c;
  }
  BitId prefix(std::size_t len) const;
  BitId parent() const { return prefix(length_ == 0 ? 0 : length_ - 1); }

  /// True if this id is a (not necessarily strict) prefix of `other`.
  bool is_prefix_of(const BitId& other) const noexcept;
  bool is_strict_prefix_of(const BitId& other) const noexcept {
    return length_ < other.length_ && is_prefix_of(other);
  }

  /// "0101"; the root renders as the empty string.
  std::string to_string() const;
  /// Token form used by dump files: the root renders as "-".
  std::string to_token() const { return length_ == 0 ? "-" : to_string(); }

  std::uint64_t hash() const noexcept;

  friend bool operator==(const BitId& a, const BitId& b) noexcept {
    return a.length_ == b.length_ && a.words_ == b.words_;
  }
  friend std::strong_ordering operator<=>(const BitId& a, const BitId& b) noexcept {
    if (auto c = a.words_ <=> b.words_; c != 0) return c;
    return a.length_ <=> b.length_;
  }

  friend BitId common_prefix(const BitId& a, const BitId& b) noexcept;

 private:
  std::array<std::uint64_t, 2> words_{};
  std::uint32_t length_ = 0;
};

struct BitIdHash {
  std::size_t operator()(const BitId& id) const noexcept {
    return static_cast<std::size_t>(id.hash());
  }
};

}  // namespace comesh
