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

#include "comesh/bit_id.hpp"

#include <bit>
#include <stdexcept>

#include "comesh/rng.hpp"

namespace comesh {

BitId BitId::from_string(std::string_view bits) {
  BitId id;
  if (bits == "-") return id;
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("bit id: bad character");
    id.push_back(c == '1');
  }
  return id;
}

void BitId::push_back(bool b) {
  if (length_ >= kMaxBits) throw std::length_error("bit id: depth limit exceeded");
  if (b) words_[length_ >> 6] |= std::uint64_t{1} << (63 - (length_ & 63));
  ++length_;
}

BitId BitId::prefix(std::size_t len) const {
  if (len > length_) throw std::out_of_range("bit id: prefix longer than id");
  BitId p;
  p.length_ = static_cast<std::uint32_t>(len);
  for (std::size_t w = 0; w < 2; ++w) {
    const std::size_t lo = w * 64;
    if (len <= lo) break;
    const std::size_t keep = len - lo;
    p.words_[w] = keep >= 64 ? words_[w] : words_[w] & ~(~std::uint64_t{0} >> keep);
  }
  return p;
}

bool BitId::is_prefix_of(const BitId& other) const noexcept {
  if (length_ > other.length_) return false;
  return other.prefix(length_) == *this;
}

std::string BitId::to_string() const {
  std::string s(length_, '0');
  for (std::size_t i = 0; i < length_; ++i)
    if (bit(i)) s[i] = '1';
  return s;
}

std::uint64_t BitId::hash() const noexcept {
  return splitmix64(words_[0] ^ splitmix64(words_[1] ^ splitmix64(length_)));
}

BitId common_prefix(const BitId& a, const BitId& b) noexcept {
  std::size_t len = std::min(a.length_, b.length_);
  for (std::size_t w = 0; w < 2; ++w) {
    const std::uint64_t x = a.words_[w] ^ b.words_[w];
    if (x != 0) {
      len = std::min(len, w * 64 + std::countl_zero(x));
      break;
    }
  }
  return a.prefix(len);
}

}  // namespace comesh
