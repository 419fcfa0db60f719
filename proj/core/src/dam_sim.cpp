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

#include "comesh/dam_sim.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace comesh {

void DamConfig::validate() const {
  if (B < 1) throw std::invalid_argument("dam: B must be at least 1");
  if (M < 2 * B) throw std::invalid_argument("dam: M must be at least 2B");
}

MemoryImage serialize_layout(const Mesh& mesh, int degree_bound) {
  const int b = degree_bound > 0 ? degree_bound : mesh.degree_bound();
  if (mesh.max_degree() > b) throw std::invalid_argument("serialize_layout: vertex degree exceeds the degree bound");
  MemoryImage img;
  const std::size_t n = mesh.num_vertices();
  img.slots = static_cast<std::size_t>(b);
  img.weight.assign(mesh.weights().begin(), mesh.weights().end());
  img.degree.resize(n);
  img.neighbor.assign(n * img.slots, MemoryImage::kEmpty);
  img.edge_weight.assign(n * img.slots, 0.0);
  for (std::uint32_t v = 0; v < n; ++v) {
    auto nb = mesh.neighbors(v);
    img.degree[v] = static_cast<std::uint32_t>(nb.size());
    for (std::size_t k = 0; k < nb.size(); ++k) {
      img.neighbor[v * img.slots + k] = nb[k].to;
      img.edge_weight[v * img.slots + k] = nb[k].weight;
    }
  }
  return img;
}

Mesh deserialize_layout(const MemoryImage& image, int dim, std::span<const double> coords) {
  const std::size_t n = image.size();
  std::vector<std::size_t> offsets(n + 1, 0);
  std::vector<HalfEdge> half;
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t k = 0; k < image.degree[v]; ++k)
      half.push_back({image.neighbor[v * image.slots + k], image.edge_weight[v * image.slots + k]});
    offsets[v + 1] = half.size();
  }
  return Mesh::from_csr(dim, std::vector<double>(coords.begin(), coords.end()), image.weight, std::move(offsets),
                        std::move(half), static_cast<int>(image.slots));
}

std::vector<double> mesh_update(const MemoryImage& image, Summation order) {
  const std::size_t n = image.size();
  std::vector<double> out(n, 0.0);
  std::vector<double> terms;
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t base = v * image.slots;
    if (order == Summation::SlotOrder) {
      double s = 0.0;
      for (std::size_t k = 0; k < image.degree[v]; ++k)
        s += image.weight[image.neighbor[base + k]] * image.edge_weight[base + k];
      out[v] = s;
    } else {
      terms.clear();
      for (std::size_t k = 0; k < image.degree[v]; ++k)
        terms.push_back(image.weight[image.neighbor[base + k]] * image.edge_weight[base + k]);
      std::sort(terms.begin(), terms.end());
      double s = 0.0;
      for (double t : terms) s += t;
      out[v] = s;
    }
  }
  return out;
}

namespace {

/// LRU set of block ids kept as an intrusive list over a dense id range.
class LruCache {
 public:
  LruCache(std::size_t blocks, std::size_t frames)
      : prev_(blocks, -1), next_(blocks, -1), resident_(blocks, 0), frames_(frames) {}

  /// Returns true on a miss.
  bool touch(std::size_t b) {
    if (resident_[b]) {
      if (head_ != static_cast<long>(b)) {
        unlink(b);
        push_front(b);
      }
      return false;
    }
    if (size_ == frames_) {
      const long victim = tail_;
      unlink(static_cast<std::size_t>(victim));
      resident_[static_cast<std::size_t>(victim)] = 0;
      --size_;
    }
    push_front(b);
    resident_[b] = 1;
    ++size_;
    return true;
  }

 private:
  void unlink(std::size_t b) {
    if (prev_[b] >= 0) next_[static_cast<std::size_t>(prev_[b])] = next_[b]; else head_ = next_[b];
    if (next_[b] >= 0) prev_[static_cast<std::size_t>(next_[b])] = prev_[b]; else tail_ = prev_[b];
    prev_[b] = next_[b] = -1;
  }
  void push_front(std::size_t b) {
    prev_[b] = -1;
    next_[b] = head_;
    if (head_ >= 0) prev_[static_cast<std::size_t>(head_)] = static_cast<long>(b);
    head_ = static_cast<long>(b);
    if (tail_ < 0) tail_ = head_;
  }

  std::vector<long> prev_, next_;
  std::vector<char> resident_;
  std::size_t frames_;
  std::size_t size_ = 0;
  long head_ = -1, tail_ = -1;
};

}  // namespace

SimResult simulate_update(const MemoryImage& image, const DamConfig& cfg) {
  cfg.validate();
  const std::size_t n = image.size();
  const std::size_t blocks = (n + cfg.B - 1) / cfg.B;
  LruCache cache(std::max<std::size_t>(blocks, 1), cfg.M / cfg.B);
  std::vector<char> seen(std::max<std::size_t>(blocks, 1), 0);
  SimResult r;
  auto touch = [&](std::size_t record) {
    const std::size_t b = record / cfg.B;
    if (cache.touch(b)) ++r.transfers;
    if (!seen[b]) {
      seen[b] = 1;
      ++r.distinct_blocks;
    }
  };
  for (std::size_t v = 0; v < n; ++v) {
    touch(v);
    for (std::size_t k = 0; k < image.degree[v]; ++k) touch(image.neighbor[v * image.slots + k]);
  }
  r.scan_bound = 1.0 + static_cast<double>(n) / static_cast<double>(cfg.B);
  r.ratio = static_cast<double>(r.transfers) / r.scan_bound;
  return r;
}

std::vector<SweepRow> sweep(std::span<const SweepCase> cases, std::span<const std::size_t> Bs,
                            std::span<const std::size_t> Ms) {
  std::vector<SweepRow> rows;
  for (const SweepCase& c : cases)
    for (std::size_t B : Bs)
      for (std::size_t M : Ms) {
        if (B < 1 || M < 2 * B) continue;
        SweepRow row;
        row.n = c.image->size();
        row.d = c.d;
        row.layout = c.layout;
        row.B = B;
        row.M = M;
        row.result = simulate_update(*c.image, DamConfig{B, M});
        rows.push_back(std::move(row));
      }
  return rows;
}

std::string format_sweep_row(const SweepRow& row) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", row.result.ratio);
  char sb[64];
  std::snprintf(sb, sizeof sb, "%.6f", row.result.scan_bound);
  return std::to_string(row.n) + "," + std::to_string(row.d) + "," + row.layout + "," + std::to_string(row.B) + "," +
         std::to_string(row.M) + "," + std::to_string(row.result.transfers) + "," + sb + "," + buf;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << kSweepHeader << '\n';
  for (const SweepRow& r : rows) out << format_sweep_row(r) << '\n';
}

}  // namespace comesh
