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

#include "comesh/separator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "comesh/rng.hpp"

namespace comesh {

double SeparatorConfig::crossing_bound(int d, std::size_t n) const {
  return c_cross * std::pow(static_cast<double>(n), 1.0 - 1.0 / d);
}

void SeparatorConfig::validate(int d) const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("separator: epsilon must lie in (0, 1)");
  if (sample_size < d + 2) throw std::invalid_argument("separator: sample_size must be at least d + 2");
  if (!(c_cross > 0.0)) throw std::invalid_argument("separator: c_cross must be positive");
  if (max_retries < 1) throw std::invalid_argument("separator: max_retries must be positive");
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

bool SeparatorCut::contains(std::span<const double> x) const {
  switch (kind) {
    case CutKind::Sphere: {
      double s = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - center[i]) * (x[i] - center[i]);
      return s <= radius * radius;
    }
    case CutKind::Hyperplane:
      return dot(normal, x) + offset <= 0.0;
    case CutKind::Enumerated:
      break;
  }
  throw std::logic_error("enumerated cut has no geometry");
}

std::string cut_kind_name(CutKind kind) {
  switch (kind) {
    case CutKind::Sphere: return "sphere";
    case CutKind::Hyperplane: return "hyperplane";
    case CutKind::Enumerated: return "enumerated";
  }
  return "unknown";
}

std::string format_cut_csv(const SeparatorCut& cut) {
  std::string s = "cut," + cut_kind_name(cut.kind);
  if (cut.kind == CutKind::Sphere) {
    for (double c : cut.center) s += "," + fmt(c);
    s += "," + fmt(cut.radius);
  } else if (cut.kind == CutKind::Hyperplane) {
    for (double c : cut.normal) s += "," + fmt(c);
    s += "," + fmt(cut.offset);
  }
  return s;
}

std::vector<double> stereo_project(std::span<const double> x) {
  const double s = dot(x, x);
  std::vector<double> y(x.size() + 1);
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = 2.0 * x[i] / (s + 1.0);
  y.back() = (s - 1.0) / (s + 1.0);
  return y;
}

std::vector<double> stereo_unproject(std::span<const double> y) {
  const double t = 1.0 - y.back();
  std::vector<double> x(y.size() - 1);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = y[i] / t;
  return x;
}

namespace {

// Radon point of dim+2 points given by pointers; writes `dim` coordinates.
void radon_point_raw(int dim, const double* const* pts, double* out) {
  const int rows = dim + 1, cols = dim + 2;
  double a[16][17];  // dim <= 15
  for (int c = 0; c < cols; ++c) {
    for (int r = 0; r < dim; ++r) a[r][c] = pts[c][r];
    a[dim][c] = 1.0;
  }
  double scale = 0.0;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) scale = std::max(scale, std::abs(a[r][c]));
  const double tol = 1e-12 * scale;

  int pivot_col[16];
  bool is_pivot[17] = {};
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = rank;
    for (int r = rank + 1; r < rows; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    if (std::abs(a[piv][c]) <= tol) continue;
    if (piv != rank)
      for (int j = 0; j < cols; ++j) std::swap(a[rank][j], a[piv][j]);
    for (int r = rank + 1; r < rows; ++r) {
      const double f = a[r][c] / a[rank][c];
      for (int j = c; j < cols; ++j) a[r][j] -= f * a[rank][j];
    }
    pivot_col[rank] = c;
    is_pivot[c] = true;
    ++rank;
  }
  double lambda[17] = {};
  int free_col = cols - 1;
  for (int c = 0; c < cols; ++c)
    if (!is_pivot[c]) {
      free_col = c;
      break;
    }
  lambda[free_col] = 1.0;
  for (int r = rank - 1; r >= 0; --r) {
    const int pc = pivot_col[r];
    double s = 0.0;
    for (int j = pc + 1; j < cols; ++j) s += a[r][j] * lambda[j];
    lambda[pc] = -s / a[r][pc];
  }
  double pos = 0.0;
  for (int c = 0; c < cols; ++c)
    if (lambda[c] > 0.0) pos += lambda[c];
  for (int r = 0; r < dim; ++r) out[r] = 0.0;
  if (!(pos > 0.0) || !std::isfinite(pos)) {
    for (int c = 0; c < cols; ++c)
      for (int r = 0; r < dim; ++r) out[r] += pts[c][r] / cols;
    return;
  }
  for (int c = 0; c < cols; ++c)
    if (lambda[c] > 0.0)
      for (int r = 0; r < dim; ++r) out[r] += lambda[c] / pos * pts[c][r];
}

}  // namespace

std::vector<double> radon_point(const PointCloud& points) {
  if (points.dim < 1 || points.dim > 15 || points.size() != static_cast<std::size_t>(points.dim) + 2)
    throw std::invalid_argument("radon_point: need dim + 2 points, dim <= 15");
  const double* ptr[17];
  for (std::size_t i = 0; i < points.size(); ++i) ptr[i] = points.data.data() + i * points.dim;
  std::vector<double> out(points.dim);
  radon_point_raw(points.dim, ptr, out.data());
  return out;
}

std::vector<double> approx_centerpoint(const PointCloud& points, std::uint64_t seed) {
  const int dim = points.dim;
  const std::size_t m = points.size();
  if (dim < 1 || dim > 15) throw std::invalid_argument("approx_centerpoint: unsupported dimension");
  if (m < static_cast<std::size_t>(dim) + 2)
    throw std::invalid_argument("approx_centerpoint: need at least dim + 2 points");
  std::vector<double> pool = points.data;
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, m - 1);
  const std::size_t k = static_cast<std::size_t>(dim) + 2;
  std::vector<double> last(dim);
  std::size_t chosen[17];
  const double* ptr[17];
  for (std::size_t it = 0; it < 2 * m; ++it) {
    for (std::size_t j = 0; j < k; ++j) {
      std::size_t c;
      do {
        c = pick(rng);
      } while (std::find(chosen, chosen + j, c) != chosen + j);
      chosen[j] = c;
      ptr[j] = pool.data() + c * dim;
    }
    radon_point_raw(dim, ptr, last.data());
    std::copy(last.begin(), last.end(), pool.begin() + static_cast<std::ptrdiff_t>(pick(rng) * dim));
  }
  return last;
}

std::vector<double> ConformalMap::reflect(std::span<const double> y) const {
  std::vector<double> z(y.begin(), y.end());
  if (reflector.empty()) return z;
  const double f = 2.0 * dot(reflector, y) / dot(reflector, reflector);
  for (std::size_t i = 0; i < z.size(); ++i) z[i] -= f * reflector[i];
  return z;
}

std::vector<double> ConformalMap::apply(std::span<const double> y) const {
  std::vector<double> z = reflect(y);
  if (z.back() >= 1.0) return z;  // the pole is fixed
  std::vector<double> x = stereo_unproject(z);
  for (double& c : x) c *= alpha;
  return stereo_project(x);
}

std::vector<double> ConformalMap::pull_back(std::span<const double> y) const {
  std::vector<double> u = stereo_unproject(y);
  for (double& c : u) c /= alpha;
  std::vector<double> z = reflect(stereo_project(u));
  return stereo_unproject(z);
}

ConformalMap conformal_map(std::span<const double> centerpoint) {
  ConformalMap map;
  map.dim = static_cast<int>(centerpoint.size());
  const double r = std::sqrt(dot(centerpoint, centerpoint));
  if (!(r < 1.0)) throw std::invalid_argument("conformal_map: centerpoint must lie inside the unit ball");
  std::vector<double> v(centerpoint.begin(), centerpoint.end());
  v.back() -= r;
  if (dot(v, v) > 1e-30) map.reflector = std::move(v);
  map.alpha = std::sqrt((1.0 - r) / (1.0 + r));
  return map;
}

namespace {

// Generalized sphere A|x|^2 + 2 B.x + C = 0 in R^d.
struct GenSphere {
  double A = 0.0;
  std::vector<double> B;
  double C = 0.0;
};

GenSphere pull_back_circle(std::span<const double> normal, const ConformalMap& map) {
  const std::size_t D = normal.size();
  const std::size_t d = D - 1;
  const double len = std::sqrt(dot(normal, normal));
  // Mapped plane: a2 |x''|^2 + 2 b2 . x'' + c2 = 0 after undoing the dilation.
  const double nD = normal[d] / len;
  const double a2 = nD * map.alpha * map.alpha;
  const double c2 = -nD;
  // Lift to the sphere, then undo the reflection.
  std::vector<double> m(D);
  for (std::size_t i = 0; i < d; ++i) m[i] = 2.0 * map.alpha * normal[i] / len;
  m[d] = a2 - c2;
  const std::vector<double> g = map.reflect(m);
  const double h = a2 + c2;
  GenSphere s;
  s.A = g[d] + h;
  s.B.assign(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(d));
  s.C = h - g[d];
  if (s.A < 0.0) {
    s.A = -s.A;
    s.C = -s.C;
    for (double& b : s.B) b = -b;
  }
  return s;
}

SeparatorCut to_cut(const GenSphere& s) {
  SeparatorCut cut;
  const double bn = std::sqrt(dot(s.B, s.B));
  if (s.A <= 1e-12 * (s.A + bn + std::abs(s.C))) {
    cut.kind = CutKind::Hyperplane;
    cut.normal.resize(s.B.size());
    for (std::size_t i = 0; i < s.B.size(); ++i) cut.normal[i] = s.B[i] / bn;
    cut.offset = s.C / (2.0 * bn);
    return cut;
  }
  cut.kind = CutKind::Sphere;
  cut.center.resize(s.B.size());
  for (std::size_t i = 0; i < s.B.size(); ++i) cut.center[i] = -s.B[i] / s.A;
  const double r2 = bn * bn / (s.A * s.A) - s.C / s.A;
  cut.radius = std::sqrt(std::max(r2, 1e-300));
  return cut;
}

}  // namespace

SeparatorCut great_circle_to_cut(std::span<const double> normal, const ConformalMap& map) {
  if (normal.size() < 2 || dot(normal, normal) == 0.0)
    throw std::invalid_argument("great_circle_to_cut: normal must be nonzero");
  if (map.dim != static_cast<int>(normal.size()))
    throw std::invalid_argument("great_circle_to_cut: dimension mismatch");
  return to_cut(pull_back_circle(normal, map));
}

void SeparatorWorkspace::mark(std::span<const std::uint32_t> subset) {
  if (++epoch_ == 0) {
    std::fill(mark_.begin(), mark_.end(), 0);
    epoch_ = 1;
  }
  for (std::uint32_t v : subset) mark_[v] = epoch_;
}

namespace {

constexpr std::size_t kBruteForceMax = 8;

std::size_t count_crossing(const Mesh& mesh, std::span<const std::uint32_t> subset,
                           const SeparatorWorkspace& ws) {
  std::size_t crossing = 0;
  for (std::uint32_t u : subset) {
    if (ws.side(u) != 0) continue;
    for (const HalfEdge& h : mesh.neighbors(u))
      if (ws.member(h.to) && ws.side(h.to) == 1) ++crossing;
  }
  return crossing;
}

SeparatorResult brute_force(const Mesh& mesh, std::span<const std::uint32_t> subset,
                            const SeparatorConfig& cfg, SeparatorWorkspace& ws) {
  const std::size_t n = subset.size();
  std::uint32_t adj[kBruteForceMax] = {};
  for (std::size_t i = 0; i < n; ++i)
    for (const HalfEdge& h : mesh.neighbors(subset[i]))
      for (std::size_t j = 0; j < n; ++j)
        if (subset[j] == h.to) adj[i] |= 1U << j;
  const int inside = static_cast<int>((n + 1) / 2);
  std::uint32_t best_mask = 0;
  std::size_t best = static_cast<std::size_t>(-1);
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    if (std::popcount(mask) != inside) continue;
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1U << i)) c += static_cast<std::size_t>(std::popcount(adj[i] & ~mask));
    if (c < best) {
      best = c;
      best_mask = mask;
    }
  }
  if (static_cast<double>(best) > cfg.crossing_bound(mesh.dim(), n))
    throw RetriesExhausted("separator: no balanced cut of a small subset meets the crossing bound");
  SeparatorResult res;
  res.cut.kind = CutKind::Enumerated;
  res.side_of.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    res.side_of[i] = (best_mask & (1U << i)) ? 0 : 1;
    ws.set_side(subset[i], res.side_of[i]);
  }
  res.crossing_count = best;
  res.retries_used = 1;
  return res;
}

}  // namespace

SeparatorResult find_separator(const Mesh& mesh, std::span<const std::uint32_t> subset,
                               const SeparatorConfig& cfg, SeparatorWorkspace& ws) {
  const std::size_t n = subset.size();
  const int d = mesh.dim();
  if (n < 2) throw std::invalid_argument("find_separator: need at least two vertices");
  cfg.validate(d);
  ws.mark(subset);
  if (n <= kBruteForceMax) return brute_force(mesh, subset, cfg, ws);

  const double max_side = cfg.beta(d) * static_cast<double>(n);
  const double bound = cfg.crossing_bound(d, n);

  // Similarity normalization: centroid at the origin, unit RMS radius.
  std::vector<double> mean(d, 0.0);
  for (std::uint32_t v : subset) {
    auto x = mesh.coords(v);
    for (int c = 0; c < d; ++c) mean[c] += x[c];
  }
  for (double& c : mean) c /= static_cast<double>(n);
  double scale = 0.0;
  for (std::uint32_t v : subset) {
    auto x = mesh.coords(v);
    for (int c = 0; c < d; ++c) scale += (x[c] - mean[c]) * (x[c] - mean[c]);
  }
  scale = std::sqrt(scale / static_cast<double>(n));
  if (!(scale > 0.0)) scale = 1.0;

  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  const std::size_t m = std::min<std::size_t>(static_cast<std::size_t>(cfg.sample_size), n);
  std::vector<double> xhat(d);
  std::vector<double> normal(d + 1);

  for (int trial = 1; trial <= cfg.max_retries; ++trial) {
    Rng rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(trial)));
    for (std::size_t i = 0; i < m && m < n; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, n - 1);
      std::swap(idx[i], idx[pick(rng)]);
    }
    PointCloud sample;
    sample.dim = d + 1;
    sample.data.reserve(m * (d + 1));
    for (std::size_t i = 0; i < m; ++i) {
      auto x = mesh.coords(subset[idx[i]]);
      for (int c = 0; c < d; ++c) xhat[c] = (x[c] - mean[c]) / scale;
      sample.push_back(stereo_project(xhat));
    }
    std::vector<double> center = approx_centerpoint(sample, rng());
    const double r = std::sqrt(dot(center, center));
    if (!(r < 1.0 - 1e-9)) {
      const double shrink = (1.0 - 1e-9) / std::max(r, 1e-300);
      for (double& c : center) c *= shrink;
    }
    const ConformalMap map = conformal_map(center);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (double& c : normal) c = gauss(rng);
    if (dot(normal, normal) == 0.0) continue;
    const SeparatorCut local = to_cut(pull_back_circle(normal, map));

    std::size_t inside = 0;
    for (std::uint32_t v : subset) {
      auto x = mesh.coords(v);
      for (int c = 0; c < d; ++c) xhat[c] = (x[c] - mean[c]) / scale;
      const std::uint8_t s = local.contains(xhat) ? 0 : 1;
      ws.set_side(v, s);
      if (s == 0) ++inside;
    }
    if (inside == 0 || inside == n) continue;
    if (static_cast<double>(inside) > max_side || static_cast<double>(n - inside) > max_side) continue;
    const std::size_t crossing = count_crossing(mesh, subset, ws);
    if (static_cast<double>(crossing) > bound) continue;

    SeparatorResult res;
    res.cut = local;
    if (local.kind == CutKind::Sphere) {
      for (int c = 0; c < d; ++c) res.cut.center[c] = mean[c] + scale * local.center[c];
      res.cut.radius = scale * local.radius;
    } else {
      res.cut.offset = local.offset * scale - dot(local.normal, mean);
    }
    res.side_of.resize(n);
    for (std::size_t i = 0; i < n; ++i) res.side_of[i] = ws.side(subset[i]);
    res.crossing_count = crossing;
    res.retries_used = trial;
    return res;
  }
  throw RetriesExhausted("separator: no acceptable cut after " + std::to_string(cfg.max_retries) + " trials");
}

SeparatorResult find_separator(const Mesh& mesh, std::span<const std::uint32_t> subset,
                               const SeparatorConfig& cfg) {
  SeparatorWorkspace ws(mesh.num_vertices());
  return find_separator(mesh, subset, cfg, ws);
}

}  // namespace comesh
