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

#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <tuple>

#include "comesh/generators.hpp"
#include "comesh/mesh.hpp"
#include "test_support.hpp"

namespace comesh {
namespace {

Mesh triangle() {
  const std::vector<Edge> edges{{0, 1, 1.0}, {1, 2, 1.0}, {2, 0, 1.0}};
  return Mesh::from_edges(2, {0, 0, 1, 0, 0, 1}, {1, 1, 1}, edges);
}

int brute_max_degree(const Mesh& m) {
  int best = 0;
  for (std::uint32_t v = 0; v < m.num_vertices(); ++v) {
    std::set<std::uint32_t> nb;
    for (const HalfEdge& h : m.neighbors(v)) nb.insert(h.to);
    best = std::max(best, static_cast<int>(nb.size()));
  }
  return best;
}

TEST(ValidateMesh, TriangleIsValidWithDegreeTwo) {
  const auto r = validate_mesh(triangle());
  EXPECT_TRUE(r.valid);
  EXPECT_EQ(r.max_degree, 2);
  EXPECT_EQ(r.degree_bound, 2);
}

TEST(ValidateMesh, OneSidedEdgeIsAsymmetric) {
  std::vector<std::vector<HalfEdge>> adj(3);
  adj[0].push_back({1, 1.0});
  adj[1].push_back({2, 1.0});
  adj[2].push_back({1, 1.0});
  const Mesh m(2, {0, 0, 1, 0, 0, 1}, {1, 1, 1}, adj);
  const auto r = validate_mesh(m);
  EXPECT_FALSE(r.valid);
  EXPECT_GE(r.asymmetric, 1u);
}

TEST(ValidateMesh, ReportsSelfLoopsDuplicatesAndBadWeights) {
  std::vector<std::vector<HalfEdge>> adj(2);
  adj[0] = {{0, 1.0}, {1, 1.0}, {1, 1.0}};
  adj[1] = {{0, 1.0}, {0, 1.0}};
  const auto r = validate_mesh(Mesh(2, {0, 0, 1, 0}, {1, 1}, adj));
  EXPECT_FALSE(r.valid);
  EXPECT_GE(r.self_loops, 1u);
  EXPECT_GE(r.duplicates, 1u);

  const std::vector<Edge> neg{{0, 1, -1.0}};
  EXPECT_GE(validate_mesh(Mesh::from_edges(2, {0, 0, 1, 0}, {1, 1}, neg)).bad_weights, 1u);

  const std::vector<Edge> ok{{0, 1, 1.0}};
  const auto nf = validate_mesh(Mesh::from_edges(2, {0, NAN, 1, 0}, {1, 1}, ok));
  EXPECT_FALSE(nf.valid);
  EXPECT_GE(nf.nonfinite_coords, 1u);
}

TEST(ValidateMesh, DeclaredDegreeBoundIsEnforced) {
  const std::vector<Edge> edges{{0, 1, 1.0}, {0, 2, 1.0}};
  const auto r = validate_mesh(Mesh::from_edges(2, {0, 0, 1, 0, 0, 1}, {1, 1, 1}, edges, 1));
  EXPECT_FALSE(r.valid);
  EXPECT_GE(r.degree_violations, 1u);
}

TEST(Grid2d, Grid64IsValidWithDeclaredBoundEight) {
  const Mesh m = gen_grid2d(64);
  const auto r = validate_mesh(m);
  EXPECT_TRUE(r.valid);
  EXPECT_EQ(r.degree_bound, 8);
  EXPECT_LE(brute_max_degree(m), 8);
  EXPECT_EQ(r.max_degree, brute_max_degree(m));
}

TEST(Grid2d, SmallCounts) {
  const Mesh m2 = gen_grid2d(2);
  EXPECT_EQ(m2.num_vertices(), 4u);
  EXPECT_EQ(m2.num_edges(), 5u);
  for (int n = 2; n <= 7; ++n) {
    const Mesh m = gen_grid2d(n);
    std::set<std::pair<std::uint32_t, std::uint32_t>> from_triangles;
    for (const auto& t : grid2d_triangles(n))
      for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) from_triangles.emplace(std::min(t[a], t[b]), std::max(t[a], t[b]));
    const std::size_t closed = 2 * n * (n - 1) + (n - 1) * (n - 1);
    EXPECT_EQ(m.num_edges(), closed) << n;
    EXPECT_EQ(from_triangles.size(), closed) << n;
    EXPECT_EQ(testing::sorted_pairs(m.edge_list()),
              (std::vector<std::pair<std::uint32_t, std::uint32_t>>(from_triangles.begin(), from_triangles.end())));
  }
}

std::vector<double> triangle_points(const Mesh& m, const std::array<std::uint32_t, 3>& t) {
  std::vector<double> p;
  for (auto v : t)
    for (double c : m.coords(v)) p.push_back(c);
  return p;
}

TEST(Grid2d, TwoByTwoTrianglesAreCongruent) {
  const Mesh m = gen_grid2d(2);
  const auto tris = grid2d_triangles(2);
  ASSERT_EQ(tris.size(), 2u);
  const auto a = simplex_quality(triangle_points(m, tris[0]), 2);
  const auto b = simplex_quality(triangle_points(m, tris[1]), 2);
  EXPECT_NEAR(a.aspect, b.aspect, 1e-12);
  EXPECT_NEAR(a.aspect, std::sqrt(2.0) / (2.0 - std::sqrt(2.0)), 1e-12);
}

TEST(Grid2d, AspectRatiosStayBounded) {
  for (double jitter : {0.0, 0.15, 0.2999}) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const Mesh m = gen_grid2d(20, jitter, seed);
      ASSERT_TRUE(validate_mesh(m).valid);
      double worst = 0.0;
      for (const auto& t : grid2d_triangles(20)) worst = std::max(worst, simplex_quality(triangle_points(m, t), 2).aspect);
      EXPECT_LE(worst, jitter == 0.0 ? 4.0 : 10.0) << jitter;
      if (jitter == 0.0) break;
    }
  }
}

TEST(Grid2d, DeterministicAndSeedSensitive) {
  EXPECT_EQ(gen_grid2d(9, 0.2, 5), gen_grid2d(9, 0.2, 5));
  EXPECT_FALSE(gen_grid2d(9, 0.2, 5) == gen_grid2d(9, 0.2, 6));
}

TEST(Grid2d, RejectsBadArguments) {
  EXPECT_THROW(gen_grid2d(1), std::invalid_argument);
  EXPECT_THROW(gen_grid2d(4, 0.3), std::invalid_argument);
  EXPECT_THROW(gen_grid2d(4, -0.1), std::invalid_argument);
}

TEST(Grid2d, WeightsAreIndexPlusOne) {
  const Mesh m = gen_grid2d(5);
  for (std::uint32_t v = 0; v < m.num_vertices(); ++v) EXPECT_EQ(m.weight(v), v + 1.0);
}

TEST(Grid3d, TwoCubeEdgesMatchKuhnEnumeration) {
  const Mesh m = gen_grid3d(2);
  ASSERT_EQ(m.num_vertices(), 8u);
  auto id = [](int x, int y, int z) { return static_cast<std::uint32_t>((z * 2 + y) * 2 + x); };
  std::set<std::pair<std::uint32_t, std::uint32_t>> expect;
  std::array<int, 3> axes{0, 1, 2};
  do {
    std::array<int, 3> p{0, 0, 0};
    std::vector<std::uint32_t> path{id(0, 0, 0)};
    for (int a : axes) {
      ++p[a];
      path.push_back(id(p[0], p[1], p[2]));
    }
    for (std::size_t i = 0; i < path.size(); ++i)
      for (std::size_t j = i + 1; j < path.size(); ++j)
        expect.emplace(std::min(path[i], path[j]), std::max(path[i], path[j]));
  } while (std::next_permutation(axes.begin(), axes.end()));
  EXPECT_EQ(testing::sorted_pairs(m.edge_list()),
            (std::vector<std::pair<std::uint32_t, std::uint32_t>>(expect.begin(), expect.end())));
  EXPECT_TRUE(expect.count({id(0, 0, 0), id(1, 1, 1)}));
  EXPECT_EQ(grid3d_tetrahedra(2).size(), 6u);
}

TEST(Grid3d, DegreeBoundAndValidity) {
  const Mesh m = gen_grid3d(3);
  const auto r = validate_mesh(m);
  EXPECT_TRUE(r.valid);
  EXPECT_EQ(r.degree_bound, 26);
  EXPECT_LE(brute_max_degree(m), 26);
  EXPECT_THROW(gen_grid3d(1), std::invalid_argument);
}

TEST(Grid3d, TetrahedraAreWellShaped) {
  const Mesh m = gen_grid3d(3);
  double worst = 0.0;
  for (const auto& t : grid3d_tetrahedra(3)) {
    std::vector<double> p;
    for (auto v : t)
      for (double c : m.coords(v)) p.push_back(c);
    const auto q = simplex_quality(p, 3);
    EXPECT_GE(q.aspect, 1.0);
    worst = std::max(worst, q.aspect);
  }
  EXPECT_LT(worst, 10.0);
}

TEST(SimplexQuality, RegularSimplices) {
  const double s3 = std::sqrt(3.0);
  EXPECT_NEAR(simplex_quality(std::vector<double>{0, 0, 1, 0, 0.5, s3 / 2}, 2).aspect, 2.0, 1e-12);
  const auto tet = simplex_quality(std::vector<double>{1, 1, 1, 1, -1, -1, -1, 1, -1, -1, -1, 1}, 3);
  EXPECT_NEAR(tet.aspect, 3.0, 1e-12);
  EXPECT_NEAR(tet.circum_radius, s3, 1e-12);
}

TEST(SimplexQuality, ObtuseTriangleUsesSmallestEnclosingBall) {
  // The smallest ball around an obtuse triangle is centered on its long side.
  const auto q = simplex_quality(std::vector<double>{0, 0, 4, 0, 2, 0.5}, 2);
  EXPECT_NEAR(q.circum_radius, 2.0, 1e-12);
}

TEST(MeshSymmetry, EveryHalfEdgeHasOneTwin) {
  for (const Mesh& m : {gen_grid2d(7, 0.1, 3), gen_grid3d(3), gen_path(9)}) {
    std::multiset<std::tuple<std::uint32_t, std::uint32_t, double>> half;
    for (std::uint32_t v = 0; v < m.num_vertices(); ++v)
      for (const HalfEdge& h : m.neighbors(v)) half.emplace(v, h.to, h.weight);
    for (const auto& [u, v, w] : half) EXPECT_EQ(half.count({v, u, w}), 1u);
  }
}

TEST(EdgeTable, CanonicalOrderAndLookup) {
  const Mesh m = gen_grid2d(4);
  const EdgeTable t(m);
  ASSERT_EQ(t.size(), m.num_edges());
  for (std::size_t e = 1; e < t.size(); ++e)
    EXPECT_LT(std::make_pair(t[e - 1].u, t[e - 1].v), std::make_pair(t[e].u, t[e].v));
  for (std::uint32_t v = 0; v < m.num_vertices(); ++v)
    for (std::size_t i = 0; i < m.degree(v); ++i) {
      const Edge& e = t[t.edge_of_half(m.half_edge_begin(v) + i)];
      const std::uint32_t w = m.neighbors(v)[i].to;
      EXPECT_EQ(std::make_pair(e.u, e.v), std::make_pair(std::min(v, w), std::max(v, w)));
      EXPECT_EQ(t.find(w, v), t.edge_of_half(m.half_edge_begin(v) + i));
    }
  EXPECT_FALSE(t.find(0, 15).has_value());
}

TEST(RandomPermutation, TrivialAndDeterministic) {
  EXPECT_EQ(random_permutation_layout(gen_path(1), 9), LayoutPermutation::identity(1));
  EXPECT_EQ(random_permutation_layout(gen_grid2d(2), 42), random_permutation_layout(gen_grid2d(2), 42));
}

TEST(RandomPermutation, AllPermutationsOfFourAppearRoughlyUniformly) {
  std::map<std::vector<std::uint32_t>, int> seen;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const auto p = random_permutation_layout(4, s);
    seen[std::vector<std::uint32_t>(p.new_positions().begin(), p.new_positions().end())]++;
  }
  EXPECT_EQ(seen.size(), 24u);
  // Chi-square with 23 degrees of freedom; 0.999 quantile is about 49.7.
  double chi = 0.0;
  for (const auto& [perm, c] : seen) chi += (c - 1000.0 / 24) * (c - 1000.0 / 24) / (1000.0 / 24);
  EXPECT_LT(chi, 49.7);
}

TEST(LayoutPermutation, RejectsNonBijection) {
  EXPECT_THROW(LayoutPermutation(std::vector<std::uint32_t>{0, 0, 1}), std::invalid_argument);
  const auto p = LayoutPermutation::from_order(std::vector<std::uint32_t>{2, 0, 1});
  EXPECT_EQ(p[2], 0u);
  EXPECT_EQ(p.inverse().inverse(), p);
  EXPECT_EQ(p.order(), (std::vector<std::uint32_t>{2, 0, 1}));
}

}  // namespace
}  // namespace comesh
