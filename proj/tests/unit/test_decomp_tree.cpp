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

#include <cmath>
#include <map>
#include <set>

#include "comesh/decomp_tree.hpp"
#include "comesh/generators.hpp"
#include "test_support.hpp"

namespace comesh {
namespace {

using testing::sample_graph;
using testing::sample_tree;
using Outside = testing::Outside;

std::vector<std::pair<std::uint32_t, std::uint32_t>> owned_by(const DecompTree& t, const char* bits) {
  const BitId id = BitId::from_string(bits);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::size_t e = 0; e < t.edges.size(); ++e)
    if (t.edge_owner[e] && *t.edge_owner[e] == id) out.emplace_back(t.edges[e].u + 1, t.edges[e].v + 1);
  return out;
}

std::vector<std::uint32_t> members(const DecompTree& t, const BitId& id) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t v : t.leaf_array)
    if (id.is_prefix_of(t.vertex_id[v])) out.push_back(v);
  return out;
}

TEST(BitId, PrefixOrderingAndTokens) {
  const BitId a = BitId::from_string("01");
  const BitId b = BitId::from_string("011");
  EXPECT_TRUE(a.is_strict_prefix_of(b));
  EXPECT_LT(a, b);
  EXPECT_LT(b, BitId::from_string("1"));
  EXPECT_EQ(BitId{}.to_token(), "-");
  EXPECT_EQ(b.parent(), a);
  EXPECT_EQ(common_prefix(b, BitId::from_string("0100")), a);
  EXPECT_THROW(BitId::from_string("012"), std::invalid_argument);
  BitId deep;
  for (std::size_t i = 0; i < BitId::kMaxBits; ++i) deep.push_back(i % 3 == 0);
  EXPECT_THROW(deep.push_back(true), std::length_error);
  EXPECT_TRUE(deep.bit(126));
}

TEST(DecompTree, SingleVertex) {
  const Mesh m = gen_path(1);
  const DecompTree t = build_decomposition_tree(m, {});
  EXPECT_EQ(t.leaf_array, std::vector<std::uint32_t>{0});
  EXPECT_TRUE(t.vertex_id[0].empty());
  EXPECT_TRUE(t.edges.empty());
  EXPECT_EQ(subtree_range(t, BitId{}), (IndexRange{0, 1}));
}

TEST(DecompTree, SampleTreeCrossingSets) {
  const Mesh g = sample_graph(Outside::None);
  const DecompTree t = sample_tree(g);
  using P = std::vector<std::pair<std::uint32_t, std::uint32_t>>;
  EXPECT_EQ(owned_by(t, "0"), (P{{1, 5}, {6, 7}}));
  EXPECT_EQ(owned_by(t, "101"), (P{{4, 8}}));
  EXPECT_EQ(owned_by(t, "00"), (P{{1, 6}}));
  std::size_t owned = 0;
  for (const auto& o : t.edge_owner) owned += o.has_value();
  EXPECT_EQ(owned, 10u);
  EXPECT_TRUE(verify_tree_structure(t, g).ok());
}

TEST(DecompTree, SampleEdgeClasses) {
  const Mesh g = sample_graph(Outside::None);
  const DecompTree t = sample_tree(g);
  const EdgeTable table(g);
  const std::size_t e16 = *table.find(0, 5);
  EXPECT_EQ(classify_edge(t, e16, BitId::from_string("0")), EdgeClass::Inner);
  EXPECT_EQ(classify_edge(t, e16, BitId::from_string("00")), EdgeClass::Crossing);
  EXPECT_EQ(classify_edge(t, e16, BitId::from_string("000")), EdgeClass::Outer);
  EXPECT_EQ(classify_edge(t, e16, BitId::from_string("1")), EdgeClass::Unrelated);
  // (1,2) is owned by the root, so at leaf 000 it leaves through every ancestor.
  EXPECT_EQ(classify_edge(t, *table.find(0, 1), BitId::from_string("000")), EdgeClass::Outgoing);
}

TEST(DecompTree, Grid16Audit) {
  const Mesh m = gen_grid2d(16);
  const SeparatorConfig cfg;
  const DecompTree t = build_decomposition_tree(m, cfg);
  const TreeAudit a = verify_tree(t, m, cfg);
  EXPECT_TRUE(a.ok()) << (a.messages.empty() ? "" : a.messages.front());
  EXPECT_EQ(a.owned_edges, m.num_edges());

  std::size_t crossing_sum = 0;
  for (const NodeStats& s : node_stats(t, m)) {
    crossing_sum += s.crossing;
    if (!s.leaf) {
      const double n = static_cast<double>(s.size());
      EXPECT_LE(static_cast<double>(std::max(s.left_size, s.right_size)), std::ceil(0.8 * n - 1e-9));
    }
  }
  EXPECT_EQ(crossing_sum, m.num_edges());
  EXPECT_LE(static_cast<double>(t.depth()), std::log(256.0) / std::log(1.25) + 2);
}

TEST(DecompTree, BruteForceOwnershipAndPermutation) {
  for (const Mesh& m : {gen_grid2d(13, 0.2, 9), gen_grid3d(5)}) {
    const DecompTree t = build_decomposition_tree(m, {});
    std::vector<std::uint32_t> sorted = t.leaf_array;
    std::sort(sorted.begin(), sorted.end());
    for (std::uint32_t i = 0; i < sorted.size(); ++i) ASSERT_EQ(sorted[i], i);
    // The owner of an edge is the deepest node holding both endpoints.
    for (std::size_t e = 0; e < t.edges.size(); ++e) {
      ASSERT_TRUE(t.edge_owner[e].has_value());
      EXPECT_EQ(*t.edge_owner[e], common_prefix(t.vertex_id[t.edges[e].u], t.vertex_id[t.edges[e].v]));
    }
    EXPECT_TRUE(verify_tree(t, m, {}).ok());
  }
}

TEST(DecompTree, Deterministic) {
  const Mesh m = gen_grid2d(12);
  SeparatorConfig cfg;
  cfg.seed = 17;
  const DecompTree a = build_decomposition_tree(m, cfg), b = build_decomposition_tree(m, cfg);
  EXPECT_EQ(a.leaf_array, b.leaf_array);
  EXPECT_EQ(a.vertex_id, b.vertex_id);
}

TEST(SubtreeRange, MatchesPrefixFilter) {
  const Mesh m = gen_grid2d(4);
  const DecompTree t = build_decomposition_tree(m, {});
  EXPECT_EQ(subtree_range(t, BitId{}), (IndexRange{0, 16}));
  const auto pos = t.positions();
  for (std::uint32_t v = 0; v < 16; ++v) EXPECT_EQ(subtree_range(t, t.vertex_id[v]), (IndexRange{pos[v], pos[v] + 1u}));
  for (const char* bits : {"0", "1", "10", "01", "110"}) {
    const BitId id = BitId::from_string(bits);
    std::vector<std::size_t> expect;
    for (std::size_t i = 0; i < 16; ++i)
      if (id.is_prefix_of(t.vertex_id[t.leaf_array[i]])) expect.push_back(i);
    if (expect.empty()) {
      EXPECT_THROW(subtree_range(t, id), std::out_of_range);
      continue;
    }
    const auto r = subtree_range(t, id);
    EXPECT_EQ(r.begin, expect.front());
    EXPECT_EQ(r.size(), expect.size());
    EXPECT_EQ(expect.back() - expect.front() + 1, expect.size()) << "not contiguous";
  }
  EXPECT_THROW(subtree_range(t, BitId::from_string("0000000000")), std::out_of_range);
}

TEST(ClassifyEdge, MatchesSetDefinitions) {
  const Mesh m = gen_grid2d(6, 0.2, 2);
  const DecompTree t = build_decomposition_tree(m, {});
  std::set<BitId> nodes;
  for (std::uint32_t v = 0; v < m.num_vertices(); ++v)
    for (std::size_t l = 0; l <= t.vertex_id[v].size(); ++l) nodes.insert(t.vertex_id[v].prefix(l));
  std::map<EdgeClass, std::size_t> seen;
  for (const BitId& p : nodes) {
    const auto in = members(t, p);
    const std::set<std::uint32_t> vp(in.begin(), in.end());
    std::set<std::uint32_t> vpar;
    if (!p.empty()) {
      const auto par = members(t, p.parent());
      vpar.insert(par.begin(), par.end());
    }
    std::set<std::uint32_t> c0, c1;
    for (auto v : in) {
      if (t.vertex_id[v].size() > p.size()) (t.vertex_id[v].bit(p.size()) ? c1 : c0).insert(v);
    }
    for (std::size_t e = 0; e < t.edges.size(); ++e) {
      const auto [u, v, w] = t.edges[e];
      const bool iu = vp.count(u), iv = vp.count(v);
      EdgeClass expect;
      if ((c0.count(u) && c1.count(v)) || (c1.count(u) && c0.count(v))) expect = EdgeClass::Crossing;
      else if (iu && iv) expect = EdgeClass::Inner;
      else if (iu != iv) expect = vpar.count(iu ? v : u) ? EdgeClass::Outer : EdgeClass::Outgoing;
      else expect = EdgeClass::Unrelated;
      ASSERT_EQ(classify_edge(t, e, p), expect) << p.to_token() << " edge " << u << "-" << v;
      seen[expect]++;
    }
  }
  EXPECT_EQ(seen.size(), 5u);
}

TEST(VerifyTree, DetectsFlippedBit) {
  const Mesh m = gen_grid2d(8);
  DecompTree t = build_decomposition_tree(m, {});
  EXPECT_TRUE(verify_tree_structure(t, m).ok());
  // Flip the first bit of the first leaf: it now claims the other root half
  // while sitting at the front of the array.
  const std::uint32_t v = t.leaf_array.front();
  std::string bits = t.vertex_id[v].to_string();
  bits[0] = bits[0] == '0' ? '1' : '0';
  t.vertex_id[v] = BitId::from_string(bits);
  EXPECT_GT(verify_tree_structure(t, m).contiguity_violations, 0u);
}

TEST(VerifyTree, DetectsMisplacedOwner) {
  const Mesh m = gen_grid2d(8);
  DecompTree t = build_decomposition_tree(m, {});
  std::size_t e = 0;
  while (t.edge_owner[e]->empty()) ++e;
  // Send the owner into the opposite root half: no longer an ancestor of the endpoints.
  const BitId owner = *t.edge_owner[e];
  t.edge_owner[e] = BitId{}.child(!owner.bit(0));
  EXPECT_GT(verify_tree_structure(t, m).ownership_violations, 0u);

  DecompTree missing = build_decomposition_tree(m, {});
  missing.edge_owner[3].reset();
  EXPECT_GT(verify_tree_structure(missing, m).ownership_violations, 0u);
}

TEST(VerifyTree, DetectsBrokenPermutation) {
  const Mesh m = gen_grid2d(4);
  DecompTree t = build_decomposition_tree(m, {});
  t.leaf_array[1] = t.leaf_array[0];
  EXPECT_GT(verify_tree_structure(t, m).permutation_violations, 0u);
}

}  // namespace
}  // namespace comesh
