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

#include "comesh/mesh_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string_view>
#include <utility>

#include "comesh/error.hpp"

namespace comesh {

namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  /// Next line split on spaces; false at end of input.
  bool next(std::vector<std::string_view>& tokens) {
    if (!std::getline(in_, line_)) return false;
    ++number_;
    if (!line_.empty() && line_.back() == '\r') line_.pop_back();
    tokens.clear();
    std::size_t i = 0;
    while (i < line_.size()) {
      while (i < line_.size() && line_[i] == ' ') ++i;
      std::size_t j = i;
      while (j < line_.size() && line_[j] != ' ') ++j;
      if (j > i) tokens.emplace_back(line_.data() + i, j - i);
      i = j;
    }
    return true;
  }
  std::size_t line() const noexcept { return number_; }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(number_, what); }
  [[noreturn]] void fail_eof(const std::string& what) const { throw ParseError(number_ + 1, what); }

  std::uint64_t uint(std::string_view t, const char* what) const {
    std::uint64_t x = 0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), x);
    if (ec != std::errc{} || p != t.data() + t.size()) fail(std::string("bad ") + what + " '" + std::string(t) + "'");
    return x;
  }
  double real(std::string_view t, const char* what) const {
    double x = 0.0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), x);
    if (ec != std::errc{} || p != t.data() + t.size()) fail(std::string("bad ") + what + " '" + std::string(t) + "'");
    return x;
  }

 private:
  std::istream& in_;
  std::string line_;
  std::size_t number_ = 0;
};

std::string real_str(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for reading");
  return f;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  return f;
}

void expect_end(LineReader& r, std::vector<std::string_view>& tok) {
  while (r.next(tok))
    if (!tok.empty()) r.fail("unexpected trailing content");
}

}  // namespace

Mesh parse_mesh(std::istream& in) {
  LineReader r(in);
  std::vector<std::string_view> tok;
  if (!r.next(tok) || tok.size() != 5 || tok[0] != "comesh" || tok[1] != "1") r.fail("malformed header");
  const auto d = r.uint(tok[2], "dimension");
  const auto nv = r.uint(tok[3], "vertex count");
  const auto ne = r.uint(tok[4], "edge count");
  if (d < 1 || d > 16) r.fail("unsupported dimension");

  std::vector<double> coords(nv * d);
  std::vector<double> weights(nv);
  std::vector<char> seen(nv, 0);
  for (std::uint64_t i = 0; i < nv; ++i) {
    if (!r.next(tok)) r.fail_eof("missing vertex line");
    if (tok.size() != d + 3 || tok[0] != "v") r.fail("malformed vertex line");
    const auto id = r.uint(tok[1], "vertex id");
    if (id >= nv) r.fail("vertex id out of range");
    if (seen[id]) r.fail("duplicate vertex id");
    seen[id] = 1;
    for (std::uint64_t c = 0; c < d; ++c) {
      const double x = r.real(tok[2 + c], "coordinate");
      if (!std::isfinite(x)) r.fail("non-finite coordinate");
      coords[id * d + c] = x;
    }
    weights[id] = r.real(tok[2 + d], "vertex weight");
  }
  std::vector<Edge> edges;
  edges.reserve(ne);
  std::set<std::pair<std::uint64_t, std::uint64_t>> pairs;
  for (std::uint64_t i = 0; i < ne; ++i) {
    if (!r.next(tok)) r.fail_eof("missing edge line");
    if (tok.size() != 4 || tok[0] != "e") r.fail("malformed edge line");
    const auto u = r.uint(tok[1], "endpoint");
    const auto v = r.uint(tok[2], "endpoint");
    const double w = r.real(tok[3], "edge weight");
    if (u >= nv || v >= nv) r.fail("edge endpoint out of range");
    if (u == v) r.fail("self-loop");
    if (!(w > 0.0) || !std::isfinite(w)) r.fail("edge weight must be positive");
    if (!pairs.emplace(std::min(u, v), std::max(u, v)).second) r.fail("duplicate edge");
    edges.push_back({static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v), w});
  }
  expect_end(r, tok);
  return Mesh::from_edges(static_cast<int>(d), std::move(coords), std::move(weights), edges);
}

Mesh parse_mesh_file(const std::string& path) {
  auto f = open_in(path);
  return parse_mesh(f);
}

void emit_mesh(std::ostream& out, const Mesh& mesh) {
  const auto edges = mesh.edge_list();
  out << "comesh 1 " << mesh.dim() << ' ' << mesh.num_vertices() << ' ' << edges.size() << '\n';
  for (std::uint32_t v = 0; v < mesh.num_vertices(); ++v) {
    out << "v " << v;
    for (double c : mesh.coords(v)) out << ' ' << real_str(c);
    out << ' ' << real_str(mesh.weight(v)) << '\n';
  }
  for (const Edge& e : edges) out << "e " << e.u << ' ' << e.v << ' ' << real_str(e.weight) << '\n';
}

void emit_mesh_file(const Mesh& mesh, const std::string& path) {
  auto f = open_out(path);
  emit_mesh(f, mesh);
}

LayoutPermutation parse_layout(std::istream& in) {
  LineReader r(in);
  std::vector<std::string_view> tok;
  if (!r.next(tok) || tok.size() != 3 || tok[0] != "colayout" || tok[1] != "1") r.fail("malformed header");
  const auto n = r.uint(tok[2], "vertex count");
  std::vector<std::uint32_t> pos(n, 0);
  std::vector<char> seen_old(n, 0), seen_new(n, 0);
  for (std::uint64_t i = 0; i < n; ++i) {
    if (!r.next(tok)) r.fail_eof("missing layout line");
    if (tok.size() != 3 || tok[0] != "l") r.fail("malformed layout line");
    const auto o = r.uint(tok[1], "vertex id");
    const auto p = r.uint(tok[2], "position");
    if (o >= n || p >= n) r.fail("layout entry out of range");
    if (seen_old[o] || seen_new[p]) r.fail("layout is not a bijection");
    seen_old[o] = seen_new[p] = 1;
    pos[o] = static_cast<std::uint32_t>(p);
  }
  expect_end(r, tok);
  return LayoutPermutation(std::move(pos));
}

LayoutPermutation parse_layout_file(const std::string& path) {
  auto f = open_in(path);
  return parse_layout(f);
}

void emit_layout(std::ostream& out, const LayoutPermutation& perm) {
  out << "colayout 1 " << perm.size() << '\n';
  for (std::uint32_t v = 0; v < perm.size(); ++v) out << "l " << v << ' ' << perm[v] << '\n';
}

void emit_layout_file(const LayoutPermutation& perm, const std::string& path) {
  auto f = open_out(path);
  emit_layout(f, perm);
}

void emit_tree(std::ostream& out, const DecompTree& tree) {
  for (std::uint32_t v : tree.leaf_array) out << "t " << v << ' ' << tree.vertex_id[v].to_token() << '\n';
  for (std::size_t e = 0; e < tree.edges.size(); ++e)
    if (tree.edge_owner[e])
      out << "o " << tree.edges[e].u << ' ' << tree.edges[e].v << ' ' << tree.edge_owner[e]->to_token() << '\n';
}

void emit_relax_tree(std::ostream& out, const RelaxTree& tree) {
  for (const RelaxLeaf& l : tree.leaves)
    for (std::size_t i = l.begin; i < l.end; ++i) out << "t " << tree.leaf_array[i] << ' ' << l.id.to_token() << '\n';
  for (const StampedEdge& e : tree.owned_edges) out << "o " << e.u << ' ' << e.v << ' ' << e.owner.to_token() << '\n';
  for (const UpperLeaf& u : tree.upper_leaves) out << "r " << u.id.to_token() << ' ' << (u.refined ? 1 : 0) << '\n';
}

DecompTree parse_tree(std::istream& in, const Mesh& mesh) {
  DecompTree t = make_tree_skeleton(mesh);
  t.leaf_array.clear();
  EdgeTable table(mesh);
  LineReader r(in);
  std::vector<std::string_view> tok;
  auto bits = [&](std::string_view s) {
    try {
      return BitId::from_string(s);
    } catch (const std::exception& e) {
      r.fail(e.what());
    }
  };
  while (r.next(tok)) {
    if (tok.empty()) r.fail("empty line");
    if (tok[0] == "t") {
      if (tok.size() != 3) r.fail("malformed vertex line");
      const auto v = r.uint(tok[1], "vertex id");
      if (v >= mesh.num_vertices()) r.fail("vertex id out of range");
      t.vertex_id[v] = bits(tok[2]);
      t.leaf_array.push_back(static_cast<std::uint32_t>(v));
    } else if (tok[0] == "o") {
      if (tok.size() != 4) r.fail("malformed owner line");
      const auto u = r.uint(tok[1], "vertex id");
      const auto v = r.uint(tok[2], "vertex id");
      if (u >= mesh.num_vertices() || v >= mesh.num_vertices()) r.fail("vertex id out of range");
      auto e = table.find(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
      if (!e) r.fail("owner line names an edge that is not in the mesh");
      t.edge_owner[*e] = bits(tok[3]);
    } else if (tok[0] == "r") {
      if (tok.size() != 3 || (tok[2] != "0" && tok[2] != "1")) r.fail("malformed refinement line");
      bits(tok[1]);
    } else {
      r.fail("unknown record '" + std::string(tok[0]) + "'");
    }
  }
  return t;
}

DecompTree parse_tree_file(const std::string& path, const Mesh& mesh) {
  auto f = open_in(path);
  return parse_tree(f, mesh);
}

void emit_parts(std::ostream& out, const std::vector<std::vector<std::uint32_t>>& parts) {
  for (std::size_t j = 0; j < parts.size(); ++j)
    for (std::uint32_t v : parts[j]) out << "p " << v << ' ' << j << '\n';
}

}  // namespace comesh
