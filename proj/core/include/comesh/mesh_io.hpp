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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "comesh/decomp_tree.hpp"
#include "comesh/mesh.hpp"
#include "comesh/permutation.hpp"
#include "comesh/relax_partition.hpp"

namespace comesh {

// All readers throw ParseError with the offending line number.

Mesh parse_mesh(std::istream& in);
Mesh parse_mesh_file(const std::string& path);
void emit_mesh(std::ostream& out, const Mesh& mesh);
void emit_mesh_file(const Mesh& mesh, const std::string& path);

LayoutPermutation parse_layout(std::istream& in);
LayoutPermutation parse_layout_file(const std::string& path);
void emit_layout(std::ostream& out, const LayoutPermutation& perm);
void emit_layout_file(const LayoutPermutation& perm, const std::string& path);

/// `t <vertex> <bits>` in leaf order, then `o <u> <v> <bits>` per owned edge.
void emit_tree(std::ostream& out, const DecompTree& tree);
/// emit_tree-style lines for the relax tree plus `r <bits> <0|1>` per upper leaf.
void emit_relax_tree(std::ostream& out, const RelaxTree& tree);
DecompTree parse_tree(std::istream& in, const Mesh& mesh);
DecompTree parse_tree_file(const std::string& path, const Mesh& mesh);

void emit_parts(std::ostream& out, const std::vector<std::vector<std::uint32_t>>& parts);

}  // namespace comesh
