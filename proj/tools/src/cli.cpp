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

#include "comesh_cli/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "comesh/balanced_partition.hpp"
#include "comesh/dam_sim.hpp"
#include "comesh/decomp_tree.hpp"
#include "comesh/error.hpp"
#include "comesh/generators.hpp"
#include "comesh/layout.hpp"
#include "comesh/mesh_io.hpp"
#include "comesh/relax_partition.hpp"

namespace comesh::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// "-" or empty means the given stream.
template <class F>
void write_to(const std::string& path, std::ostream& fallback, F&& emit) {
  if (path.empty() || path == "-") {
    emit(fallback);
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  emit(f);
  if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

struct SepOpts {
  std::uint64_t seed = 0;
  double epsilon = 0.2;
  double c_cross = 6.0;

  void add(CLI::App* app) {
    app->add_option("--seed", seed, "Root seed for all randomness")->capture_default_str();
    app->add_option("--epsilon", epsilon, "Separator balance slack")->capture_default_str();
    app->add_option("--c-cross", c_cross, "Separator crossing constant")->capture_default_str();
  }
  SeparatorConfig config() const {
    SeparatorConfig cfg;
    cfg.seed = seed;
    cfg.epsilon = epsilon;
    cfg.c_cross = c_cross;
    return cfg;
  }
};

// gen ----------------------------------------------------------------------

struct GenCmd {
  std::string kind;
  int n = 0;
  double jitter = 0.0;
  std::uint64_t seed = 0;
  std::string out_path;

  void attach(CLI::App& app) {
    auto* sub = app.add_subcommand("gen", "Generate a synthetic mesh");
    sub->add_option("kind", kind, "grid2d | grid3d | path")->required()->check(
        CLI::IsMember({"grid2d", "grid3d", "path"}));
    sub->add_option("--n", n, "Side length (vertex count for path)")->required()->check(CLI::PositiveNumber);
    sub->add_option("--jitter", jitter, "grid2d vertex jitter in [0, 0.3)")->capture_default_str();
    sub->add_option("--seed", seed, "Jitter seed")->capture_default_str();
    sub->add_option("-o,--output", out_path, "Mesh file (default stdout)");
  }
  int run(std::ostream& out) const {
    if (kind != "grid2d" && jitter != 0.0) throw UsageError("--jitter applies to grid2d only");
    const Mesh m = kind == "grid2d" ? gen_grid2d(n, jitter, seed) : kind == "grid3d" ? gen_grid3d(n) : gen_path(n);
    write_to(out_path, out, [&](std::ostream& s) { emit_mesh(s, m); });
    return kExitOk;
  }
};

// layout -------------------------------------------------------------------

struct LayoutCmd {
  std::string algo = "fb";
  SepOpts sep;
  std::string mesh_path;
  std::string out_path;
  std::string emit_mesh_path;
  std::string tree_path;
  std::vector<std::uint32_t> forced;

  void attach(CLI::App& app) {
    auto* sub = app.add_subcommand("layout", "Compute a cache-oblivious vertex layout");
    sub->add_option("--algo", algo, "fb | rb | geo")->check(CLI::IsMember({"fb", "rb", "geo"}))->capture_default_str();
    sep.add(sub);
    sub->add_option("mesh", mesh_path, "Input mesh file")->required();
    sub->add_option("-o,--output", out_path, "Layout file (default stdout)");
    sub->add_option("--emit-mesh", emit_mesh_path, "Also write the relabeled mesh");
    sub->add_option("--dump-tree", tree_path, "Also write the decomposition tree");
    sub->add_option("--force-order", forced, "Use this leaf order instead of building a tree (testing)")
        ->delimiter(',')->allow_extra_args(false);
  }
  int run(std::ostream& out) const {
    const Mesh mesh = parse_mesh_file(mesh_path);
    LayoutPermutation perm;
    std::optional<DecompTree> tree;
    if (!forced.empty()) {
      if (!tree_path.empty()) throw UsageError("--dump-tree needs a built tree; drop --force-order");
      if (forced.size() != mesh.num_vertices()) throw UsageError("--force-order must list every vertex once");
      perm = LayoutPermutation::from_order(forced);
    } else {
      tree = build_tree(mesh, parse_layout_algo(algo), sep.config());
      perm = leaf_order(*tree);
    }
    write_to(out_path, out, [&](std::ostream& s) { emit_layout(s, perm); });
    if (!emit_mesh_path.empty()) emit_mesh_file(relabel_mesh(mesh, perm), emit_mesh_path);
    if (tree && !tree_path.empty()) write_to(tree_path, out, [&](std::ostream& s) { emit_tree(s, *tree); });
    return kExitOk;
  }
};

// simulate / sweep ---------------------------------------------------------

MemoryImage image_for(const Mesh& mesh, const LayoutPermutation& perm) {
  return serialize_layout(relabel_mesh(mesh, perm));
}

struct SimulateCmd {
  std::size_t B = 0, M = 0;
  std::string layout_path;
  std::string mesh_path;
  std::string label;
  bool header = false;

  void attach(CLI::App& app) {
    auto* sub = app.add_subcommand("simulate", "Count block transfers of one mesh update under LRU");
    sub->add_option("--B", B, "Block size in records")->required();
    sub->add_option("--M", M, "Cache size in records")->required();
    sub->add_option("--layout", layout_path, "Layout file (default: file order)");
    sub->add_option("--label", label, "Value of the layout column");
    sub->add_flag("--header", header, "Print the CSV header first");
    sub->add_option("mesh", mesh_path, "Input mesh file")->required();
  }
  int run(std::ostream& out) const {
    const DamConfig cfg{B, M};
    cfg.validate();
    const Mesh mesh = parse_mesh_file(mesh_path);
    const auto perm =
        layout_path.empty() ? LayoutPermutation::identity(mesh.num_vertices()) : parse_layout_file(layout_path);
    if (perm.size() != mesh.num_vertices()) throw UsageError("layout size does not match the mesh");
    const MemoryImage image = image_for(mesh, perm);
    SweepRow row{mesh.num_vertices(), mesh.dim(), label, B, M, simulate_update(image, cfg)};
    if (row.layout.empty())
      row.layout = layout_path.empty() ? "identity" : std::filesystem::path(layout_path).stem().string();
    if (header) out << kSweepHeader << '\n';
    out << format_sweep_row(row) << '\n';
    return kExitOk;
  }
};

struct SweepCmd {
  std::vector<std::size_t> Bs, Ms;
  std::vector<std::string> layouts;
  SepOpts sep;
  std::string mesh_path;

  void attach(CLI::App& app) {
    auto* sub = app.add_subcommand("sweep", "Simulate the cross product of layouts, B and M");
    sub->add_option("--B-list", Bs, "Block sizes")->delimiter(',')->allow_extra_args(false)->required();
    sub->add_option("--M-list", Ms, "Cache sizes")->delimiter(',')->allow_extra_args(false)->required();
    sub->add_option("--layouts", layouts, "fb, rb, geo, identity, random, or layout files")
        ->delimiter(',')->allow_extra_args(false)
        ->required();
    sep.add(sub);
    sub->add_option("mesh", mesh_path, "Input mesh file")->required();
  }
  int run(std::ostream& out) const {
    const Mesh mesh = parse_mesh_file(mesh_path);
    const auto cfg = sep.config();
    std::vector<MemoryImage> images;
    images.reserve(layouts.size());
    for (const auto& name : layouts) {
      LayoutPermutation perm;
      if (name == "fb" || name == "rb" || name == "geo") {
        perm = leaf_order(build_tree(mesh, parse_layout_algo(name), cfg));
      } else if (name == "identity") {
        perm = LayoutPermutation::identity(mesh.num_vertices());
      } else if (name == "random") {
        perm = random_permutation_layout(mesh, cfg.seed);
      } else {
        perm = parse_layout_file(name);
        if (perm.size() != mesh.num_vertices()) throw UsageError("layout '" + name + "' does not match the mesh");
      }
      images.push_back(image_for(mesh, perm));
    }
    std::vector<SweepCase> cases;
    for (std::size_t i = 0; i < layouts.size(); ++i) {
      const auto& name = layouts[i];
      const bool builtin = name == "fb" || name == "rb" || name == "geo" || name == "identity" || name == "random";
      cases.push_back({builtin ? name : std::filesystem::path(name).stem().string(), mesh.dim(), &images[i]});
    }
    for (auto b : Bs)
      for (auto m : Ms) {
        if (b == 0 || m == 0) throw UsageError("B and M must be positive");
      }
    write_sweep_csv(out, sweep(cases, Bs, Ms));
    return kExitOk;
  }
};

// verify -------------------------------------------------------------------

template <class Audit>
void print_structure(std::ostream& out, const Audit& a) {
  out << "permutation_violations: " << a.permutation_violations << '\n'
      << "contiguity_violations: " << a.contiguity_violations << '\n'
      << "ownership_violations: " << a.ownership_violations << '\n'
      << "depth: " << a.depth << '\n'
      << "owned_edges: " << a.owned_edges << '\n';
}

struct VerifyCmd {
  std::string what;
  std::vector<std::string> files;
  SepOpts sep;
  int max_messages = 20;

  void attach(CLI::App& app) {
    auto* sub = app.add_subcommand("verify", "Audit a mesh, tree or partition; exit 1 on violation");
    sub->add_option("--what", what, "mesh | tree | fb | rb")
        ->required()
        ->check(CLI::IsMember({"mesh", "tree", "fb", "rb"}));
    sub->add_option("files", files, "mesh (mesh | tree | fb: mesh tree | rb: mesh [tree])")->required();
    sep.add(sub);
    sub->add_option("--max-messages", max_messages, "Issue lines to print")->capture_default_str();
  }

  void messages(std::ostream& out, const std::vector<std::string>& msgs) const {
    for (std::size_t i = 0; i < msgs.size() && static_cast<int>(i) < max_messages; ++i) out << "issue: " << msgs[i] << '\n';
  }

  int verdict(std::ostream& out, bool ok) const {
    out << (ok ? "OK" : "VIOLATION") << '\n';
    return ok ? kExitOk : kExitViolation;
  }

  void need(std::size_t lo, std::size_t hi) const {
    if (files.size() < lo || files.size() > hi)
      throw UsageError("verify --what " + what + " takes " + std::to_string(lo) +
                       (lo == hi ? "" : "-" + std::to_string(hi)) + " file(s)");
  }

  int run(std::ostream& out) const {
    try {
      if (what == "mesh") {
        need(1, 1);
        const auto r = validate_mesh(parse_mesh_file(files[0]));
        out << "max_degree: " << r.max_degree << '\n' << "degree_bound: " << r.degree_bound << '\n';
        messages(out, r.issues);
        return verdict(out, r.valid);
      }
      const Mesh mesh = parse_mesh_file(files[0]);
      if (what == "tree") {
        need(2, 2);
        const auto a = verify_tree_structure(parse_tree_file(files[1], mesh), mesh);
        print_structure(out, a);
        messages(out, a.messages);
        return verdict(out, a.ok());
      }
      if (what == "fb") {
        need(2, 2);
        const auto a = audit_fb_tree(parse_tree_file(files[1], mesh), mesh, sep.config());
        print_structure(out, a.structure);
        out << "max_sibling_diff: " << a.max_sibling_diff << '\n'
            << "max_outgoing_diff: " << a.max_outgoing_diff << '\n'
            << "max_crossing_ratio: " << a.max_crossing_ratio << '\n'
            << "size_violations: " << a.size_violations << '\n'
            << "outgoing_violations: " << a.outgoing_violations << '\n'
            << "crossing_violations: " << a.crossing_violations << '\n'
            << "level_violations: " << a.level_violations << '\n';
        messages(out, a.structure.messages);
        return verdict(out, a.ok());
      }
      need(1, 2);
      bool ok = true;
      if (files.size() == 2) {
        const auto s = verify_tree_structure(parse_tree_file(files[1], mesh), mesh);
        print_structure(out, s);
        messages(out, s.messages);
        ok = s.ok();
      }
      // Relax-balanced bounds are properties of the construction, so rebuild with records.
      const auto cfg = sep.config();
      std::vector<RbNodeRecord> records;
      build_rb_tree(mesh, cfg, {}, &records);
      const auto ctx = RelaxContext::for_mesh(mesh, cfg);
      const auto a = audit_rb_records(records, ctx, cfg, mesh.dim(), mesh.degree_bound());
      out << "nodes: " << records.size() << '\n'
          << "max_size_slack: " << a.max_size_slack << '\n'
          << "max_outgoing_slack: " << a.max_outgoing_slack << '\n'
          << "max_refined: " << a.max_refined << '\n'
          << "size_violations: " << a.size_violations << '\n'
          << "outgoing_violations: " << a.outgoing_violations << '\n'
          << "crossing_violations: " << a.crossing_violations << '\n'
          << "refined_violations: " << a.refined_violations << '\n'
          << "leaf_size_violations: " << a.leaf_size_violations << '\n';
      return verdict(out, ok && a.ok());
    } catch (const ParseError& e) {
      out << "parse_error: " << e.what() << '\n';
      return verdict(out, false);
    }
  }
};

// kway / stats -------------------------------------------------------------

struct KwayCmd {
  std::size_t k = 0;
  std::string method = "partial";
  SepOpts sep;
  std::string mesh_path;
  std::string out_path;

  void attach(CLI::App& app) {
    auto* sub = app.add_subcommand("kway", "Split into k contiguous leaf-order blocks");
    sub->add_option("--k", k, "Number of parts")->required()->check(CLI::PositiveNumber);
    sub->add_option("--method", method, "partial | full")
        ->check(CLI::IsMember({"partial", "full"}))
        ->capture_default_str();
    sep.add(sub);
    sub->add_option("mesh", mesh_path, "Input mesh file")->required();
    sub->add_option("-o,--output", out_path, "Parts file (default stdout)");
  }
  int run(std::ostream& out) const {
    const Mesh mesh = parse_mesh_file(mesh_path);
    if (k > mesh.num_vertices()) throw UsageError("k exceeds the vertex count");
    const auto parts =
        kway_partition(mesh, k, sep.config(), method == "full" ? KwayMethod::Full : KwayMethod::Partial);
    write_to(out_path, out, [&](std::ostream& s) { emit_parts(s, parts); });
    return kExitOk;
  }
};

struct StatsCmd {
  std::string mesh_path;
  std::string layout_path;
  bool summary = false;

  void attach(CLI::App& app) {
    auto* sub = app.add_subcommand("stats", "Edge span histogram of a layout");
    sub->add_option("mesh", mesh_path, "Input mesh file")->required();
    sub->add_option("layout", layout_path, "Layout file (default: file order)");
    sub->add_flag("--summary", summary, "Print mean, median, p99 and max instead of the histogram");
  }
  int run(std::ostream& out) const {
    const Mesh mesh = parse_mesh_file(mesh_path);
    const auto perm =
        layout_path.empty() ? LayoutPermutation::identity(mesh.num_vertices()) : parse_layout_file(layout_path);
    if (perm.size() != mesh.num_vertices()) throw UsageError("layout size does not match the mesh");
    const auto r = layout_stats(mesh, perm);
    if (summary) {
      out << "mean,median,p99,max\n" << r.mean << ',' << r.median << ',' << r.p99 << ',' << r.max << '\n';
      return kExitOk;
    }
    out << "span,count\n";
    for (std::size_t s = 0; s < r.histogram.size(); ++s)
      if (r.histogram[s] != 0) out << s << ',' << r.histogram[s] << '\n';
    return kExitOk;
  }
};

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cache-oblivious layouts for well-shaped meshes", "comesh"};
  app.require_subcommand(1);
  app.fallthrough(false);

  GenCmd gen;
  LayoutCmd layout;
  SimulateCmd simulate;
  SweepCmd sweep_cmd;
  VerifyCmd verify;
  KwayCmd kway;
  StatsCmd stats;
  gen.attach(app);
  layout.attach(app);
  simulate.attach(app);
  sweep_cmd.attach(app);
  verify.attach(app);
  kway.attach(app);
  stats.attach(app);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.front()->help());
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "comesh: " << e.what() << '\n';
    return kExitUsage;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    if (name == "gen") return gen.run(out);
    if (name == "layout") return layout.run(out);
    if (name == "simulate") return simulate.run(out);
    if (name == "sweep") return sweep_cmd.run(out);
    if (name == "verify") return verify.run(out);
    if (name == "kway") return kway.run(out);
    return stats.run(out);
  } catch (const std::exception& e) {
    err << "comesh " << name << ": " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace comesh::cli
