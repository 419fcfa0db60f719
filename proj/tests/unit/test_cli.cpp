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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "comesh/mesh_io.hpp"
#include "comesh_cli/cli.hpp"
#include "test_support.hpp"

namespace comesh {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code = 0;
  std::string out, err;
};

Outcome run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  Outcome o;
  o.code = cli::run(args, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("comesh_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  static std::string slurp(const std::string& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  fs::path dir_;
};

TEST_F(CliTest, GenThenVerifyMesh) {
  ASSERT_EQ(run_cli({"gen", "grid2d", "--n", "8", "-o", path("g.mesh")}).code, cli::kExitOk);
  const Outcome v = run_cli({"verify", "--what", "mesh", path("g.mesh")});
  EXPECT_EQ(v.code, cli::kExitOk);
  EXPECT_NE(v.out.find("OK"), std::string::npos);
  EXPECT_EQ(parse_mesh_file(path("g.mesh")).num_vertices(), 64u);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"gen", "grid2d", "--n", "4", "--bogus"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"gen", "torus", "--n", "4"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"gen", "grid2d", "--n", "4", "--jitter", "0.5"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"simulate", "--B", "4", "--M", "4", path("missing.mesh")}).code, cli::kExitUsage);
  const Outcome help = run_cli({"--help"});
  EXPECT_EQ(help.code, cli::kExitOk);
  EXPECT_NE(help.out.find("layout"), std::string::npos);
}

TEST_F(CliTest, ForcedOrderRelabelsFourVertexExample) {
  emit_mesh_file(testing::four_vertex_example(), path("abcd.mesh"));
  const Outcome o = run_cli({"layout", "--force-order", "0,2,3,1", path("abcd.mesh"), "-o", path("abcd.layout"),
                             "--emit-mesh", path("out.mesh")});
  ASSERT_EQ(o.code, cli::kExitOk) << o.err;
  EXPECT_EQ(parse_layout_file(path("abcd.layout")), LayoutPermutation({0, 3, 1, 2}));
  const Mesh m = parse_mesh_file(path("out.mesh"));
  std::vector<std::pair<std::uint32_t, std::uint32_t>> half;
  for (std::uint32_t u = 0; u < m.num_vertices(); ++u)
    for (const HalfEdge& h : m.neighbors(u)) half.emplace_back(u, h.to);
  EXPECT_EQ(half, (std::vector<std::pair<std::uint32_t, std::uint32_t>>{
                      {0, 1}, {0, 2}, {1, 0}, {1, 2}, {1, 3}, {2, 0}, {2, 1}, {3, 1}}));
  EXPECT_EQ(run_cli({"layout", "--force-order", "0,2,2,1", path("abcd.mesh")}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"layout", "--force-order", "0,2,3,1", "--dump-tree", path("t"), path("abcd.mesh")}).code,
            cli::kExitUsage);
}

TEST_F(CliTest, SimulateRow) {
  ASSERT_EQ(run_cli({"gen", "path", "--n", "8", "-o", path("p.mesh")}).code, cli::kExitOk);
  const Outcome o = run_cli({"simulate", "--B", "2", "--M", "4", "--header", path("p.mesh")});
  ASSERT_EQ(o.code, cli::kExitOk) << o.err;
  EXPECT_EQ(o.out, "n,d,layout,B,M,transfers,scan_bound,ratio\n8,2,identity,2,4,4,5.000000,0.800000\n");
}

TEST_F(CliTest, LayoutIsDeterministicAndVerifies) {
  ASSERT_EQ(run_cli({"gen", "grid2d", "--n", "12", "--jitter", "0.2", "--seed", "3", "-o", path("g.mesh")}).code, 0);
  for (const char* algo : {"fb", "rb", "geo"}) {
    const Outcome a = run_cli({"layout", "--algo", algo, "--seed", "5", path("g.mesh"), "--dump-tree", path("t1")});
    const Outcome b = run_cli({"layout", "--algo", algo, "--seed", "5", path("g.mesh"), "--dump-tree", path("t2")});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(slurp(path("t1")), slurp(path("t2")));
    const std::string what = std::string(algo) == "geo" ? "tree" : algo;
    const Outcome v = run_cli({"verify", "--what", what, "--seed", "5", path("g.mesh"), path("t1")});
    EXPECT_EQ(v.code, cli::kExitOk) << algo << "\n" << v.out;
  }
}

TEST_F(CliTest, VerifyReportsViolations) {
  ASSERT_EQ(run_cli({"gen", "grid2d", "--n", "6", "-o", path("g.mesh")}).code, 0);
  ASSERT_EQ(run_cli({"layout", "--algo", "geo", path("g.mesh"), "--dump-tree", path("t")}).code, 0);
  // Move one owned edge to a node on the wrong side of the root.
  std::istringstream in(slurp(path("t")));
  std::ostringstream edited;
  bool changed = false;
  for (std::string line; std::getline(in, line);) {
    if (!changed && line.rfind("o ", 0) == 0) {
      const auto sp = line.rfind(' ');
      const std::string bits = line.substr(sp + 1);
      if (bits != "-") {
        line = line.substr(0, sp + 1) + (bits[0] == '0' ? "1" : "0");
        changed = true;
      }
    }
    edited << line << '\n';
  }
  ASSERT_TRUE(changed);
  std::ofstream(path("bad")) << edited.str();
  const Outcome v = run_cli({"verify", "--what", "tree", path("g.mesh"), path("bad")});
  EXPECT_EQ(v.code, cli::kExitViolation);
  EXPECT_NE(v.out.find("VIOLATION"), std::string::npos);

  std::ofstream(path("junk.mesh")) << "comesh 1 2 2 1\nv 0 0 0 1\n";
  EXPECT_EQ(run_cli({"verify", "--what", "mesh", path("junk.mesh")}).code, cli::kExitViolation);
}

TEST_F(CliTest, KwayAndStats) {
  ASSERT_EQ(run_cli({"gen", "path", "--n", "10", "-o", path("p.mesh")}).code, 0);
  const Outcome k = run_cli({"kway", "--k", "3", path("p.mesh")});
  ASSERT_EQ(k.code, 0) << k.err;
  EXPECT_EQ(std::count(k.out.begin(), k.out.end(), '\n'), 10);
  const Outcome s = run_cli({"stats", path("p.mesh")});
  EXPECT_EQ(s.out, "span,count\n1,9\n");
  const Outcome sum = run_cli({"stats", "--summary", path("p.mesh")});
  EXPECT_EQ(sum.out, "mean,median,p99,max\n1,1,1,1\n");
}

TEST_F(CliTest, SweepWritesCsv) {
  ASSERT_EQ(run_cli({"gen", "grid2d", "--n", "16", "-o", path("g.mesh")}).code, 0);
  const Outcome o = run_cli({"sweep", "--B-list", "4,16", "--M-list", "16,64", "--layouts", "fb,identity", path("g.mesh")});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(std::count(o.out.begin(), o.out.end(), '\n'), 1 + 2 * 3);
  EXPECT_EQ(o.out.rfind("n,d,layout,B,M", 0), 0u);
}

}  // namespace
}  // namespace comesh
