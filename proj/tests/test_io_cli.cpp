// Copyright 2026 The packmap Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "packmap/cli.hpp"
#include "packmap/error.hpp"
#include "packmap/io.hpp"

using namespace packmap;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("packmap_cli_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)) +
            "_" + std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return (path / name).string();
  }
  std::string read(const std::string& name) const {
    std::ifstream in(path / name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
};

int run_cli(std::vector<std::string> args, std::string* out_text = nullptr) {
  args.insert(args.begin(), "packmap");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int rc = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  return rc;
}

ErrorKind parse_kind(const std::string& text) {
  std::istringstream in(text);
  try {
    parse_distance_matrix_json(in);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::kUnknownCommand;
}

}  // namespace

TEST_CASE("matrix JSON parsing") {
  std::istringstream ok(R"({"n": 2, "dist": [[0, 1], [1, 0]], "labels": ["a", "b"]})");
  const auto space = parse_distance_matrix_json(ok);
  CHECK(space.size() == 2);
  CHECK(space.labels() == std::vector<std::string>{"a", "b"});
  CHECK(parse_kind("{\"n\": 2, \"dist\": [[0, 1], [1, 0]") == ErrorKind::kParseError);
  CHECK(parse_kind(R"({"n": 3, "dist": [[0, 1], [1, 0]]})") == ErrorKind::kParseError);
  CHECK(parse_kind(R"({"n": 2, "dist": [[0, "x"], [1, 0]]})") == ErrorKind::kParseError);
  CHECK(parse_kind(R"({"n": 2, "dist": [[0, 1], [2, 0]]})") ==
        ErrorKind::kAsymmetricMatrix);
}

TEST_CASE("CSV parsing") {
  std::istringstream cloud("x,y\n0,0\n# comment\n3,4\n");
  const auto pts = parse_point_cloud_csv(cloud);
  CHECK(pts.size() == 2);
  std::istringstream bad("0,0\n1\n");
  try {
    parse_point_cloud_csv(bad);
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kParseError);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  std::istringstream values("index,value\n0,0.5\n2,1e-3\n");
  const auto rows = parse_values_csv(values);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].index == 2);
  CHECK(rows[1].values[0] == 1e-3);
  CHECK(parse_index_list("1, 2,5") == std::vector<Index>{1, 2, 5});
  CHECK_THROWS_AS(parse_index_list("1,x"), Error);
}

TEST_CASE("format_json uses 17 significant digits and stable keys") {
  nlohmann::ordered_json j;
  j["b"] = 0.1;
  j["a"] = std::vector<int>{1, 2};
  j["c"] = std::numeric_limits<double>::infinity();
  const std::string text = cli::format_json(j);
  CHECK(text.find("0.10000000000000001") != std::string::npos);
  CHECK(text.find("\"b\"") < text.find("\"a\""));
  CHECK(text.find("null") != std::string::npos);
  CHECK(nlohmann::json::parse(text)["b"].get<double>() == 0.1);
}

TEST_CASE("sha256 of a known string") {
  TempDir dir;
  const auto path = dir.write("abc.txt", "abc");
  CHECK(cli::sha256_file(path) ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("validate and pack commands") {
  TempDir dir;
  const auto m = dir.write("two.json", R"({"n": 2, "dist": [[0, 1], [1, 0]]})");
  const auto out = dir.path.string();
  CHECK(run_cli({"validate", "--input", m, "--out", out}) == 0);
  const auto v = nlohmann::json::parse(dir.read("validate.json"));
  CHECK(v["result"]["valid"] == true);
  CHECK(v["inputs"]["input"]["sha256"].get<std::string>().size() == 64);

  CHECK(run_cli({"pack", "--input", m, "--s", "1", "--delta", "0.6", "--out", out}) == 0);
  const auto p = nlohmann::json::parse(dir.read("pack.json"));
  CHECK(p["result"]["value"].get<double>() == doctest::Approx(1.2));
  CHECK(p["result"]["exact"] == true);
  const std::string first = dir.read("pack.json");
  CHECK(run_cli({"pack", "--input", m, "--s", "1", "--delta", "0.6", "--out", out}) == 0);
  CHECK(dir.read("pack.json") == first);
}

TEST_CASE("exit codes") {
  TempDir dir;
  const auto out = dir.path.string();
  const auto m = dir.write("tri.json", R"({"n": 3, "dist": [[0,1,3],[1,0,1],[3,1,0]]})");
  CHECK(run_cli({"validate", "--input", m, "--out", out}) == 1);
  const auto v = nlohmann::json::parse(dir.read("validate.json"));
  CHECK(v["error"]["kind"] == "TriangleViolation");
  CHECK(v["error"]["witness"] == std::vector<int>{0, 1, 2});

  const auto line = dir.write("line.json",
                              R"({"n": 3, "dist": [[0,0.5,1],[0.5,0,0.5],[1,0.5,0]]})");
  const auto vals = dir.write("f.csv", "0,0\n2,1\n");
  CHECK(run_cli({"extend", "--input", line, "--values", vals, "--subset", "0,7",
                 "--out", out}) == 2);
  const auto e = nlohmann::json::parse(dir.read("extend.json"));
  CHECK(e["error"]["kind"] == "ParameterOutOfRange");
  CHECK(run_cli({"frobnicate", "--input", line}) == 2);
  CHECK(run_cli({"pack", "--input", line, "--s", "-1", "--delta", "1", "--out", out}) == 2);
  CHECK(run_cli({"cubemap", "--input", line, "--dim", "4", "--out", out}) == 2);
  CHECK(run_cli({"ultra", "--input", line, "--distortion", "0.5", "--out", out}) == 2);
  CHECK(run_cli({"dim", "--input", dir.path.string() + "/missing.json", "--out", out}) == 2);
}

TEST_CASE("extend then verify round trip") {
  TempDir dir;
  const auto out = dir.path.string();
  const auto line = dir.write("line.json",
                              R"({"n": 3, "dist": [[0,0.5,1],[0.5,0,0.5],[1,0.5,0]]})");
  const auto vals = dir.write("f.csv", "0,0\n2,1\n");
  CHECK(run_cli({"extend", "--input", line, "--values", vals, "--out", out}) == 0);
  const auto e = nlohmann::json::parse(dir.read("extend.json"));
  CHECK(e["result"]["fstar"][1].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(e["result"]["verification"]["passed"] == true);
  CHECK(run_cli({"verify", "--input", line, "--values", vals, "--extension",
                 (dir.path / "fstar.csv").string(), "--out", out}) == 0);
  const auto broken = dir.write("bad.csv", "0,0\n1,0.99\n2,0.1\n");
  CHECK(run_cli({"verify", "--input", line, "--values", vals, "--extension", broken,
                 "--out", out}) == 1);
  CHECK(run_cli({"extend", "--input", line, "--values", vals, "--unbounded", "--out",
                 out}) == 0);
}

TEST_CASE("remaining commands run") {
  TempDir dir;
  const auto out = dir.path.string();
  std::string cloud;
  for (int i = 0; i <= 32; ++i) cloud += std::to_string(i / 32.0) + "\n";
  const auto c = dir.write("grid.csv", cloud);
  CHECK(run_cli({"dim", "--input", c, "--format", "cloud", "--n-min", "1", "--n-max",
                 "4", "--out", out}) == 0);
  CHECK(fs::exists(dir.path / "dim_profile.csv"));
  std::string values;
  for (int i = 0; i <= 32; ++i) values += std::to_string(i) + "," + std::to_string(i / 32.0) + "\n";
  const auto f = dir.write("f.csv", values);
  CHECK(run_cli({"lip", "--input", c, "--format", "cloud", "--values", f, "--bound", "2.5",
                 "--out", out}) == 0);
  const auto lip = nlohmann::json::parse(dir.read("lip.json"));
  CHECK(lip["result"]["lower_with_constant"] == true);
  const auto u = dir.write("u.json",
                           R"({"n": 4, "dist": [[0,1,3,3],[1,0,3,3],[3,3,0,1],[3,3,1,0]]})");
  CHECK(run_cli({"order", "--input", u, "--out", out}) == 0);
  CHECK(nlohmann::json::parse(dir.read("order.json"))["result"]["c"] == 1.0);
  CHECK(run_cli({"ultra", "--input", u, "--distortion", "1", "--n-max", "4", "--out", out}) == 0);
  CHECK(run_cli({"cubemap", "--input", u, "--order-k", "1", "--out", out}) == 0);
  const auto cm = nlohmann::json::parse(dir.read("cubemap.json"));
  CHECK(cm["result"]["covered"] == true);
  CHECK(fs::exists(dir.path / "mapped.csv"));
  CHECK(fs::exists(dir.path / "g_values.csv"));
}
