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

#ifndef PACKMAP_CLI_HPP_
#define PACKMAP_CLI_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace packmap::cli {

enum class Command { kValidate, kPack, kDim, kLip, kExtend, kUltra, kOrder,
                     kCubemap, kVerify };

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitInputError = 2;

struct RunConfig {
  Command command = Command::kValidate;
  std::string input;
  std::string format = "matrix";  // matrix | cloud
  double s = 1.0;
  std::optional<double> delta;
  double beta = 1.0;
  std::string subset;     // comma-separated indices
  std::string values;     // CSV path
  std::string extension;  // CSV path of f* for `verify`
  double distortion = 2.0;
  int dim = 2;
  int order_k = 8;
  std::vector<double> epsilon{0.1, 0.25, 0.5};
  int effort = 200;
  int cap = 20;
  std::uint64_t seed = 0;
  std::string out = ".";
  int n_min = 0;
  int n_max = 16;
  std::optional<double> bound;  // L for `lip`
  std::vector<double> grid;     // explicit radius grid
  bool unbounded = false;
};

std::string command_name(Command command);

// Throws packmap::Error(ParseError / UnknownCommand) on bad arguments;
// `--help` prints usage to `out` and returns std::nullopt.
std::optional<RunConfig> parse_args(int argc, const char* const* argv,
                                    std::ostream& out);

// Runs one command, writes `<out>/<command>.json` plus any CSV exports,
// echoes the report to `log`, and returns the process exit status.
int run(const RunConfig& config, std::ostream& log);

// Argument parsing and run() together, mapping every failure to an exit code.
int main_entry(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err);

// JSON text with keys in insertion order and doubles as %.17g; non-finite
// doubles become null.
std::string format_json(const nlohmann::ordered_json& value);

// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::string& path);

}  // namespace packmap::cli

#endif  // PACKMAP_CLI_HPP_
