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

#include "packmap/cli.hpp"

#include <openssl/evp.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "packmap/cubemap.hpp"
#include "packmap/error.hpp"
#include "packmap/extension.hpp"
#include "packmap/io.hpp"
#include "packmap/metric_space.hpp"
#include "packmap/oscillation.hpp"
#include "packmap/packing.hpp"
#include "packmap/ultrametric.hpp"

namespace packmap::cli {

using nlohmann::ordered_json;

namespace {

constexpr std::array<std::pair<Command, const char*>, 9> kCommands{{
    {Command::kValidate, "validate"},
    {Command::kPack, "pack"},
    {Command::kDim, "dim"},
    {Command::kLip, "lip"},
    {Command::kExtend, "extend"},
    {Command::kUltra, "ultra"},
    {Command::kOrder, "order"},
    {Command::kCubemap, "cubemap"},
    {Command::kVerify, "verify"},
}};

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool is_scalar(const ordered_json& v) {
  return !v.is_object() && !v.is_array();
}

void write_json(const ordered_json& v, std::string& out, int depth) {
  const std::string pad(2 * (depth + 1), ' ');
  const std::string close_pad(2 * depth, ' ');
  switch (v.type()) {
    case ordered_json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + ordered_json(key).dump() + ": ";
        write_json(item, out, depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case ordered_json::value_t::array: {
      if (std::all_of(v.begin(), v.end(), is_scalar)) {
        out += "[";
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (i) out += ", ";
          write_json(v[i], out, depth + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        write_json(v[i], out, depth + 1);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case ordered_json::value_t::number_float: {
      const double d = v.get<double>();
      out += std::isfinite(d) ? format_double(d) : "null";
      return;
    }
    default:
      out += v.dump();
  }
}

[[noreturn]] void out_of_range(const std::string& what) {
  throw Error(ErrorKind::kParameterOutOfRange, what);
}

void validate_parameters(const RunConfig& c) {
  if (c.input.empty()) throw Error(ErrorKind::kParseError, "--input is required");
  if (c.format != "matrix" && c.format != "cloud") {
    out_of_range("--format must be matrix or cloud");
  }
  if (!(c.s > 0.0)) out_of_range("--s must be > 0");
  if (c.delta && !(*c.delta > 0.0)) out_of_range("--delta must be > 0");
  if (!(c.beta > 0.0)) out_of_range("--beta must be > 0");
  if (!(c.distortion >= 1.0)) out_of_range("--distortion must be >= 1");
  if (c.dim != 2 && c.dim != 3) out_of_range("--dim must be 2 or 3");
  if (c.order_k < 1 || c.order_k > kMaxCurveOrder) {
    out_of_range("--order-k must be in [1, 16]");
  }
  for (double e : c.epsilon) {
    if (!(e > 0.0)) out_of_range("--epsilon values must be > 0");
  }
  for (double r : c.grid) {
    if (!(r > 0.0)) out_of_range("--grid radii must be > 0");
  }
  if (c.effort < 0) out_of_range("--effort must be >= 0");
  if (c.cap < 1 || c.cap > 30) out_of_range("--cap must be in [1, 30]");
  if (c.n_min < 0 || c.n_min >= c.n_max) {
    out_of_range("--n-min must be >= 0 and below --n-max");
  }
}

ordered_json parameters_json(const RunConfig& c) {
  ordered_json p;
  p["input"] = c.input;
  p["format"] = c.format;
  p["s"] = c.s;
  p["delta"] = c.delta ? ordered_json(*c.delta) : ordered_json(nullptr);
  p["beta"] = c.beta;
  p["subset"] = c.subset;
  p["values"] = c.values;
  p["extension"] = c.extension;
  p["distortion"] = c.distortion;
  p["dim"] = c.dim;
  p["order_k"] = c.order_k;
  p["epsilon"] = c.epsilon;
  p["effort"] = c.effort;
  p["cap"] = c.cap;
  p["seed"] = c.seed;
  p["out"] = c.out;
  p["n_min"] = c.n_min;
  p["n_max"] = c.n_max;
  p["bound"] = c.bound ? ordered_json(*c.bound) : ordered_json(nullptr);
  p["grid"] = c.grid;
  p["unbounded"] = c.unbounded;
  return p;
}

ordered_json file_entry(const std::string& path) {
  ordered_json e;
  e["path"] = path;
  try {
    e["sha256"] = sha256_file(path);
  } catch (const Error&) {
    e["sha256"] = nullptr;
  }
  return e;
}

ordered_json inputs_json(const RunConfig& c) {
  ordered_json in;
  in["input"] = file_entry(c.input);
  if (!c.values.empty()) in["values"] = file_entry(c.values);
  if (!c.extension.empty()) in["extension"] = file_entry(c.extension);
  return in;
}

FiniteMetricSpace load(const RunConfig& c) {
  return load_space(c.input, c.format == "cloud" ? InputFormat::kCloud
                                                 : InputFormat::kMatrix);
}

IndexSet subset_or_all(const RunConfig& c, const FiniteMetricSpace& space) {
  if (c.subset.empty()) return space.all_points();
  auto indices = parse_index_list(c.subset);
  for (Index i : indices) {
    if (i >= space.size()) {
      out_of_range("subset index " + std::to_string(i) + " not in [0, " +
                   std::to_string(space.size()) + ")");
    }
  }
  return make_index_set(space, std::move(indices));
}

std::ofstream open_output(const RunConfig& c, const std::string& name) {
  std::ofstream out(std::filesystem::path(c.out) / name);
  if (!out) {
    throw Error(ErrorKind::kParseError, "cannot write '" + name + "' in " + c.out);
  }
  return out;
}

ordered_json profile_json(const DimensionProfile& p) {
  ordered_json j;
  j["levels"] = p.levels;
  j["scales"] = p.scales;
  j["counts"] = p.counts;
  std::vector<bool> used(p.used.begin(), p.used.end());
  j["used"] = used;
  j["slope"] = p.slope;
  j["dim_estimate"] = p.dim_estimate;
  j["rescale_factor"] = p.rescale_factor;
  return j;
}

ordered_json tally_json(const CheckTally& t) {
  ordered_json j;
  j["checked"] = t.checked;
  j["failures"] = t.failures;
  j["worst_slack"] = t.worst_slack;
  j["witness"] = t.witness;
  j["witness_parameter"] = t.witness_parameter;
  return j;
}

ordered_json verification_json(const ExtensionVerification& v) {
  ordered_json j;
  j["passed"] = v.passed;
  j["restriction_exact"] = v.restriction_exact;
  j["oscillation_bound"] = tally_json(v.oscillation_bound);
  j["off_set_lipschitz"] = tally_json(v.off_set_lipschitz);
  j["transfer_bound"] = tally_json(v.transfer_bound);
  j["epsilons"] = v.epsilons;
  return j;
}

// f on F from the values file; F is --subset when given, else every row.
ExtensionProblem load_problem(const RunConfig& c, const FiniteMetricSpace& space) {
  if (c.values.empty()) throw Error(ErrorKind::kParseError, "--values is required");
  const auto rows = load_values(c.values);
  std::map<Index, double> by_index;
  for (const auto& row : rows) {
    if (row.values.size() != 1) {
      throw Error(ErrorKind::kParseError, "extension values need one column");
    }
    if (row.index >= space.size()) {
      out_of_range("F index " + std::to_string(row.index) + " not in [0, " +
                   std::to_string(space.size()) + ")");
    }
    by_index[row.index] = row.values.front();
  }
  std::vector<Index> subset;
  if (!c.subset.empty()) {
    subset = parse_index_list(c.subset);
  } else {
    for (const auto& [i, v] : by_index) subset.push_back(i);
  }
  std::vector<double> values;
  for (Index i : subset) {
    if (i >= space.size()) {
      out_of_range("F index " + std::to_string(i) + " not in [0, " +
                   std::to_string(space.size()) + ")");
    }
    const auto it = by_index.find(i);
    if (it == by_index.end()) {
      throw Error(ErrorKind::kMismatchedInputs,
                  "no value given for F point " + std::to_string(i));
    }
    values.push_back(it->second);
  }
  return ExtensionProblem(space, std::move(subset), std::move(values));
}

int cmd_validate(const RunConfig& c, ordered_json& result) {
  const FiniteMetricSpace space = load(c);
  result["valid"] = true;
  result["n"] = space.size();
  result["diameter"] = space.diameter();
  return kExitOk;
}

int cmd_pack(const RunConfig& c, ordered_json& result) {
  if (!c.delta) out_of_range("--delta is required for pack");
  const FiniteMetricSpace space = load(c);
  const IndexSet set = subset_or_all(c, space);
  const PremeasureResult r =
      set.size() <= static_cast<std::size_t>(c.cap)
          ? premeasure_exact(space, set, c.s, *c.delta, c.cap)
          : premeasure_heuristic(space, set, c.s, *c.delta, c.effort, c.seed);
  result["value"] = r.value;
  result["witness"] = r.witness;
  result["exact"] = r.exact;
  result["radii"] = r.witness_radii;
  std::vector<bool> limit(r.limit_radius.begin(), r.limit_radius.end());
  result["limit_radius"] = limit;
  return kExitOk;
}

int cmd_dim(const RunConfig& c, ordered_json& result) {
  const FiniteMetricSpace space = load(c);
  const IndexSet set = subset_or_all(c, space);
  const DimensionProfile p = dimension_profile(space, set, c.n_min, c.n_max);
  result = profile_json(p);
  auto csv = open_output(c, "dim_profile.csv");
  csv << "scale,count\n";
  for (std::size_t i = 0; i < p.scales.size(); ++i) {
    csv << format_double(p.scales[i]) << "," << p.counts[i] << "\n";
  }
  return kExitOk;
}

int cmd_lip(const RunConfig& c, ordered_json& result) {
  const FiniteMetricSpace space = load(c);
  if (c.values.empty()) throw Error(ErrorKind::kParseError, "--values is required");
  const auto rows = load_values(c.values);
  if (rows.size() != space.size()) {
    throw Error(ErrorKind::kMismatchedInputs, "lip needs a value row per point");
  }
  const std::size_t m = rows.front().values.size();
  std::vector<double> flat(space.size() * m);
  std::vector<bool> seen(space.size(), false);
  for (const auto& row : rows) {
    if (row.index >= space.size()) out_of_range("value index out of range");
    seen[row.index] = true;
    std::copy(row.values.begin(), row.values.end(), flat.begin() + row.index * m);
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw Error(ErrorKind::kMismatchedInputs, "lip needs a value row per point");
  }
  const SampledFunction f(space, std::move(flat), m);
  const double bound = c.bound.value_or(std::numeric_limits<double>::infinity());
  const LipschitzClassification cls = classify(f, c.beta, c.grid, bound);
  result["beta"] = c.beta;
  result["values"] = cls.values;
  result["little_at_all"] = cls.little_at_all;
  result["lower_with_constant"] = cls.lower_with_constant;
  result["bound"] = c.bound ? ordered_json(*c.bound) : ordered_json(nullptr);
  result["worst_point"] = cls.worst_point;
  result["worst_value"] = cls.worst_value;
  auto csv = open_output(c, "lip_profile.csv");
  csv << "index,r,ratio\n";
  for (Index x = 0; x < space.size(); ++x) {
    const auto grid = c.grid.empty() ? default_point_grid(space, x) : c.grid;
    for (const auto& e : oscillation_profile(f, x, grid, c.beta).entries) {
      csv << x << "," << format_double(e.r) << "," << format_double(e.ratio_beta)
          << "\n";
    }
  }
  return kExitOk;
}

void write_values_csv(const RunConfig& c, const std::string& name,
                      const std::vector<double>& values) {
  auto csv = open_output(c, name);
  csv << "index,value\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    csv << i << "," << format_double(values[i]) << "\n";
  }
}

int cmd_extend(const RunConfig& c, ordered_json& result) {
  const FiniteMetricSpace space = load(c);
  const ExtensionProblem problem = load_problem(c, space);
  const ExtensionResult ext =
      c.unbounded ? extend_unbounded(problem) : extend_bounded(problem);
  write_values_csv(c, "fstar.csv", ext.values);
  result["mode"] = c.unbounded ? "unbounded" : "bounded";
  result["subset"] = problem.subset();
  result["fstar"] = ext.values;
  if (c.unbounded) {
    bool finite = true;
    double worst = 0.0;
    for (std::size_t i = 0; i < problem.subset().size(); ++i) {
      const double want = problem.values()[i];
      const double got = ext.values[problem.subset()[i]];
      worst = std::max(worst, std::abs(got - want) / std::max(1.0, std::abs(want)));
    }
    for (double v : ext.values) finite = finite && std::isfinite(v);
    result["finite"] = finite;
    result["restriction_relative_error"] = worst;
    return finite && worst <= 1e-12 ? kExitOk : kExitVerificationFailed;
  }
  const ExtensionVerification v =
      verify_extension(problem, ext, c.grid, c.epsilon);
  result["verification"] = verification_json(v);
  return v.passed ? kExitOk : kExitVerificationFailed;
}

int cmd_verify(const RunConfig& c, ordered_json& result) {
  const FiniteMetricSpace space = load(c);
  const ExtensionProblem problem = load_problem(c, space);
  if (c.extension.empty()) {
    throw Error(ErrorKind::kParseError, "--extension is required for verify");
  }
  ExtensionResult ext;
  ext.values.assign(space.size(), 0.0);
  std::vector<bool> seen(space.size(), false);
  for (const auto& row : load_values(c.extension)) {
    if (row.index >= space.size() || row.values.size() != 1) {
      throw Error(ErrorKind::kMismatchedInputs,
                  "extension file needs 'index,value' rows for every point");
    }
    ext.values[row.index] = row.values.front();
    seen[row.index] = true;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw Error(ErrorKind::kMismatchedInputs, "extension misses some points");
  }
  const ExtensionVerification v =
      verify_extension(problem, ext, c.grid, c.epsilon);
  result = verification_json(v);
  return v.passed ? kExitOk : kExitVerificationFailed;
}

int cmd_ultra(const RunConfig& c, ordered_json& result) {
  const FiniteMetricSpace space = load(c);
  const UltraSubset u = extract_ultra_subset(space, c.distortion, c.effort,
                                             c.seed, c.n_min, c.n_max);
  result["subset"] = u.subset;
  result["size"] = u.subset.size();
  result["certified_distortion"] = u.distortion;
  result["heuristic"] = true;
  result["profile"] = u.profile_valid ? profile_json(u.profile) : ordered_json(nullptr);
  try {
    result["full_profile"] =
        profile_json(dimension_profile(space, space.all_points(), c.n_min, c.n_max));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kDegenerateScaleWindow) throw;
    result["full_profile"] = nullptr;
  }
  auto csv = open_output(c, "ultra_subset.csv");
  csv << "index\n";
  for (Index i : u.subset) csv << i << "\n";
  return u.distortion <= c.distortion ? kExitOk : kExitVerificationFailed;
}

int cmd_order(const RunConfig& c, ordered_json& result) {
  const FiniteMetricSpace space = load(c);
  const UltrametricCheck check = is_ultrametric(space);
  const UltraTree tree = subdominant_ultrametric(space);
  const MonotoneOrder order = monotone_order_from_tree(space, tree);
  result["ultrametric"] = check.ultrametric;
  result["worst_ratio"] = check.worst_ratio;
  result["worst_triple"] = check.triple;
  result["order"] = order.order;
  result["c"] = order.c;
  auto csv = open_output(c, "order.csv");
  csv << "rank,index\n";
  for (std::size_t r = 0; r < order.order.size(); ++r) {
    csv << r << "," << order.order[r] << "\n";
  }
  return is_monotone(space, order.order, order.c) ? kExitOk
                                                  : kExitVerificationFailed;
}

int cmd_cubemap(const RunConfig& c, ordered_json& result) {
  const FiniteMetricSpace space = load(c);
  std::vector<double> grid =
      c.grid.empty() ? default_radius_grid(space, space.all_points()) : c.grid;
  if (grid.empty()) grid.push_back(1.0);
  MassDistribution mu;
  bool rescaled = false;
  if (!c.values.empty()) {
    std::vector<double> w(space.size(), 0.0);
    for (const auto& row : load_values(c.values)) {
      if (row.index >= space.size() || row.values.size() != 1) {
        throw Error(ErrorKind::kMismatchedInputs, "weights need 'index,weight' rows");
      }
      w[row.index] = row.values.front();
    }
    mu = MassDistribution(std::move(w));
  } else {
    mu = frostman_rescale(space, MassDistribution::uniform(space.size()), c.s, grid)
             .rescaled;
    rescaled = true;
  }
  CubeMapOptions options;
  options.dim = c.dim;
  options.order = c.order_k;
  options.s = c.s;
  options.grid = grid;
  const CubeMapResult r = cube_map_pipeline(space, mu, options);
  write_values_csv(c, "g_values.csv", r.g_values);
  {
    auto csv = open_output(c, "mapped.csv");
    csv << "index";
    for (int i = 0; i < c.dim; ++i) csv << ",x" << (i + 1);
    csv << "\n";
    for (std::size_t v = 0; v < r.mapped.size(); ++v) {
      csv << v;
      for (double x : r.mapped[v]) csv << "," << format_double(x);
      csv << "\n";
    }
  }
  result["measure"] = rescaled ? "frostman_rescaled_uniform" : "weights_file";
  result["mass_total"] = mu.total();
  result["monotone_c"] = r.monotone.c;
  result["covered"] = r.covered;
  result["coverage_level"] = r.coverage_level;
  result["coverage_resolution"] = r.coverage_resolution;
  result["max_cell_hits"] = r.max_cell_hits;
  result["degenerate_measure"] = r.degenerate_measure;
  result["frostman_passes"] = r.frostman_passes;
  result["holder_bound"] = r.holder_bound;
  result["g_lower_holder_worst"] = r.g_lower_holder_worst;
  result["composite_lower_lipschitz_worst"] = r.composite_lower_lipschitz_worst;
  result["grid"] = r.grid;
  return kExitOk;
}

bool is_metric_error(ErrorKind k) {
  switch (k) {
    case ErrorKind::kNotSquare:
    case ErrorKind::kNonFinite:
    case ErrorKind::kAsymmetricMatrix:
    case ErrorKind::kNegativeDistance:
    case ErrorKind::kNonzeroDiagonal:
    case ErrorKind::kTriangleViolation:
    case ErrorKind::kZeroDistanceDistinctPoints:
      return true;
    default:
      return false;
  }
}

}  // namespace

std::string command_name(Command command) {
  for (const auto& [c, name] : kCommands) {
    if (c == command) return name;
  }
  return "unknown";
}

std::string format_json(const ordered_json& value) {
  std::string out;
  write_json(value, out, 0);
  out += "\n";
  return out;
}

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kParseError, "cannot open '" + path + "'");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              EVP_MD_CTX_free);
  EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
  std::array<char, 1 << 15> buf;
  while (in) {
    in.read(buf.data(), buf.size());
    EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex += kHex[digest[i] >> 4];
    hex += kHex[digest[i] & 15];
  }
  return hex;
}

std::optional<RunConfig> parse_args(int argc, const char* const* argv,
                                    std::ostream& out) {
  if (argc > 1 && argv[1][0] != '-') {
    const std::string first = argv[1];
    if (std::none_of(kCommands.begin(), kCommands.end(),
                     [&](const auto& c) { return first == c.second; })) {
      throw Error(ErrorKind::kUnknownCommand, "unknown command '" + first + "'");
    }
  }
  RunConfig config;
  CLI::App app{"packmap: packing dimension, little Lipschitz extension and "
               "cube maps on finite metric spaces"};
  app.require_subcommand(1);
  double delta = 0.0;
  double bound = 0.0;
  std::map<CLI::App*, Command> subs;
  std::vector<CLI::Option*> delta_opts, bound_opts;
  for (const auto& [command, name] : kCommands) {
    CLI::App* sub = app.add_subcommand(name);
    subs[sub] = command;
    sub->add_option("--input", config.input, "space file")->required();
    sub->add_option("--format", config.format, "matrix (JSON) or cloud (CSV)");
    sub->add_option("--s", config.s, "exponent s");
    delta_opts.push_back(sub->add_option("--delta", delta, "packing fineness"));
    sub->add_option("--beta", config.beta, "Holder exponent");
    sub->add_option("--subset", config.subset, "comma-separated point indices");
    sub->add_option("--values", config.values, "CSV of index,value rows");
    sub->add_option("--extension", config.extension, "CSV of f* (verify)");
    sub->add_option("--distortion", config.distortion, "max distortion D >= 1");
    sub->add_option("--dim", config.dim, "cube dimension (2 or 3)");
    sub->add_option("--order-k", config.order_k, "Hilbert curve order");
    sub->add_option("--epsilon", config.epsilon, "epsilons for off-set checks")
        ->delimiter(',');
    sub->add_option("--effort", config.effort, "heuristic effort");
    sub->add_option("--cap", config.cap, "brute-force size cap");
    sub->add_option("--seed", config.seed, "seed for randomized heuristics");
    sub->add_option("--out", config.out, "output directory");
    sub->add_option("--n-min", config.n_min, "finest-scale window start");
    sub->add_option("--n-max", config.n_max, "finest-scale window end");
    bound_opts.push_back(sub->add_option("--bound", bound, "constant L for lip"));
    sub->add_option("--grid", config.grid, "explicit radius grid")->delimiter(',');
    sub->add_flag("--unbounded", config.unbounded, "unbounded extension");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw Error(ErrorKind::kParseError, e.what());
  }
  for (const auto& [sub, command] : subs) {
    if (sub->parsed()) config.command = command;
  }
  for (auto* o : delta_opts) {
    if (o->count() > 0) config.delta = delta;
  }
  for (auto* o : bound_opts) {
    if (o->count() > 0) config.bound = bound;
  }
  return config;
}

int run(const RunConfig& config, std::ostream& log) {
  ordered_json report;
  report["command"] = command_name(config.command);
  report["parameters"] = parameters_json(config);
  report["inputs"] = inputs_json(config);
  int status = kExitOk;
  ordered_json result = ordered_json::object();
  try {
    validate_parameters(config);
    std::filesystem::create_directories(config.out);
    switch (config.command) {
      case Command::kValidate: status = cmd_validate(config, result); break;
      case Command::kPack: status = cmd_pack(config, result); break;
      case Command::kDim: status = cmd_dim(config, result); break;
      case Command::kLip: status = cmd_lip(config, result); break;
      case Command::kExtend: status = cmd_extend(config, result); break;
      case Command::kUltra: status = cmd_ultra(config, result); break;
      case Command::kOrder: status = cmd_order(config, result); break;
      case Command::kCubemap: status = cmd_cubemap(config, result); break;
      case Command::kVerify: status = cmd_verify(config, result); break;
    }
    report["status"] = status == kExitOk ? "ok" : "verification_failed";
    report["result"] = result;
  } catch (const Error& e) {
    const bool invalid_space =
        config.command == Command::kValidate && is_metric_error(e.kind());
    status = invalid_space ? kExitVerificationFailed : kExitInputError;
    report["status"] = invalid_space ? "invalid" : "error";
    if (invalid_space) report["result"] = {{"valid", false}};
    report["error"] = {{"kind", std::string(error_kind_name(e.kind()))},
                       {"message", e.what()},
                       {"witness", e.witness()}};
  } catch (const std::filesystem::filesystem_error& e) {
    status = kExitInputError;
    report["status"] = "error";
    report["error"] = {{"kind", "ParseError"}, {"message", e.what()}};
  }
  const std::string text = format_json(report);
  std::error_code ec;
  std::filesystem::create_directories(config.out, ec);
  std::ofstream file(std::filesystem::path(config.out) /
                     (command_name(config.command) + ".json"));
  file << text;
  log << text;
  return status;
}

int main_entry(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err) {
  try {
    const auto config = parse_args(argc, argv, out);
    if (!config) return kExitOk;
    return run(*config, out);
  } catch (const Error& e) {
    err << "packmap: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace packmap::cli
