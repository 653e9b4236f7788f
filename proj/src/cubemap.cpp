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

#include "packmap/cubemap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "packmap/error.hpp"

namespace packmap {
namespace {

void check_curve(int dim, int order) {
  if (dim != 2 && dim != 3) {
    throw Error(ErrorKind::kParameterOutOfRange, "curve dimension must be 2 or 3");
  }
  if (order < 1 || order > kMaxCurveOrder) {
    throw Error(ErrorKind::kParameterOutOfRange,
                "curve order must be in [1, " + std::to_string(kMaxCurveOrder) +
                    "]");
  }
}

}  // namespace

std::vector<std::uint32_t> hilbert_cell(std::uint64_t h, int dim, int order) {
  check_curve(dim, order);
  // Skilling's transposed Hilbert index: the bits of h, most significant
  // first, are dealt round-robin to the axes.
  std::vector<std::uint32_t> x(dim, 0);
  for (int q = 0; q < order; ++q) {
    for (int i = 0; i < dim; ++i) {
      const int bit = q * dim + (dim - 1 - i);
      x[i] |= static_cast<std::uint32_t>((h >> bit) & 1u) << q;
    }
  }
  // Gray decode.
  const std::uint32_t top = 2u << (order - 1);
  std::uint32_t t = x[dim - 1] >> 1;
  for (int i = dim - 1; i > 0; --i) x[i] ^= x[i - 1];
  x[0] ^= t;
  // Undo the per-level rotations and reflections.
  for (std::uint32_t q = 2; q != top; q <<= 1) {
    const std::uint32_t p = q - 1;
    for (int i = dim - 1; i >= 0; --i) {
      if (x[i] & q) {
        x[0] ^= p;
      } else {
        t = (x[0] ^ x[i]) & p;
        x[0] ^= t;
        x[i] ^= t;
      }
    }
  }
  return x;
}

std::uint64_t hilbert_cell_index(double t, int dim, int order) {
  check_curve(dim, order);
  if (!(t >= 0.0 && t <= 1.0)) {
    throw Error(ErrorKind::kOutOfUnitInterval, "curve parameter must be in [0, 1]");
  }
  const int bits = dim * order;
  const double cells = std::ldexp(1.0, bits);
  const double scaled = std::ceil(t * cells);  // exact: power-of-two scaling
  const std::uint64_t last = (std::uint64_t{1} << bits) - 1;
  if (scaled <= 1.0) return 0;
  return std::min(last, static_cast<std::uint64_t>(scaled) - 1);
}

std::vector<double> spacefilling_curve(double t, int dim, int order) {
  const auto cell = hilbert_cell(hilbert_cell_index(t, dim, order), dim, order);
  std::vector<double> point(dim);
  for (int i = 0; i < dim; ++i) point[i] = std::ldexp(cell[i], -order);
  return point;
}

std::vector<double> cdf_map(const FiniteMetricSpace& space,
                            const MonotoneOrder& order,
                            const MassDistribution& mu) {
  const std::size_t n = space.size();
  if (mu.size() != n || order.order.size() != n) {
    throw Error(ErrorKind::kMismatchedInputs,
                "order and mass distribution must cover every point");
  }
  double total = 0.0;
  for (Index v : order.order) total += mu.weights()[v];
  if (!(total > 0.0)) {
    throw Error(ErrorKind::kZeroTotalMass, "mass distribution has zero total");
  }
  std::vector<double> g(n, 0.0);
  double prefix = 0.0;
  for (Index v : order.order) {
    prefix += mu.weights()[v];
    g[v] = prefix / total;
  }
  return g;
}

CubeMapResult cube_map_pipeline(const FiniteMetricSpace& space,
                                const MassDistribution& mu,
                                const CubeMapOptions& options) {
  check_curve(options.dim, options.order);
  if (!(options.s > 0.0)) {
    throw Error(ErrorKind::kNonpositiveParameter, "exponent s must be > 0");
  }
  const std::size_t n = space.size();
  CubeMapResult out;
  out.dim = options.dim;
  out.order = options.order;
  out.s = options.s;

  if (options.monotone) {
    out.monotone.order = options.monotone->order;
    out.monotone.c = monotone_constant(space, out.monotone.order);
  } else {
    const UltrametricCheck check = is_ultrametric(space);
    if (!check.ultrametric) {
      throw Error(ErrorKind::kNotUltrametric,
                  "space is not ultrametric and no monotone order was given",
                  {check.triple[0], check.triple[1], check.triple[2]});
    }
    out.monotone = monotone_order_from_tree(space, subdominant_ultrametric(space));
  }
  out.g_values = cdf_map(space, out.monotone, mu);

  out.cells.resize(n);
  out.mapped.resize(n);
  for (Index v = 0; v < n; ++v) {
    out.cells[v] = hilbert_cell_index(out.g_values[v], options.dim, options.order);
    const auto cell = hilbert_cell(out.cells[v], options.dim, options.order);
    out.mapped[v].resize(options.dim);
    for (int i = 0; i < options.dim; ++i) {
      out.mapped[v][i] = std::ldexp(cell[i], -options.order);
    }
  }

  // Level-m Hilbert cells are the level-k indices shifted right by
  // dim * (k - m) bits, so coverage is a count of distinct prefixes.
  std::vector<std::uint64_t> sorted = out.cells;
  std::sort(sorted.begin(), sorted.end());
  auto level_stats = [&](int m) {
    const int shift = options.dim * (options.order - m);
    std::size_t distinct = 0, run = 0, max_run = 0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      if (i == 0 || (sorted[i] >> shift) != (sorted[i - 1] >> shift)) {
        ++distinct;
        run = 0;
      }
      max_run = std::max(max_run, ++run);
    }
    return std::pair{distinct, max_run};
  };
  out.max_cell_hits = level_stats(options.order).second;
  for (int m = options.order; m >= 1; --m) {
    const auto [distinct, max_run] = level_stats(m);
    if (distinct == (std::size_t{1} << (options.dim * m))) {
      out.covered = true;
      out.coverage_level = m;
      out.max_cell_hits = max_run;
      break;
    }
  }
  out.coverage_resolution = std::ldexp(1.0, -out.coverage_level);

  for (double w : mu.weights()) {
    if (mu.total() > 0.0 && w == mu.total()) out.degenerate_measure = true;
  }

  out.grid = options.grid.empty() ? default_radius_grid(space, space.all_points())
                                  : options.grid;
  if (out.grid.empty()) {
    out.grid.push_back(1.0);  // single point: any radius sees the same ball
  }
  out.frostman_passes = frostman_check(space, mu, options.s, out.grid).all_pass;
  const double c = out.monotone.c;
  out.holder_bound = 2.0 * std::pow(c, options.s);

  std::vector<double> cumulative(n);
  double prefix = 0.0;
  for (Index v : out.monotone.order) {
    prefix += mu.weights()[v];
    cumulative[v] = prefix;
  }
  out.g_lower_holder.assign(n, std::numeric_limits<double>::infinity());
  out.composite_lower_lipschitz.assign(n, std::numeric_limits<double>::infinity());
  for (Index x = 0; x < n; ++x) {
    const auto row = space.row(x);
    for (double r : out.grid) {
      const double rho = r / c;
      double lo = cumulative[x], hi = cumulative[x];
      double hat = 0.0;
      for (Index y = 0; y < n; ++y) {
        if (row[y] <= rho) {
          lo = std::min(lo, cumulative[y]);
          hi = std::max(hi, cumulative[y]);
        }
        if (row[y] <= r) {
          double sq = 0.0;
          for (int i = 0; i < options.dim; ++i) {
            const double diff = out.mapped[y][i] - out.mapped[x][i];
            sq += diff * diff;
          }
          hat = std::max(hat, std::sqrt(sq));
        }
      }
      out.g_lower_holder[x] =
          std::min(out.g_lower_holder[x], (hi - lo) / std::pow(rho, options.s));
      out.composite_lower_lipschitz[x] =
          std::min(out.composite_lower_lipschitz[x], hat / r);
    }
  }
  out.g_lower_holder_worst =
      *std::max_element(out.g_lower_holder.begin(), out.g_lower_holder.end());
  out.composite_lower_lipschitz_worst =
      *std::max_element(out.composite_lower_lipschitz.begin(),
                        out.composite_lower_lipschitz.end());
  return out;
}

}  // namespace packmap
