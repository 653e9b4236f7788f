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

// Surjections onto cubes: a measure CDF along a monotone order followed by
// a Hilbert curve.

#ifndef PACKMAP_CUBEMAP_HPP_
#define PACKMAP_CUBEMAP_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "packmap/metric_space.hpp"
#include "packmap/packing.hpp"
#include "packmap/ultrametric.hpp"

namespace packmap {

inline constexpr int kMaxCurveOrder = 16;

// Integer cell coordinates of the h-th cell (0 <= h < 2^{dim*order}) along
// the order-`order` Hilbert curve in [0, 2^order)^dim. Consecutive cells share
// a face.
std::vector<std::uint32_t> hilbert_cell(std::uint64_t h, int dim, int order);

// Cell visited at time t. Cell h owns the times (h/N, (h+1)/N] with
// N = 2^{dim*order}, and t = 0 belongs to cell 0, so a dyadic t = j/N lands
// exactly in cell j-1. Errors: OutOfUnitInterval, ParameterOutOfRange.
std::uint64_t hilbert_cell_index(double t, int dim, int order);

// Lower corner of the cell visited at time t, in [0, 1)^dim, resolution
// 2^{-order} per axis.
std::vector<double> spacefilling_curve(double t, int dim, int order);

// g(x) = mu{z : z <= x} / mu(X) along the order, summed in order so the last
// point gets exactly 1. Returned per point index. Errors: ZeroTotalMass,
// MismatchedInputs.
std::vector<double> cdf_map(const FiniteMetricSpace& space,
                            const MonotoneOrder& order,
                            const MassDistribution& mu);

struct CubeMapResult {
  std::vector<double> g_values;              // per point
  std::vector<std::vector<double>> mapped;   // per point, in [0,1]^dim
  std::vector<std::uint64_t> cells;          // level-`order` Hilbert cell
  int dim = 2;
  int order = 1;
  // Finest level m with every 2^{-m} cell hit; valid when covered.
  int coverage_level = 0;
  double coverage_resolution = 1.0;
  bool covered = false;
  std::size_t max_cell_hits = 0;  // at coverage_level (or order if uncovered)
  bool degenerate_measure = false;  // one point carries all the mass

  MonotoneOrder monotone;
  double s = 1.0;
  double holder_bound = 0.0;  // 2 c^s
  bool frostman_passes = false;
  std::vector<double> grid;
  // Per point: min over grid radii r of w_G(x, r/c) / (r/c)^s with G the
  // unnormalized CDF.
  std::vector<double> g_lower_holder;
  double g_lower_holder_worst = 0.0;
  // Per point: min over grid radii r of max_{y in B(x,r)} |f(y) - f(x)| / r
  // for f = curve o g.
  std::vector<double> composite_lower_lipschitz;
  double composite_lower_lipschitz_worst = 0.0;
};

struct CubeMapOptions {
  int dim = 2;
  int order = 8;
  double s = 1.0;
  // Empty means default_radius_grid of the whole space.
  std::vector<double> grid;
  // Required unless the space is ultrametric.
  std::optional<MonotoneOrder> monotone;
};

// Errors: NotUltrametric when no order is supplied and the space fails the
// strong triangle check; errors of the component operations.
CubeMapResult cube_map_pipeline(const FiniteMetricSpace& space,
                                const MassDistribution& mu,
                                const CubeMapOptions& options);

}  // namespace packmap

#endif  // PACKMAP_CUBEMAP_HPP_
