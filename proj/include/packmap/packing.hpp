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

// Packing pre-measures at a fixed scale, net-counting dimension estimates,
// and Frostman-type mass distribution diagnostics.

#ifndef PACKMAP_PACKING_HPP_
#define PACKMAP_PACKING_HPP_

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "packmap/metric_space.hpp"

namespace packmap {

inline constexpr std::size_t kDefaultBruteForceCap = 20;
inline constexpr std::size_t kMaxDefaultGridSize = 64;

// Supremum of sum r_i^s over delta-fine packings with the witness centers.
// The supremum for fixed centers D is sum min(delta, nn_D(i))^s, reached only
// as r_i increases to nn_D(i); such radii are flagged in `limit_radius`.
struct PremeasureResult {
  double value = 0.0;
  IndexSet witness;
  std::vector<double> witness_radii;
  std::vector<bool> limit_radius;
  bool exact = false;
};

// Value of the best packing with centers exactly `centers` (sorted). This is
// the single evaluator shared by the exact and heuristic searches, so equal
// center sets give bitwise-equal values.
double packing_value(const FiniteMetricSpace& space, const IndexSet& centers,
                     double s, double delta);

// Exhaustive search over all nonempty subsets of `set`. Ties go to the
// lexicographically smallest center set. Errors: TooLarge when |set| > cap,
// NonpositiveParameter.
PremeasureResult premeasure_exact(const FiniteMetricSpace& space,
                                  const IndexSet& set, double s, double delta,
                                  std::size_t cap = kDefaultBruteForceCap);

// Feasible lower bound: isolation-ordered greedy seed, then add/remove/swap
// local search with seeded perturbations for `effort` passes.
PremeasureResult premeasure_heuristic(const FiniteMetricSpace& space,
                                      const IndexSet& set, double s,
                                      double delta, int effort,
                                      std::uint64_t seed = 0);

struct DimensionProfile {
  std::vector<int> levels;         // n
  std::vector<double> scales;      // 2^{-n}, in rescaled units
  std::vector<std::size_t> counts; // |I_n|
  std::vector<bool> used;          // inside the regression window
  double slope = 0.0;              // of log2 |I_n| against n
  double dim_estimate = 0.0;
  // Distances were multiplied by this factor so that diam E <= 1.
  double rescale_factor = 1.0;
};

// Net-counting (upper box) estimate, an upper proxy for the packing
// dimension. Scales with |I_n| == 1 or |I_n| == |E| are left out of the fit.
// Errors: DegenerateScaleWindow when fewer than two scales remain.
DimensionProfile dimension_profile(const FiniteMetricSpace& space,
                                   const IndexSet& set, int n_min, int n_max);

class MassDistribution {
 public:
  MassDistribution() = default;
  // Errors: NonFinite / NonpositiveParameter for negative weights.
  explicit MassDistribution(std::vector<double> weights);
  static MassDistribution uniform(std::size_t n, double weight = 1.0);

  const std::vector<double>& weights() const noexcept { return weights_; }
  double total() const noexcept { return total_; }
  std::size_t size() const noexcept { return weights_.size(); }
  MassDistribution scaled(double c) const;

 private:
  std::vector<double> weights_;
  double total_ = 0.0;
};

// mu B(x, r), summed in ascending point order.
double ball_mass(const FiniteMetricSpace& space, const MassDistribution& mu,
                 Index x, double r);

// Sorted descending distinct pairwise distances of `set`; when there are more
// than `max_size`, a geometric subsample of them.
std::vector<double> default_radius_grid(const FiniteMetricSpace& space,
                                        const IndexSet& set,
                                        std::size_t max_size =
                                            kMaxDefaultGridSize);

struct FrostmanPoint {
  bool passes = false;
  double best_margin = 0.0;  // max over the grid of r^s - mu B(x, r)
  double best_radius = 0.0;
};

struct FrostmanReport {
  std::vector<FrostmanPoint> points;
  std::vector<double> grid;  // descending
  bool all_pass = false;
};

// For each x: does some r in the grid satisfy mu B(x,r) <= r^s.
FrostmanReport frostman_check(const FiniteMetricSpace& space,
                              const MassDistribution& mu, double s,
                              std::vector<double> grid);

struct FrostmanRescale {
  double c = 0.0;
  MassDistribution rescaled;
};

// Largest c with c * mu passing frostman_check on the grid,
// c = min_x max_r r^s / mu B(x, r). Errors: ZeroTotalMass, EmptyGrid.
FrostmanRescale frostman_rescale(const FiniteMetricSpace& space,
                                 const MassDistribution& mu, double s,
                                 std::vector<double> grid);

// (r, mu B(x,r) / r^s) for every grid radius. The minimum over the grid is
// a scale-truncated stand-in for the lower density, not the limit itself.
std::vector<std::pair<double, double>> density_profile(
    const FiniteMetricSpace& space, const MassDistribution& mu, Index x,
    std::vector<double> grid, double s);

}  // namespace packmap

#endif  // PACKMAP_PACKING_HPP_
