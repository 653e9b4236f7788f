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

// Oscillation of sampled functions on balls and the discrete lower scaled
// oscillation (little Lipschitz / lower Holder) diagnostics.

#ifndef PACKMAP_OSCILLATION_HPP_
#define PACKMAP_OSCILLATION_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "packmap/metric_space.hpp"

namespace packmap {

// Values in R^m attached to every point; the codomain is Euclidean.
class SampledFunction {
 public:
  // `values` is row-major, space.size() rows of `dim` entries.
  SampledFunction(FiniteMetricSpace space, std::vector<double> values,
                  std::size_t dim = 1);
  static SampledFunction scalar(FiniteMetricSpace space,
                                std::vector<double> values);

  const FiniteMetricSpace& space() const noexcept { return space_; }
  std::size_t dim() const noexcept { return dim_; }
  std::span<const double> value(Index i) const noexcept {
    return {values_.data() + i * dim_, dim_};
  }
  const std::vector<double>& values() const noexcept { return values_; }
  // Euclidean distance between f(i) and f(j).
  double value_distance(Index i, Index j) const noexcept;

 private:
  FiniteMetricSpace space_;
  std::vector<double> values_;
  std::size_t dim_;
};

struct Oscillation {
  double omega = 0.0;      // diam f(B(x, r))
  double omega_hat = 0.0;  // max_{y in B(x,r)} |f(y) - f(x)|
};

Oscillation oscillation(const SampledFunction& f, Index x, double r);

struct OscillationEntry {
  double r = 0.0;
  double omega = 0.0;
  double omega_hat = 0.0;
  double ratio = 0.0;       // omega / r
  double ratio_beta = 0.0;  // omega / r^beta
};

struct OscillationProfile {
  Index point = 0;
  double beta = 1.0;
  std::vector<OscillationEntry> entries;
};

// Radii where B(x, .) changes: distinct positive distances from x up to
// diam/2, ascending. Falls back to the nearest-neighbor distance when no
// distance is that small (e.g. two-point spaces).
std::vector<double> default_point_grid(const FiniteMetricSpace& space, Index x);

OscillationProfile oscillation_profile(const SampledFunction& f, Index x,
                                       const std::vector<double>& grid,
                                       double beta = 1.0);

// min over the grid of omega(x, r) / r^beta. A finite-scale proxy for the
// liminf: it overestimates when the grid stops short of the small radii
// that realize the liminf. Errors: EmptyGrid.
double lip_lower(const SampledFunction& f, Index x, double beta,
                 const std::vector<double>& grid);
// Same with default_point_grid(x).
double lip_lower(const SampledFunction& f, Index x, double beta = 1.0);

struct LipschitzClassification {
  // Always true on finite data; the maximum value is the informative part.
  bool little_at_all = true;
  bool lower_with_constant = false;
  Index worst_point = 0;
  double worst_value = 0.0;
  std::vector<double> values;  // per point
};

// `grid` empty means each point uses its default_point_grid.
LipschitzClassification classify(const SampledFunction& f, double beta,
                                 const std::vector<double>& grid, double bound);

}  // namespace packmap

#endif  // PACKMAP_OSCILLATION_HPP_
