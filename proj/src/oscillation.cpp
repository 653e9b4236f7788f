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

#include "packmap/oscillation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "packmap/error.hpp"

namespace packmap {

SampledFunction::SampledFunction(FiniteMetricSpace space,
                                 std::vector<double> values, std::size_t dim)
    : space_(std::move(space)), values_(std::move(values)), dim_(dim) {
  if (dim_ == 0 || values_.size() != space_.size() * dim_) {
    throw Error(ErrorKind::kMismatchedInputs,
                "function needs one value vector per point");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw Error(ErrorKind::kNonFinite, "non-finite function value",
                  {i / dim_});
    }
  }
}

SampledFunction SampledFunction::scalar(FiniteMetricSpace space,
                                        std::vector<double> values) {
  return SampledFunction(std::move(space), std::move(values), 1);
}

double SampledFunction::value_distance(Index i, Index j) const noexcept {
  if (dim_ == 1) return std::abs(values_[i] - values_[j]);
  double sq = 0.0;
  for (std::size_t c = 0; c < dim_; ++c) {
    const double diff = values_[i * dim_ + c] - values_[j * dim_ + c];
    sq += diff * diff;
  }
  return std::sqrt(sq);
}

Oscillation oscillation(const SampledFunction& f, Index x, double r) {
  const IndexSet ball = ball_members(f.space(), x, r);
  Oscillation out;
  for (std::size_t a = 0; a < ball.size(); ++a) {
    out.omega_hat = std::max(out.omega_hat, f.value_distance(ball[a], x));
    for (std::size_t b = a + 1; b < ball.size(); ++b) {
      out.omega = std::max(out.omega, f.value_distance(ball[a], ball[b]));
    }
  }
  return out;
}

std::vector<double> default_point_grid(const FiniteMetricSpace& space,
                                       Index x) {
  space.check_index(x);
  const double half = space.diameter() / 2.0;
  std::vector<double> grid;
  double nearest = std::numeric_limits<double>::infinity();
  for (double d : space.row(x)) {
    if (d <= 0.0) continue;
    nearest = std::min(nearest, d);
    if (d <= half) grid.push_back(d);
  }
  if (grid.empty() && std::isfinite(nearest)) grid.push_back(nearest);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

OscillationProfile oscillation_profile(const SampledFunction& f, Index x,
                                       const std::vector<double>& grid,
                                       double beta) {
  if (!(beta > 0.0)) {
    throw Error(ErrorKind::kNonpositiveParameter, "beta must be > 0");
  }
  OscillationProfile profile;
  profile.point = x;
  profile.beta = beta;
  for (double r : grid) {
    if (!(r > 0.0)) {
      throw Error(ErrorKind::kNonpositiveParameter, "grid radii must be > 0");
    }
    const Oscillation osc = oscillation(f, x, r);
    profile.entries.push_back(
        {r, osc.omega, osc.omega_hat, osc.omega / r,
         osc.omega / std::pow(r, beta)});
  }
  return profile;
}

double lip_lower(const SampledFunction& f, Index x, double beta,
                 const std::vector<double>& grid) {
  if (grid.empty()) throw Error(ErrorKind::kEmptyGrid, "radius grid is empty");
  const OscillationProfile profile = oscillation_profile(f, x, grid, beta);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& e : profile.entries) best = std::min(best, e.ratio_beta);
  return best;
}

double lip_lower(const SampledFunction& f, Index x, double beta) {
  return lip_lower(f, x, beta, default_point_grid(f.space(), x));
}

LipschitzClassification classify(const SampledFunction& f, double beta,
                                 const std::vector<double>& grid,
                                 double bound) {
  LipschitzClassification out;
  const std::size_t n = f.space().size();
  out.values.reserve(n);
  out.worst_value = -std::numeric_limits<double>::infinity();
  for (Index x = 0; x < n; ++x) {
    const double v = grid.empty() ? lip_lower(f, x, beta)
                                  : lip_lower(f, x, beta, grid);
    out.values.push_back(v);
    out.little_at_all = out.little_at_all && std::isfinite(v);
    if (v > out.worst_value) {
      out.worst_value = v;
      out.worst_point = x;
    }
  }
  out.lower_with_constant =
      std::all_of(out.values.begin(), out.values.end(),
                  [bound](double v) { return v <= bound; });
  return out;
}

}  // namespace packmap
