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

// Ultrametric structure: strong-triangle checks, single-linkage dendrograms,
// heuristic low-distortion subsets, and monotone orders.

#ifndef PACKMAP_ULTRAMETRIC_HPP_
#define PACKMAP_ULTRAMETRIC_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "packmap/metric_space.hpp"
#include "packmap/packing.hpp"

namespace packmap {

struct UltrametricCheck {
  bool ultrametric = true;
  // max over triples of d(x,z) / max(d(x,y), d(y,z)); 1 or less when the
  // strong triangle inequality holds.
  double worst_ratio = 0.0;
  std::array<Index, 3> triple{};  // (x, y, z) realizing worst_ratio
};

UltrametricCheck is_ultrametric(const FiniteMetricSpace& space);

// Rooted merge tree over n leaves. Node ids 0..n-1 are leaves; internal
// nodes follow. u(x,y) is the height of the lowest common ancestor.
class UltraTree {
 public:
  struct Internal {
    std::vector<Index> children;
    double height = 0.0;
  };

  // Internal node k gets id leaves + k. Errors: MismatchedInputs when the
  // nodes do not form a single rooted tree, heights are not positive, or a
  // parent sits below one of its children.
  UltraTree(std::size_t leaves, std::vector<Internal> internal);

  std::size_t leaf_count() const noexcept { return leaves_; }
  std::size_t node_count() const noexcept { return parent_.size(); }
  Index root() const noexcept { return root_; }
  double height(Index node) const { return height_[node]; }
  const std::vector<Index>& children(Index node) const {
    return children_[node];
  }
  // Leaves in depth-first order, children visited in stored order.
  const std::vector<Index>& leaf_order() const noexcept { return leaf_order_; }

  double distance(Index x, Index y) const;

  // The induced ultrametric as a validated metric space.
  FiniteMetricSpace induced_space() const;

 private:
  std::size_t leaves_;
  std::vector<Index> parent_;
  std::vector<std::size_t> depth_;
  std::vector<double> height_;
  std::vector<std::vector<Index>> children_;
  std::vector<Index> leaf_order_;
  Index root_ = 0;
};

// Single-linkage dendrogram: u <= d pointwise, u is the largest such
// ultrametric, and u == d when d is already ultrametric.
UltraTree subdominant_ultrametric(const FiniteMetricSpace& space);

// max over pairs of d / u where u is the subdominant ultrametric; 1 for
// spaces with fewer than two points.
double ultrametric_distortion(const FiniteMetricSpace& space);

struct UltraSubset {
  IndexSet subset;
  double distortion = 1.0;  // certified: max d/u_S over pairs of the subset
  DimensionProfile profile;  // of the subset, when computable
  bool profile_valid = false;
};

// Heuristic search for a large subset whose metric is within distortion
// `max_distortion` of its own subdominant ultrametric: repeatedly drop an
// endpoint of the worst pair, then try to re-add dropped points in seeded
// random order for `effort` passes. No optimality guarantee.
// Errors: InvalidDistortion when max_distortion < 1.
UltraSubset extract_ultra_subset(const FiniteMetricSpace& space,
                                 double max_distortion, int effort,
                                 std::uint64_t seed = 0, int n_min = 0,
                                 int n_max = 16);

struct MonotoneOrder {
  std::vector<Index> order;
  // Smallest constant with d(x,z) <= c d(x,y) whenever x < y and z in
  // [x, y] (computed on stored values, so the predicate holds exactly).
  double c = 1.0;
};

// Exact monotonicity constant of a given order. Errors: MismatchedInputs
// when `order` is not a permutation.
double monotone_constant(const FiniteMetricSpace& space,
                         const std::vector<Index>& order);

// Exhaustive check of the monotone predicate with constant c.
bool is_monotone(const FiniteMetricSpace& space,
                 const std::vector<Index>& order, double c);

MonotoneOrder monotone_order_from_tree(const FiniteMetricSpace& space,
                                       const UltraTree& tree);

}  // namespace packmap

#endif  // PACKMAP_ULTRAMETRIC_HPP_
