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

// Finite metric spaces and the ball/packing primitives shared by every
// other module.

#ifndef PACKMAP_METRIC_SPACE_HPP_
#define PACKMAP_METRIC_SPACE_HPP_

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace packmap {

using Index = std::size_t;
// Sorted, duplicate-free list of point indices.
using IndexSet = std::vector<Index>;

// Relative tolerance used by every triangle / strong-triangle check.
inline constexpr double kMetricRelTol = 1e-9;

// An immutable, validated finite metric space. Copies share the distance
// storage.
class FiniteMetricSpace {
 public:
  std::size_t size() const noexcept { return n_; }
  double distance(Index i, Index j) const noexcept {
    return (*dist_)[i * n_ + j];
  }
  // Row i of the distance matrix.
  std::span<const double> row(Index i) const noexcept {
    return {dist_->data() + i * n_, n_};
  }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  IndexSet all_points() const;
  double diameter() const;

  // Subspace on `subset` (sorted), reindexed 0..|subset|-1 in subset order.
  FiniteMetricSpace restrict(const IndexSet& subset) const;

  // Throws IndexOutOfRange when i >= size().
  void check_index(Index i) const;
  void check_indices(const IndexSet& set) const;

  FiniteMetricSpace with_labels(std::vector<std::string> labels) const;

 private:
  friend FiniteMetricSpace validate_metric(std::span<const double>,
                                           std::size_t);
  friend FiniteMetricSpace from_point_cloud(
      const std::vector<std::vector<double>>&);

  FiniteMetricSpace(std::size_t n, std::vector<double> dist);

  std::size_t n_ = 0;
  std::shared_ptr<const std::vector<double>> dist_;
  std::vector<std::string> labels_;
};

// Validates a row-major n*n matrix: zero diagonal, symmetry, positivity off
// the diagonal, and the triangle inequality up to kMetricRelTol.
// Errors: NotSquare, NonFinite, AsymmetricMatrix, NegativeDistance,
// ZeroDistanceDistinctPoints, TriangleViolation (witness = (i, j, k) with
// d(i,k) > d(i,j) + d(j,k)).
FiniteMetricSpace validate_metric(std::span<const double> flat, std::size_t n);
FiniteMetricSpace validate_metric(const std::vector<std::vector<double>>& dist);

// Euclidean metric induced by a point cloud, one row per point. The triangle
// inequality holds by construction, so only coincident points are rejected.
FiniteMetricSpace from_point_cloud(
    const std::vector<std::vector<double>>& points);

struct Ball {
  Index center = 0;
  double radius = 0.0;

  bool contains(const FiniteMetricSpace& space, Index y) const {
    return space.distance(center, y) <= radius;
  }
};

struct PackingItem {
  Index center = 0;
  double radius = 0.0;
};

struct Packing {
  std::vector<PackingItem> items;
  IndexSet target;
};

// Closed ball {y : d(x,y) <= r}, sorted.
IndexSet ball_members(const FiniteMetricSpace& space, Index x, double r);

// Largest pairwise distance in `set`; 0 for empty and singleton sets.
double set_diam(const FiniteMetricSpace& space, const IndexSet& set);

// dist(x, set); +inf for an empty set.
double distance_to_set(const FiniteMetricSpace& space, Index x,
                       const IndexSet& set);

// Packing predicate: centers in the target set, and x_j outside B(x_i, r_i)
// for every ordered pair of distinct items.
bool is_packing(const FiniteMetricSpace& space, const Packing& packing);
bool is_delta_fine(const Packing& packing, double delta);

// True when {B(x, alpha * r_x)} covers every point of `set`.
bool dilated_cover(const FiniteMetricSpace& space, const Packing& packing,
                   const IndexSet& set, double alpha);

// Vitali-type extraction: a packing D of `set` using radii[x] such that the
// alpha-dilated balls cover `set`. `radii` is indexed by point (size n).
Packing greedy_packing_cover(const FiniteMetricSpace& space,
                             const IndexSet& set,
                             const std::vector<double>& radii, double alpha);

// Greedy maximal r-separated subset of `set` in ascending index order:
// pairwise distances > r, every point of `set` within r of a member.
IndexSet separated_net(const FiniteMetricSpace& space, const IndexSet& set,
                       double r);

struct SeparatedNetSequence {
  // nets[n] is a maximal 2^{-n}-separated subset.
  std::vector<IndexSet> nets;
  static double scale(int n);
};

SeparatedNetSequence separated_nets(const FiniteMetricSpace& space,
                                    const IndexSet& set, int n_max);

// Normalizes an index list into an IndexSet (sort + unique) and checks range.
IndexSet make_index_set(const FiniteMetricSpace& space,
                        std::vector<Index> indices);

}  // namespace packmap

#endif  // PACKMAP_METRIC_SPACE_HPP_
