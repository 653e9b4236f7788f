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

#include "packmap/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <utility>

#include "packmap/error.hpp"

namespace packmap {

FiniteMetricSpace::FiniteMetricSpace(std::size_t n, std::vector<double> dist)
    : n_(n),
      dist_(std::make_shared<const std::vector<double>>(std::move(dist))) {}

IndexSet FiniteMetricSpace::all_points() const {
  IndexSet all(n_);
  for (Index i = 0; i < n_; ++i) all[i] = i;
  return all;
}

double FiniteMetricSpace::diameter() const {
  double diam = 0.0;
  for (double v : *dist_) diam = std::max(diam, v);
  return diam;
}

FiniteMetricSpace FiniteMetricSpace::restrict(const IndexSet& subset) const {
  check_indices(subset);
  const std::size_t m = subset.size();
  std::vector<double> dist(m * m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      dist[a * m + b] = distance(subset[a], subset[b]);
    }
  }
  FiniteMetricSpace sub(m, std::move(dist));
  if (!labels_.empty()) {
    sub.labels_.reserve(m);
    for (Index i : subset) sub.labels_.push_back(labels_[i]);
  }
  return sub;
}

void FiniteMetricSpace::check_index(Index i) const {
  if (i >= n_) {
    throw Error(ErrorKind::kIndexOutOfRange,
                "point index " + std::to_string(i) + " not in [0, " +
                    std::to_string(n_) + ")",
                {i});
  }
}

void FiniteMetricSpace::check_indices(const IndexSet& set) const {
  for (Index i : set) check_index(i);
}

FiniteMetricSpace FiniteMetricSpace::with_labels(
    std::vector<std::string> labels) const {
  if (!labels.empty() && labels.size() != n_) {
    throw Error(ErrorKind::kMismatchedInputs,
                "expected " + std::to_string(n_) + " labels");
  }
  FiniteMetricSpace copy = *this;
  copy.labels_ = std::move(labels);
  return copy;
}

FiniteMetricSpace validate_metric(std::span<const double> flat, std::size_t n) {
  if (n == 0 || flat.size() != n * n) {
    throw Error(ErrorKind::kNotSquare,
                "distance matrix must be a nonempty n x n array");
  }
  auto at = [&](Index i, Index j) { return flat[i * n + j]; };
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const double v = at(i, j);
      if (!std::isfinite(v)) {
        throw Error(ErrorKind::kNonFinite, "non-finite distance", {i, j});
      }
      if (v < 0.0) {
        throw Error(ErrorKind::kNegativeDistance, "negative distance", {i, j});
      }
    }
  }
  for (Index i = 0; i < n; ++i) {
    if (at(i, i) != 0.0) {
      throw Error(ErrorKind::kNonzeroDiagonal,
                  "diagonal entry " + std::to_string(i) + " is not zero", {i});
    }
    for (Index j = i + 1; j < n; ++j) {
      if (at(i, j) != at(j, i)) {
        throw Error(ErrorKind::kAsymmetricMatrix,
                    "d(" + std::to_string(i) + "," + std::to_string(j) +
                        ") != d(" + std::to_string(j) + "," +
                        std::to_string(i) + ")",
                    {i, j});
      }
      if (at(i, j) == 0.0) {
        throw Error(ErrorKind::kZeroDistanceDistinctPoints,
                    "distinct points at distance zero", {i, j});
      }
    }
  }
  // d(i,k) <= (d(i,j) + d(j,k)) (1 + tol). Symmetry lets k run over k > i
  // only; the inner loop scans two contiguous rows.
  const double slack = 1.0 + kMetricRelTol;
  for (Index i = 0; i < n; ++i) {
    const double* row_i = flat.data() + i * n;
    for (Index j = 0; j < n; ++j) {
      const double dij = row_i[j];
      const double* row_j = flat.data() + j * n;
      bool bad = false;
      for (Index k = i + 1; k < n; ++k) {
        bad |= row_i[k] > (dij + row_j[k]) * slack;
      }
      if (bad) {
        for (Index k = i + 1; k < n; ++k) {
          if (row_i[k] > (dij + row_j[k]) * slack) {
            throw Error(ErrorKind::kTriangleViolation,
                        "d(" + std::to_string(i) + "," + std::to_string(k) +
                            ") exceeds d(" + std::to_string(i) + "," +
                            std::to_string(j) + ") + d(" + std::to_string(j) +
                            "," + std::to_string(k) + ")",
                        {i, j, k});
          }
        }
      }
    }
  }
  return FiniteMetricSpace(n, std::vector<double>(flat.begin(), flat.end()));
}

FiniteMetricSpace validate_metric(
    const std::vector<std::vector<double>>& dist) {
  const std::size_t n = dist.size();
  std::vector<double> flat;
  flat.reserve(n * n);
  for (const auto& row : dist) {
    if (row.size() != n) {
      throw Error(ErrorKind::kNotSquare, "distance matrix rows must have " +
                                             std::to_string(n) + " entries");
    }
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return validate_metric(flat, n);
}

FiniteMetricSpace from_point_cloud(
    const std::vector<std::vector<double>>& points) {
  const std::size_t n = points.size();
  if (n == 0) throw Error(ErrorKind::kNotSquare, "empty point cloud");
  const std::size_t dim = points.front().size();
  for (Index i = 0; i < n; ++i) {
    if (points[i].size() != dim || dim == 0) {
      throw Error(ErrorKind::kMismatchedInputs,
                  "point " + std::to_string(i) + " has wrong dimension", {i});
    }
    for (double c : points[i]) {
      if (!std::isfinite(c)) {
        throw Error(ErrorKind::kNonFinite, "non-finite coordinate", {i});
      }
    }
  }
  std::vector<double> dist(n * n, 0.0);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      double sq = 0.0;
      for (std::size_t c = 0; c < dim; ++c) {
        const double diff = points[i][c] - points[j][c];
        sq += diff * diff;
      }
      const double d = std::sqrt(sq);
      if (d == 0.0) {
        throw Error(ErrorKind::kZeroDistanceDistinctPoints,
                    "coincident points", {i, j});
      }
      dist[i * n + j] = d;
      dist[j * n + i] = d;
    }
  }
  return FiniteMetricSpace(n, std::move(dist));
}

IndexSet ball_members(const FiniteMetricSpace& space, Index x, double r) {
  space.check_index(x);
  if (!(r >= 0.0)) {
    throw Error(ErrorKind::kNonpositiveParameter, "ball radius must be >= 0");
  }
  IndexSet members;
  const auto row = space.row(x);
  for (Index y = 0; y < row.size(); ++y) {
    if (row[y] <= r) members.push_back(y);
  }
  return members;
}

double set_diam(const FiniteMetricSpace& space, const IndexSet& set) {
  space.check_indices(set);
  double diam = 0.0;
  for (std::size_t a = 0; a < set.size(); ++a) {
    for (std::size_t b = a + 1; b < set.size(); ++b) {
      diam = std::max(diam, space.distance(set[a], set[b]));
    }
  }
  return diam;
}

double distance_to_set(const FiniteMetricSpace& space, Index x,
                       const IndexSet& set) {
  double best = std::numeric_limits<double>::infinity();
  for (Index y : set) best = std::min(best, space.distance(x, y));
  return best;
}

bool is_packing(const FiniteMetricSpace& space, const Packing& packing) {
  for (const auto& item : packing.items) {
    if (!std::binary_search(packing.target.begin(), packing.target.end(),
                            item.center)) {
      return false;
    }
  }
  const auto& items = packing.items;
  for (std::size_t i = 0; i < items.size(); ++i) {
    for (std::size_t j = 0; j < items.size(); ++j) {
      if (i == j) continue;
      if (!(space.distance(items[i].center, items[j].center) >
            items[i].radius)) {
        return false;
      }
    }
  }
  return true;
}

bool is_delta_fine(const Packing& packing, double delta) {
  return std::all_of(packing.items.begin(), packing.items.end(),
                     [delta](const PackingItem& it) {
                       return it.radius <= delta;
                     });
}

bool dilated_cover(const FiniteMetricSpace& space, const Packing& packing,
                   const IndexSet& set, double alpha) {
  for (Index e : set) {
    bool covered = false;
    for (const auto& item : packing.items) {
      if (space.distance(e, item.center) <= alpha * item.radius) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

namespace {

// Generation n >= 1 with alpha^{-n+1} > r >= alpha^{-n}, for 0 < r < 1.
int generation_of(double r, double alpha) {
  int n = static_cast<int>(std::floor(-std::log(r) / std::log(alpha))) + 1;
  n = std::max(n, 1);
  while (n > 1 && std::pow(alpha, -(n - 1)) <= r) --n;
  while (r < std::pow(alpha, -n)) ++n;
  return n;
}

}  // namespace

Packing greedy_packing_cover(const FiniteMetricSpace& space,
                             const IndexSet& set,
                             const std::vector<double>& radii, double alpha) {
  if (!(alpha > 1.0) || !std::isfinite(alpha)) {
    throw Error(ErrorKind::kInvalidDilation, "dilation alpha must be > 1");
  }
  if (radii.size() != space.size()) {
    throw Error(ErrorKind::kMismatchedInputs,
                "radii must have one entry per point");
  }
  space.check_indices(set);
  Packing packing;
  packing.target = set;
  if (set.empty()) return packing;

  double max_radius = 0.0;
  for (Index x : set) {
    if (!(radii[x] > 0.0) || !std::isfinite(radii[x])) {
      throw Error(ErrorKind::kNonpositiveParameter,
                  "radius at point " + std::to_string(x) +
                      " must be finite and positive",
                  {x});
    }
    max_radius = std::max(max_radius, radii[x]);
  }
  // Generations depend only on radius ratios, so the rescaling r -> r/scale
  // that makes every radius < 1 is applied to the generation index alone.
  const double scale = 1.0 + max_radius;
  std::map<int, IndexSet> generations;
  for (Index x : set) {
    generations[generation_of(radii[x] / scale, alpha)].push_back(x);
  }

  for (const auto& [gen, members] : generations) {
    const std::size_t earlier = packing.items.size();
    for (Index x : members) {
      bool admissible = true;
      for (std::size_t c = 0; c < packing.items.size() && admissible; ++c) {
        const auto& item = packing.items[c];
        const double d = space.distance(x, item.center);
        // Earlier generations remove their balls from the candidate pool;
        // within the generation both directions of the predicate matter.
        admissible = d > item.radius && (c < earlier || d > radii[x]);
      }
      if (admissible) packing.items.push_back({x, radii[x]});
    }
  }
  return packing;
}

IndexSet separated_net(const FiniteMetricSpace& space, const IndexSet& set,
                       double r) {
  IndexSet net;
  for (Index x : set) {
    bool separated = true;
    for (Index y : net) {
      if (!(space.distance(x, y) > r)) {
        separated = false;
        break;
      }
    }
    if (separated) net.push_back(x);
  }
  return net;
}

double SeparatedNetSequence::scale(int n) { return std::ldexp(1.0, -n); }

SeparatedNetSequence separated_nets(const FiniteMetricSpace& space,
                                    const IndexSet& set, int n_max) {
  if (n_max < 0) {
    throw Error(ErrorKind::kNonpositiveParameter, "n_max must be >= 0");
  }
  space.check_indices(set);
  SeparatedNetSequence seq;
  seq.nets.reserve(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    seq.nets.push_back(separated_net(space, set, SeparatedNetSequence::scale(n)));
  }
  return seq;
}

IndexSet make_index_set(const FiniteMetricSpace& space,
                        std::vector<Index> indices) {
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  space.check_indices(indices);
  return indices;
}

}  // namespace packmap
