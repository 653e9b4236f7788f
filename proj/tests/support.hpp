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

// Instance generators shared by the unit and acceptance tests.

#ifndef PACKMAP_TESTS_SUPPORT_HPP_
#define PACKMAP_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "packmap/metric_space.hpp"
#include "packmap/ultrametric.hpp"

namespace packmap::testing {

using Rng = std::mt19937_64;

inline double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

inline std::size_t uniform_int(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Points on the real line with |x - y| as the metric.
inline FiniteMetricSpace line_space(const std::vector<double>& xs) {
  std::vector<std::vector<double>> pts;
  for (double x : xs) pts.push_back({x});
  return from_point_cloud(pts);
}

// j / (n - 1), j = 0..n-1.
inline FiniteMetricSpace arithmetic_grid(std::size_t n) {
  std::vector<double> xs;
  for (std::size_t j = 0; j < n; ++j) {
    xs.push_back(static_cast<double>(j) / static_cast<double>(n - 1));
  }
  return line_space(xs);
}

// Left endpoints of the 2^depth intervals of the middle-thirds construction.
inline FiniteMetricSpace cantor_endpoints(int depth) {
  std::vector<double> xs;
  for (std::uint32_t code = 0; code < (1u << depth); ++code) {
    double x = 0.0;
    double scale = 1.0;
    for (int i = depth - 1; i >= 0; --i) {
      scale /= 3.0;
      if (code & (1u << i)) x += 2.0 * scale;
    }
    xs.push_back(x);
  }
  return line_space(xs);
}

inline FiniteMetricSpace random_plane_space(Rng& rng, std::size_t n) {
  std::vector<std::vector<double>> pts(n);
  for (auto& p : pts) p = {uniform01(rng), uniform01(rng)};
  return from_point_cloud(pts);
}

// Random rooted tree over n leaves: repeatedly merge 2 or 3 random current
// roots at a height above both.
inline UltraTree random_ultra_tree(Rng& rng, std::size_t n) {
  std::vector<UltraTree::Internal> internal;
  std::vector<Index> roots(n);
  std::vector<double> height(n, 0.0);
  for (Index i = 0; i < n; ++i) roots[i] = i;
  while (roots.size() > 1) {
    std::shuffle(roots.begin(), roots.end(), rng);
    const std::size_t k = std::min<std::size_t>(roots.size(), uniform_int(rng, 2, 3));
    UltraTree::Internal node;
    double top = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      node.children.push_back(roots.back());
      top = std::max(top, height[roots.back()]);
      roots.pop_back();
    }
    node.height = top + 0.05 + uniform01(rng);
    const Index id = n + internal.size();
    height.push_back(node.height);
    internal.push_back(std::move(node));
    roots.push_back(id);
  }
  return UltraTree(n, std::move(internal));
}

// Complete `branching`-ary tree of the given depth; a node at level l above
// the leaves has height branching^{l - depth}.
inline UltraTree balanced_tree(std::size_t branching, int depth) {
  std::size_t leaves = 1;
  for (int i = 0; i < depth; ++i) leaves *= branching;
  std::vector<UltraTree::Internal> internal;
  std::vector<Index> level(leaves);
  for (Index i = 0; i < leaves; ++i) level[i] = i;
  for (int l = 1; l <= depth; ++l) {
    std::vector<Index> next;
    for (std::size_t i = 0; i < level.size(); i += branching) {
      UltraTree::Internal node;
      node.children.assign(level.begin() + i, level.begin() + i + branching);
      node.height = std::pow(static_cast<double>(branching), l - depth);
      next.push_back(leaves + internal.size());
      internal.push_back(std::move(node));
    }
    level = std::move(next);
  }
  return UltraTree(leaves, std::move(internal));
}

// Random subset of 0..n-1 with size in [lo, hi], sorted.
inline std::vector<Index> random_subset(Rng& rng, std::size_t n, std::size_t lo,
                                        std::size_t hi) {
  std::vector<Index> all(n);
  for (Index i = 0; i < n; ++i) all[i] = i;
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(uniform_int(rng, lo, std::min(hi, n)));
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace packmap::testing

#endif  // PACKMAP_TESTS_SUPPORT_HPP_
