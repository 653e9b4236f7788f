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

// Reference computations written straight from the definitions. They read
// only raw distances and never call into the library's algorithms, so the
// tests can hold the library against them.

#ifndef PACKMAP_TESTS_ORACLES_HPP_
#define PACKMAP_TESTS_ORACLES_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "packmap/metric_space.hpp"

namespace packmap::oracle {

using Matrix = std::vector<std::vector<double>>;

inline Matrix matrix_of(const FiniteMetricSpace& space) {
  Matrix d(space.size(), std::vector<double>(space.size()));
  for (Index i = 0; i < space.size(); ++i) {
    for (Index j = 0; j < space.size(); ++j) d[i][j] = space.distance(i, j);
  }
  return d;
}

// Largest radius r <= delta with d(c, other) > r for every other center,
// found by bisection on the packing predicate itself. Returns the supremum
// (the predicate is strict, so a binding neighbor only gives a limit).
inline double sup_radius_by_bisection(const Matrix& d, const std::vector<Index>& centers,
                                      Index c, double delta) {
  auto admissible = [&](double r) {
    if (r > delta) return false;
    for (Index o : centers) {
      if (o != c && !(d[c][o] > r)) return false;
    }
    return true;
  };
  if (admissible(delta)) return delta;
  double lo = 0.0;
  double hi = delta;
  for (int it = 0; it < 200 && lo < hi; ++it) {
    const double mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) break;
    if (admissible(mid)) lo = mid; else hi = mid;
  }
  return hi;  // supremum of the admissible interval [0, hi)
}

struct Premeasure {
  double value = 0.0;
  std::vector<Index> witness;
};

// Exhaustive maximum over nonempty center sets D of sum_i sup r_i^s, with
// the lexicographically smallest D among exact ties.
inline Premeasure premeasure(const Matrix& d, const std::vector<Index>& set,
                             double s, double delta) {
  Premeasure best;
  best.value = -1.0;
  const std::size_t m = set.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<Index> centers;
    for (std::size_t b = 0; b < m; ++b) {
      if (mask & (std::uint64_t{1} << b)) centers.push_back(set[b]);
    }
    double v = 0.0;
    for (Index c : centers) {
      double r = delta;
      for (Index o : centers) {
        if (o != c) r = std::min(r, d[c][o]);
      }
      v += std::pow(r, s);
    }
    if (v > best.value || (v == best.value && centers < best.witness)) {
      best.value = v;
      best.witness = centers;
    }
  }
  return best;
}

// First-index greedy r-separated subset.
inline std::vector<Index> greedy_net(const Matrix& d, const std::vector<Index>& set,
                                     double r) {
  std::vector<Index> net;
  for (Index x : set) {
    bool far = true;
    for (Index y : net) far = far && d[x][y] > r;
    if (far) net.push_back(x);
  }
  return net;
}

inline bool is_separated(const Matrix& d, const std::vector<Index>& net, double r) {
  for (Index a : net) {
    for (Index b : net) {
      if (a != b && !(d[a][b] > r)) return false;
    }
  }
  return true;
}

// Maximal: no point of `set` can be added while staying separated.
inline bool is_maximal_net(const Matrix& d, const std::vector<Index>& set,
                           const std::vector<Index>& net, double r) {
  for (Index x : set) {
    if (std::find(net.begin(), net.end(), x) != net.end()) continue;
    bool far = true;
    for (Index y : net) far = far && d[x][y] > r;
    if (far) return false;
  }
  return true;
}

// f*(y) approximated on a dense uniform radius grid: min(1, min over x in F
// and grid r of f_{x,r}(y)), with s(x,r) recomputed from the definition.
inline double extension_dense(const Matrix& d, const std::vector<Index>& F,
                              const std::vector<double>& f, Index y,
                              std::size_t radii, double r_max) {
  double best = 1.0;
  for (std::size_t a = 0; a < F.size(); ++a) {
    const Index x = F[a];
    for (std::size_t k = 1; k <= radii; ++k) {
      const double r = r_max * static_cast<double>(k) / static_cast<double>(radii);
      double s = -std::numeric_limits<double>::infinity();
      for (std::size_t b = 0; b < F.size(); ++b) {
        if (d[x][F[b]] <= 3 * r) s = std::max(s, f[b]);
      }
      const double v = d[x][y] <= r ? s : s + (d[x][y] - r) / r;
      best = std::min(best, v);
    }
  }
  return best;
}

// max over positions a < b in `order` and c in [a, b] of
// d(order[a], order[c]) / d(order[a], order[b]).
inline double monotone_ratio(const Matrix& d, const std::vector<Index>& order) {
  double worst = 1.0;
  for (std::size_t a = 0; a < order.size(); ++a) {
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      for (std::size_t c = a; c <= b; ++c) {
        worst = std::max(worst, d[order[a]][order[c]] / d[order[a]][order[b]]);
      }
    }
  }
  return worst;
}

// Level-2 Hilbert cells in [0,4)^2, as (x, y), derived from the level-1
// pattern (0,0) (0,1) (1,1) (1,0): the first quadrant is the level-1
// pattern transposed, the middle two are translated copies, and the last is
// transposed about the anti-diagonal.
inline constexpr std::array<std::array<std::uint32_t, 2>, 16> kHilbertLevel2{{
    {0, 0}, {1, 0}, {1, 1}, {0, 1},
    {0, 2}, {0, 3}, {1, 3}, {1, 2},
    {2, 2}, {2, 3}, {3, 3}, {3, 2},
    {3, 1}, {2, 1}, {2, 0}, {3, 0},
}};

}  // namespace packmap::oracle

#endif  // PACKMAP_TESTS_ORACLES_HPP_
