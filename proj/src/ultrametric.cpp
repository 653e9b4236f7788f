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

#include "packmap/ultrametric.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <tuple>
#include <thread>
#include <utility>

#include "packmap/error.hpp"
#include "packmap/parallel.hpp"

namespace packmap {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr Index kNoNode = static_cast<Index>(-1);

struct Edge {
  double weight;
  Index a;
  Index b;
};

// Prim on the dense matrix; the result is sorted by (weight, a, b).
std::vector<Edge> minimum_spanning_tree(const FiniteMetricSpace& space) {
  const std::size_t n = space.size();
  std::vector<Edge> edges;
  if (n < 2) return edges;
  std::vector<bool> in_tree(n, false);
  std::vector<double> best(n, kInf);
  std::vector<Index> from(n, 0);
  in_tree[0] = true;
  for (Index v = 1; v < n; ++v) {
    best[v] = space.distance(0, v);
  }
  for (std::size_t step = 1; step < n; ++step) {
    Index next = kNoNode;
    for (Index v = 0; v < n; ++v) {
      if (!in_tree[v] && (next == kNoNode || best[v] < best[next])) next = v;
    }
    in_tree[next] = true;
    edges.push_back({best[next], std::min(from[next], next),
                     std::max(from[next], next)});
    const auto row = space.row(next);
    for (Index v = 0; v < n; ++v) {
      if (!in_tree[v] && row[v] < best[v]) {
        best[v] = row[v];
        from[v] = next;
      }
    }
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
    return std::tie(x.weight, x.a, x.b) < std::tie(y.weight, y.a, y.b);
  });
  return edges;
}

// Subdominant ultrametric as a dense matrix: u(x,y) is the largest edge on
// the minimum spanning tree path between x and y.
std::vector<double> subdominant_matrix(const FiniteMetricSpace& space) {
  const std::size_t n = space.size();
  std::vector<double> u(n * n, 0.0);
  const auto edges = minimum_spanning_tree(space);
  std::vector<std::vector<std::pair<Index, double>>> adj(n);
  for (const auto& e : edges) {
    adj[e.a].emplace_back(e.b, e.weight);
    adj[e.b].emplace_back(e.a, e.weight);
  }
  std::vector<Index> stack;
  std::vector<bool> seen(n);
  for (Index src = 0; src < n; ++src) {
    std::fill(seen.begin(), seen.end(), false);
    seen[src] = true;
    stack.assign(1, src);
    while (!stack.empty()) {
      const Index v = stack.back();
      stack.pop_back();
      for (const auto& [w, weight] : adj[v]) {
        if (seen[w]) continue;
        seen[w] = true;
        u[src * n + w] = std::max(u[src * n + v], weight);
        stack.push_back(w);
      }
    }
  }
  return u;
}

double distortion_of(const FiniteMetricSpace& space,
                     const std::vector<double>& u) {
  const std::size_t n = space.size();
  double worst = 1.0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      worst = std::max(worst, space.distance(i, j) / u[i * n + j]);
    }
  }
  return worst;
}

}  // namespace

namespace {

bool equals_subdominant(const FiniteMetricSpace& space) {
  const UltraTree tree = subdominant_ultrametric(space);
  for (Index x = 0; x < space.size(); ++x) {
    for (Index y = x + 1; y < space.size(); ++y) {
      if (tree.distance(x, y) != space.distance(x, y)) return false;
    }
  }
  return true;
}

}  // namespace

UltrametricCheck is_ultrametric(const FiniteMetricSpace& space) {
  const std::size_t n = space.size();
  // When d equals its subdominant ultrametric no triple exceeds ratio 1, and
  // the scan below would report exactly (0, 0, 1) with ratio 1.
  if (n >= 2 && equals_subdominant(space)) {
    UltrametricCheck check;
    check.worst_ratio = 1.0;
    check.triple = {0, 0, 1};
    return check;
  }
  // Per x: the worst ratio over z > x, with its z. Rows are independent and
  // reduced in x order afterwards, so the result does not depend on threads.
  std::vector<double> row_worst(n, 0.0);
  std::vector<Index> row_z(n, 0);
  std::atomic<Index> next{0};
  auto work = [&] {
    for (Index x = next++; x < n; x = next++) {
      const auto row_x = space.row(x);
      for (Index z = x + 1; z < n; ++z) {
        const auto row_zz = space.row(z);
        double m = std::numeric_limits<double>::infinity();
        for (Index y = 0; y < n; ++y) {
          m = std::min(m, std::max(row_x[y], row_zz[y]));
        }
        const double worst = row_x[z] / m;
        if (worst > row_worst[x]) {
          row_worst[x] = worst;
          row_z[x] = z;
        }
      }
    }
  };
  const unsigned threads = static_cast<unsigned>(
      std::min<std::size_t>(worker_count(), std::max<std::size_t>(1, n / 64)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  UltrametricCheck check;
  for (Index x = 0; x < n; ++x) {
    if (row_worst[x] <= check.worst_ratio) continue;
    const Index z = row_z[x];
    const auto row_x = space.row(x);
    const auto row_zz = space.row(z);
    for (Index y = 0; y < n; ++y) {
      if (row_x[z] / std::max(row_x[y], row_zz[y]) == row_worst[x]) {
        check.worst_ratio = row_worst[x];
        check.triple = {x, y, z};
        break;
      }
    }
  }
  check.ultrametric = check.worst_ratio <= 1.0 + kMetricRelTol;
  return check;
}

UltraTree::UltraTree(std::size_t leaves, std::vector<Internal> internal)
    : leaves_(leaves) {
  if (leaves == 0) {
    throw Error(ErrorKind::kMismatchedInputs, "tree needs at least one leaf");
  }
  const std::size_t total = leaves + internal.size();
  parent_.assign(total, kNoNode);
  height_.assign(total, 0.0);
  children_.assign(total, {});
  for (std::size_t k = 0; k < internal.size(); ++k) {
    const Index id = leaves + k;
    if (!(internal[k].height > 0.0) || internal[k].children.empty()) {
      throw Error(ErrorKind::kMismatchedInputs,
                  "internal nodes need children and a positive height", {id});
    }
    height_[id] = internal[k].height;
    for (Index c : internal[k].children) {
      if (c >= total || c == id || parent_[c] != kNoNode) {
        throw Error(ErrorKind::kMismatchedInputs, "malformed tree", {id, c});
      }
      parent_[c] = id;
    }
    children_[id] = std::move(internal[k].children);
  }
  std::size_t roots = 0;
  for (Index v = 0; v < total; ++v) {
    if (parent_[v] == kNoNode) {
      root_ = v;
      ++roots;
    }
  }
  if (roots != 1) {
    throw Error(ErrorKind::kMismatchedInputs, "tree must have a single root");
  }
  for (Index v = 0; v < total; ++v) {
    if (parent_[v] != kNoNode && height_[parent_[v]] < height_[v]) {
      throw Error(ErrorKind::kMismatchedInputs,
                  "merge heights must be nondecreasing towards the root", {v});
    }
  }
  // Depth-first traversal: depths and leaf order; also rejects cycles.
  depth_.assign(total, 0);
  std::vector<Index> stack{root_};
  std::size_t visited = 0;
  while (!stack.empty()) {
    const Index v = stack.back();
    stack.pop_back();
    ++visited;
    if (v < leaves_) {
      if (!children_[v].empty()) {
        throw Error(ErrorKind::kMismatchedInputs, "leaves cannot have children",
                    {v});
      }
      leaf_order_.push_back(v);
    }
    for (auto it = children_[v].rbegin(); it != children_[v].rend(); ++it) {
      depth_[*it] = depth_[v] + 1;
      stack.push_back(*it);
    }
  }
  if (visited != total || leaf_order_.size() != leaves_) {
    throw Error(ErrorKind::kMismatchedInputs, "tree is not connected");
  }
}

double UltraTree::distance(Index x, Index y) const {
  if (x >= leaves_ || y >= leaves_) {
    throw Error(ErrorKind::kIndexOutOfRange, "leaf index out of range");
  }
  while (x != y) {
    if (depth_[x] < depth_[y]) std::swap(x, y);
    x = parent_[x];
  }
  return height_[x];
}

FiniteMetricSpace UltraTree::induced_space() const {
  std::vector<double> flat(leaves_ * leaves_, 0.0);
  for (Index x = 0; x < leaves_; ++x) {
    for (Index y = x + 1; y < leaves_; ++y) {
      const double u = distance(x, y);
      flat[x * leaves_ + y] = u;
      flat[y * leaves_ + x] = u;
    }
  }
  return validate_metric(flat, leaves_);
}

UltraTree subdominant_ultrametric(const FiniteMetricSpace& space) {
  const std::size_t n = space.size();
  const auto edges = minimum_spanning_tree(space);
  // Kruskal over the sorted tree edges; each union is a binary merge.
  std::vector<Index> uf(n);
  std::iota(uf.begin(), uf.end(), 0);
  std::vector<Index> cluster_node(n);
  std::iota(cluster_node.begin(), cluster_node.end(), 0);
  std::vector<Index> cluster_min(n);
  std::iota(cluster_min.begin(), cluster_min.end(), 0);
  auto find = [&](Index v) {
    while (uf[v] != v) {
      uf[v] = uf[uf[v]];
      v = uf[v];
    }
    return v;
  };
  std::vector<UltraTree::Internal> internal;
  internal.reserve(n > 0 ? n - 1 : 0);
  for (const auto& e : edges) {
    Index ra = find(e.a);
    Index rb = find(e.b);
    if (cluster_min[ra] > cluster_min[rb]) std::swap(ra, rb);
    internal.push_back({{cluster_node[ra], cluster_node[rb]}, e.weight});
    uf[rb] = ra;
    cluster_node[ra] = n + internal.size() - 1;
  }
  return UltraTree(n, std::move(internal));
}

double ultrametric_distortion(const FiniteMetricSpace& space) {
  return distortion_of(space, subdominant_matrix(space));
}

UltraSubset extract_ultra_subset(const FiniteMetricSpace& space,
                                 double max_distortion, int effort,
                                 std::uint64_t seed, int n_min, int n_max) {
  if (!(max_distortion >= 1.0) || !std::isfinite(max_distortion)) {
    throw Error(ErrorKind::kInvalidDistortion, "distortion must be >= 1");
  }
  const std::size_t n = space.size();
  std::vector<bool> keep(n, true);
  auto current = [&] {
    IndexSet s;
    for (Index i = 0; i < n; ++i) {
      if (keep[i]) s.push_back(i);
    }
    return s;
  };

  // Removal phase.
  IndexSet removed;
  while (true) {
    const IndexSet s = current();
    if (s.size() < 3) break;  // one and two point spaces are ultrametric
    const FiniteMetricSpace sub = space.restrict(s);
    const auto u = subdominant_matrix(sub);
    const std::size_t m = s.size();
    double worst = 1.0;
    std::size_t wa = 0, wb = 0;
    std::vector<std::size_t> violations(m, 0);
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = a + 1; b < m; ++b) {
        const double ratio = sub.distance(a, b) / u[a * m + b];
        if (ratio > max_distortion) {
          ++violations[a];
          ++violations[b];
        }
        if (ratio > worst) {
          worst = ratio;
          wa = a;
          wb = b;
        }
      }
    }
    if (worst <= max_distortion) break;
    const std::size_t drop = violations[wa] > violations[wb] ? wa : wb;
    keep[s[drop]] = false;
    removed.push_back(s[drop]);
  }

  // Re-insertion phase: accept any dropped point that keeps the bound.
  std::mt19937_64 rng(seed);
  for (int pass = 0; pass < effort && !removed.empty(); ++pass) {
    std::shuffle(removed.begin(), removed.end(), rng);
    bool changed = false;
    for (auto it = removed.begin(); it != removed.end();) {
      keep[*it] = true;
      const FiniteMetricSpace sub = space.restrict(current());
      if (ultrametric_distortion(sub) <= max_distortion) {
        it = removed.erase(it);
        changed = true;
      } else {
        keep[*it] = false;
        ++it;
      }
    }
    if (!changed) break;
  }

  UltraSubset out;
  out.subset = current();
  out.distortion = ultrametric_distortion(space.restrict(out.subset));
  try {
    out.profile = dimension_profile(space, out.subset, n_min, n_max);
    out.profile_valid = true;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kDegenerateScaleWindow) throw;
  }
  return out;
}

namespace {

void check_permutation(const FiniteMetricSpace& space,
                       const std::vector<Index>& order) {
  std::vector<bool> seen(space.size(), false);
  if (order.size() != space.size()) {
    throw Error(ErrorKind::kMismatchedInputs, "order must list every point");
  }
  for (Index v : order) {
    if (v >= space.size() || seen[v]) {
      throw Error(ErrorKind::kMismatchedInputs, "order is not a permutation",
                  {v});
    }
    seen[v] = true;
  }
}

}  // namespace

double monotone_constant(const FiniteMetricSpace& space,
                         const std::vector<Index>& order) {
  check_permutation(space, order);
  const std::size_t n = order.size();
  double c = 1.0;
  // For each left endpoint x, sweep y rightwards keeping the running max of
  // d(x, z) over z in (x, y].
  for (std::size_t i = 0; i < n; ++i) {
    const Index x = order[i];
    double reach = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dxy = space.distance(x, order[j]);
      reach = std::max(reach, dxy);
      c = std::max(c, reach / dxy);
    }
  }
  while (!is_monotone(space, order, c)) c = std::nextafter(c, kInf);
  return c;
}

bool is_monotone(const FiniteMetricSpace& space,
                 const std::vector<Index>& order, double c) {
  check_permutation(space, order);
  const std::size_t n = order.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Index x = order[i];
    double reach = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dxy = space.distance(x, order[j]);
      reach = std::max(reach, dxy);
      if (reach > c * dxy) return false;
    }
  }
  return true;
}

MonotoneOrder monotone_order_from_tree(const FiniteMetricSpace& space,
                                       const UltraTree& tree) {
  if (tree.leaf_count() != space.size()) {
    throw Error(ErrorKind::kMismatchedInputs,
                "tree leaves must match the space points");
  }
  MonotoneOrder out;
  out.order = tree.leaf_order();
  out.c = monotone_constant(space, out.order);
  return out;
}

}  // namespace packmap
