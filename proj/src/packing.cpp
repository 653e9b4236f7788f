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

#include "packmap/packing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <thread>

#include "packmap/error.hpp"
#include "packmap/parallel.hpp"

namespace packmap {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_parameters(double s, double delta) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw Error(ErrorKind::kNonpositiveParameter, "exponent s must be > 0");
  }
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw Error(ErrorKind::kNonpositiveParameter, "scale delta must be > 0");
  }
}

// Distances among the points of a sorted subset, indexed locally.
class LocalMetric {
 public:
  LocalMetric(const FiniteMetricSpace& space, const IndexSet& set)
      : m_(set.size()), d_(m_ * m_) {
    for (std::size_t a = 0; a < m_; ++a) {
      for (std::size_t b = 0; b < m_; ++b) {
        d_[a * m_ + b] = space.distance(set[a], set[b]);
      }
    }
  }
  std::size_t size() const { return m_; }
  double operator()(std::size_t a, std::size_t b) const {
    return d_[a * m_ + b];
  }

 private:
  std::size_t m_;
  std::vector<double> d_;
};

// Sum over members (ascending) of min(delta, nn)^s. Every code path that
// reports a pre-measure value goes through here.
double local_value(const LocalMetric& d, const std::vector<std::size_t>& members,
                   double s, double delta) {
  const double full = std::pow(delta, s);
  double value = 0.0;
  for (std::size_t a : members) {
    double nn = kInf;
    for (std::size_t b : members) {
      if (a != b) nn = std::min(nn, d(a, b));
    }
    value += nn >= delta ? full : std::pow(nn, s);
  }
  return value;
}

void fill_witness(const FiniteMetricSpace& space, PremeasureResult& result,
                  double delta) {
  result.witness_radii.clear();
  result.limit_radius.clear();
  for (Index i : result.witness) {
    const double nn = distance_to_set(space, i, [&] {
      IndexSet others;
      for (Index j : result.witness) {
        if (j != i) others.push_back(j);
      }
      return others;
    }());
    result.witness_radii.push_back(std::min(delta, nn));
    result.limit_radius.push_back(nn <= delta);
  }
}

// True when the set encoded by `a` precedes the one encoded by `b`
// lexicographically (as sorted index sequences).
bool mask_lex_less(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t diff = a ^ b;
  if (diff == 0) return false;
  const std::uint64_t low = diff & (~diff + 1);
  const std::uint64_t above = ~((low << 1) - 1);
  if (a & low) return (b & above) != 0;
  return (a & above) == 0;
}

struct MaskBest {
  double value = -1.0;
  std::uint64_t mask = 0;
};

bool better(const MaskBest& lhs, const MaskBest& rhs) {
  if (lhs.value != rhs.value) return lhs.value > rhs.value;
  return mask_lex_less(lhs.mask, rhs.mask);
}

}  // namespace

double packing_value(const FiniteMetricSpace& space, const IndexSet& centers,
                     double s, double delta) {
  check_parameters(s, delta);
  space.check_indices(centers);
  LocalMetric d(space, centers);
  std::vector<std::size_t> members(centers.size());
  std::iota(members.begin(), members.end(), 0);
  return local_value(d, members, s, delta);
}

PremeasureResult premeasure_exact(const FiniteMetricSpace& space,
                                  const IndexSet& set, double s, double delta,
                                  std::size_t cap) {
  check_parameters(s, delta);
  space.check_indices(set);
  if (set.size() > cap || set.size() > 40) {
    throw Error(ErrorKind::kTooLarge,
                std::to_string(set.size()) +
                    " points exceed the brute-force cap of " +
                    std::to_string(std::min<std::size_t>(cap, 40)));
  }
  PremeasureResult result;
  result.exact = true;
  if (set.empty()) return result;

  const LocalMetric d(space, set);
  const std::size_t m = set.size();
  const std::uint64_t total = (std::uint64_t{1} << m) - 1;  // nonempty masks
  const unsigned workers = static_cast<unsigned>(
      std::min<std::uint64_t>(worker_count(), std::max<std::uint64_t>(1, total / 4096)));

  std::vector<MaskBest> best(workers);
  auto scan = [&](unsigned w) {
    std::vector<std::size_t> members;
    members.reserve(m);
    const std::uint64_t begin = 1 + total * w / workers;
    const std::uint64_t end = 1 + total * (w + 1) / workers;
    MaskBest local;
    for (std::uint64_t mask = begin; mask < end; ++mask) {
      members.clear();
      for (std::size_t a = 0; a < m; ++a) {
        if (mask >> a & 1) members.push_back(a);
      }
      const MaskBest candidate{local_value(d, members, s, delta), mask};
      if (local.value < 0.0 || better(candidate, local)) local = candidate;
    }
    best[w] = local;
  };
  if (workers == 1) {
    scan(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(scan, w);
    for (auto& t : pool) t.join();
  }
  MaskBest overall = best.front();
  for (const auto& b : best) {
    if (b.value >= 0.0 && better(b, overall)) overall = b;
  }
  for (std::size_t a = 0; a < m; ++a) {
    if (overall.mask >> a & 1) result.witness.push_back(set[a]);
  }
  result.value = overall.value;
  fill_witness(space, result, delta);
  return result;
}

namespace {

// Incrementally maintained center set for the local search.
class SearchState {
 public:
  SearchState(const LocalMetric& d, double s, double delta)
      : d_(d), s_(s), delta_(delta), in_(d.size(), false), nn_(d.size(), kInf) {}

  bool contains(std::size_t p) const { return in_[p]; }
  std::size_t count() const { return count_; }

  double term(double nn) const {
    return std::pow(std::min(delta_, nn), s_);
  }

  double gain_add(std::size_t p) const {
    double nn_p = kInf;
    double gain = 0.0;
    for (std::size_t j = 0; j < in_.size(); ++j) {
      if (!in_[j]) continue;
      const double dj = d_(p, j);
      nn_p = std::min(nn_p, dj);
      if (dj < nn_[j]) gain += term(dj) - term(nn_[j]);
    }
    return gain + term(nn_p);
  }

  double gain_remove(std::size_t p) const {
    double gain = -term(nn_[p]);
    for (std::size_t j = 0; j < in_.size(); ++j) {
      if (!in_[j] || j == p) continue;
      if (d_(p, j) == nn_[j]) gain += term(nn_without(j, p)) - term(nn_[j]);
    }
    return gain;
  }

  void add(std::size_t p) {
    double nn_p = kInf;
    for (std::size_t j = 0; j < in_.size(); ++j) {
      if (!in_[j]) continue;
      nn_p = std::min(nn_p, d_(p, j));
      nn_[j] = std::min(nn_[j], d_(p, j));
    }
    nn_[p] = nn_p;
    in_[p] = true;
    ++count_;
  }

  void remove(std::size_t p) {
    in_[p] = false;
    --count_;
    for (std::size_t j = 0; j < in_.size(); ++j) {
      if (in_[j] && d_(p, j) == nn_[j]) nn_[j] = nn_without(j, kNone);
    }
    nn_[p] = kInf;
  }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < in_.size(); ++j) {
      if (in_[j]) out.push_back(j);
    }
    return out;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  double nn_without(std::size_t j, std::size_t skip) const {
    double nn = kInf;
    for (std::size_t k = 0; k < in_.size(); ++k) {
      if (in_[k] && k != j && k != skip) nn = std::min(nn, d_(j, k));
    }
    return nn;
  }

  const LocalMetric& d_;
  double s_;
  double delta_;
  std::vector<bool> in_;
  std::vector<double> nn_;
  std::size_t count_ = 0;
};

constexpr std::size_t kSwapNeighbors = 6;

}  // namespace

PremeasureResult premeasure_heuristic(const FiniteMetricSpace& space,
                                      const IndexSet& set, double s,
                                      double delta, int effort,
                                      std::uint64_t seed) {
  check_parameters(s, delta);
  space.check_indices(set);
  PremeasureResult result;
  result.exact = false;
  if (set.empty()) return result;

  const LocalMetric d(space, set);
  const std::size_t m = d.size();
  std::mt19937_64 rng(seed);

  // Nearest neighbors by distance, used to restrict swap moves.
  std::vector<std::vector<std::size_t>> near(m);
  std::vector<double> isolation(m, kInf);
  for (std::size_t a = 0; a < m; ++a) {
    std::vector<std::size_t> others;
    for (std::size_t b = 0; b < m; ++b) {
      if (b != a) others.push_back(b);
    }
    std::sort(others.begin(), others.end(), [&](std::size_t x, std::size_t y) {
      return d(a, x) != d(a, y) ? d(a, x) < d(a, y) : x < y;
    });
    if (!others.empty()) isolation[a] = d(a, others.front());
    others.resize(std::min(others.size(), kSwapNeighbors));
    near[a] = std::move(others);
  }

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return isolation[x] > isolation[y];
  });

  SearchState state(d, s, delta);
  for (std::size_t p : order) {
    if (state.count() == 0 || state.gain_add(p) > 0.0) state.add(p);
  }

  std::vector<std::size_t> best_members = state.members();
  double best_value = local_value(d, best_members, s, delta);

  auto improving = [](double gain, double scale) {
    return gain > 1e-13 * std::max(1.0, scale);
  };

  std::vector<std::size_t> moves(m);
  std::iota(moves.begin(), moves.end(), 0);
  int passes = 0;
  while (passes < effort) {
    // Descend to a local optimum.
    bool improved = true;
    while (improved && passes < effort) {
      improved = false;
      ++passes;
      std::shuffle(moves.begin(), moves.end(), rng);
      for (std::size_t p : moves) {
        if (state.contains(p)) {
          if (state.count() > 1 && improving(state.gain_remove(p), best_value)) {
            state.remove(p);
            improved = true;
            continue;
          }
        } else {
          if (improving(state.gain_add(p), best_value)) {
            state.add(p);
            improved = true;
            continue;
          }
          // Swap p in for a nearby center.
          for (std::size_t q : near[p]) {
            if (!state.contains(q) || state.count() < 1) continue;
            const double out_gain = state.gain_remove(q);
            state.remove(q);
            const double in_gain = state.gain_add(p);
            if (improving(out_gain + in_gain, best_value)) {
              state.add(p);
              improved = true;
              break;
            }
            state.add(q);
          }
        }
      }
    }
    std::vector<std::size_t> members = state.members();
    const double value = local_value(d, members, s, delta);
    if (value > best_value ||
        (value == best_value &&
         std::lexicographical_compare(members.begin(), members.end(),
                                      best_members.begin(), best_members.end()))) {
      best_value = value;
      best_members = std::move(members);
    }
    if (passes >= effort) break;
    // Perturb a few memberships and descend again.
    const std::size_t kicks = std::max<std::size_t>(1, m / 5);
    std::uniform_int_distribution<std::size_t> pick(0, m - 1);
    for (std::size_t k = 0; k < kicks; ++k) {
      const std::size_t p = pick(rng);
      if (state.contains(p)) {
        if (state.count() > 1) state.remove(p);
      } else {
        state.add(p);
      }
    }
  }

  for (std::size_t a : best_members) result.witness.push_back(set[a]);
  result.value = best_value;
  fill_witness(space, result, delta);
  return result;
}

DimensionProfile dimension_profile(const FiniteMetricSpace& space,
                                   const IndexSet& set, int n_min, int n_max) {
  space.check_indices(set);
  if (n_min < 0 || n_min >= n_max) {
    throw Error(ErrorKind::kDegenerateScaleWindow,
                "scale window requires 0 <= n_min < n_max");
  }
  DimensionProfile profile;
  const double diam = set_diam(space, set);
  profile.rescale_factor = diam > 1.0 ? 1.0 / diam : 1.0;

  std::vector<double> xs, ys;
  for (int n = n_min; n <= n_max; ++n) {
    const double scale = std::ldexp(1.0, -n);
    const IndexSet net =
        separated_net(space, set, scale / profile.rescale_factor);
    const bool use = net.size() > 1 && net.size() < set.size();
    profile.levels.push_back(n);
    profile.scales.push_back(scale);
    profile.counts.push_back(net.size());
    profile.used.push_back(use);
    if (use) {
      xs.push_back(n);
      ys.push_back(std::log2(static_cast<double>(net.size())));
    }
  }
  if (xs.size() < 2) {
    throw Error(ErrorKind::kDegenerateScaleWindow,
                "fewer than two unsaturated scales in [" +
                    std::to_string(n_min) + ", " + std::to_string(n_max) + "]");
  }
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  profile.slope = sxy / sxx;
  profile.dim_estimate = profile.slope;
  return profile;
}

MassDistribution::MassDistribution(std::vector<double> weights)
    : weights_(std::move(weights)) {
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!std::isfinite(weights_[i])) {
      throw Error(ErrorKind::kNonFinite, "non-finite weight", {i});
    }
    if (weights_[i] < 0.0) {
      throw Error(ErrorKind::kNonpositiveParameter, "negative weight", {i});
    }
    total_ += weights_[i];
  }
}

MassDistribution MassDistribution::uniform(std::size_t n, double weight) {
  return MassDistribution(std::vector<double>(n, weight));
}

MassDistribution MassDistribution::scaled(double c) const {
  std::vector<double> w = weights_;
  for (double& v : w) v *= c;
  return MassDistribution(std::move(w));
}

double ball_mass(const FiniteMetricSpace& space, const MassDistribution& mu,
                 Index x, double r) {
  const auto row = space.row(x);
  double mass = 0.0;
  for (Index y = 0; y < row.size(); ++y) {
    if (row[y] <= r) mass += mu.weights()[y];
  }
  return mass;
}

std::vector<double> default_radius_grid(const FiniteMetricSpace& space,
                                        const IndexSet& set,
                                        std::size_t max_size) {
  space.check_indices(set);
  std::vector<double> values;
  for (std::size_t a = 0; a < set.size(); ++a) {
    for (std::size_t b = a + 1; b < set.size(); ++b) {
      values.push_back(space.distance(set[a], set[b]));
    }
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  if (values.size() > max_size && max_size >= 2) {
    // Smallest distance at or above each geometric target.
    std::vector<double> picked;
    const double lo = values.front();
    const double hi = values.back();
    for (std::size_t k = 0; k < max_size; ++k) {
      const double target =
          lo * std::pow(hi / lo, static_cast<double>(k) / (max_size - 1));
      auto it = std::lower_bound(values.begin(), values.end(), target);
      if (it == values.end()) --it;
      if (picked.empty() || *it != picked.back()) picked.push_back(*it);
    }
    values = std::move(picked);
  }
  std::reverse(values.begin(), values.end());
  return values;
}

namespace {

std::vector<double> normalized_grid(std::vector<double> grid) {
  if (grid.empty()) throw Error(ErrorKind::kEmptyGrid, "radius grid is empty");
  for (double r : grid) {
    if (!(r > 0.0) || !std::isfinite(r)) {
      throw Error(ErrorKind::kNonpositiveParameter,
                  "grid radii must be finite and positive");
    }
  }
  std::sort(grid.begin(), grid.end(), std::greater<>());
  return grid;
}

void check_mass(const FiniteMetricSpace& space, const MassDistribution& mu) {
  if (mu.size() != space.size()) {
    throw Error(ErrorKind::kMismatchedInputs,
                "mass distribution must have one weight per point");
  }
}

}  // namespace

FrostmanReport frostman_check(const FiniteMetricSpace& space,
                              const MassDistribution& mu, double s,
                              std::vector<double> grid) {
  check_mass(space, mu);
  if (!(s > 0.0)) {
    throw Error(ErrorKind::kNonpositiveParameter, "exponent s must be > 0");
  }
  FrostmanReport report;
  report.grid = normalized_grid(std::move(grid));
  report.all_pass = true;
  for (Index x = 0; x < space.size(); ++x) {
    FrostmanPoint pt;
    pt.best_margin = -kInf;
    for (double r : report.grid) {
      const double margin = std::pow(r, s) - ball_mass(space, mu, x, r);
      if (margin > pt.best_margin) {
        pt.best_margin = margin;
        pt.best_radius = r;
      }
    }
    pt.passes = pt.best_margin >= 0.0;
    report.all_pass = report.all_pass && pt.passes;
    report.points.push_back(pt);
  }
  return report;
}

FrostmanRescale frostman_rescale(const FiniteMetricSpace& space,
                                 const MassDistribution& mu, double s,
                                 std::vector<double> grid) {
  check_mass(space, mu);
  if (!(mu.total() > 0.0)) {
    throw Error(ErrorKind::kZeroTotalMass, "mass distribution has zero total");
  }
  grid = normalized_grid(std::move(grid));
  double c = kInf;
  for (Index x = 0; x < space.size(); ++x) {
    double best = 0.0;
    for (double r : grid) {
      const double mass = ball_mass(space, mu, x, r);
      best = std::max(best, mass > 0.0 ? std::pow(r, s) / mass : kInf);
    }
    c = std::min(c, best);
  }
  // c * mu B(x, r) may round above r^s; step c down until the check passes.
  FrostmanRescale out{c, mu.scaled(c)};
  for (int guard = 0; guard < 64; ++guard) {
    if (frostman_check(space, out.rescaled, s, grid).all_pass) break;
    out.c = std::nextafter(out.c, 0.0);
    out.rescaled = mu.scaled(out.c);
  }
  return out;
}

std::vector<std::pair<double, double>> density_profile(
    const FiniteMetricSpace& space, const MassDistribution& mu, Index x,
    std::vector<double> grid, double s) {
  check_mass(space, mu);
  space.check_index(x);
  if (grid.empty()) throw Error(ErrorKind::kEmptyGrid, "radius grid is empty");
  std::vector<std::pair<double, double>> profile;
  for (double r : grid) {
    if (!(r > 0.0)) {
      throw Error(ErrorKind::kNonpositiveParameter, "grid radii must be > 0");
    }
    profile.emplace_back(r, ball_mass(space, mu, x, r) / std::pow(r, s));
  }
  return profile;
}

}  // namespace packmap
