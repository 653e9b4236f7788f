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

#include "packmap/extension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "packmap/error.hpp"

namespace packmap {

ExtensionProblem::ExtensionProblem(FiniteMetricSpace space,
                                   std::vector<Index> subset,
                                   std::vector<double> values)
    : space_(std::move(space)), slot_(space_.size(), kAbsent) {
  if (subset.empty()) throw Error(ErrorKind::kEmptyF, "subset F is empty");
  if (subset.size() != values.size()) {
    throw Error(ErrorKind::kMismatchedInputs,
                "need exactly one value per point of F");
  }
  std::vector<std::pair<Index, double>> pairs;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    space_.check_index(subset[i]);
    if (!std::isfinite(values[i])) {
      throw Error(ErrorKind::kNonFinite, "non-finite value on F", {subset[i]});
    }
    pairs.emplace_back(subset[i], values[i]);
  }
  std::sort(pairs.begin(), pairs.end());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (i > 0 && pairs[i].first == pairs[i - 1].first) {
      throw Error(ErrorKind::kMismatchedInputs, "duplicate point in F",
                  {pairs[i].first});
    }
    slot_[pairs[i].first] = subset_.size();
    subset_.push_back(pairs[i].first);
    values_.push_back(pairs[i].second);
  }
}

double ExtensionProblem::value_at(Index x) const {
  space_.check_index(x);
  if (!in_subset(x)) {
    throw Error(ErrorKind::kNotInF,
                "point " + std::to_string(x) + " is not in F", {x});
  }
  return values_[slot_[x]];
}

double s_sup(const ExtensionProblem& problem, Index x, double r) {
  const double fx = problem.value_at(x);
  if (!(r > 0.0)) {
    throw Error(ErrorKind::kNonpositiveParameter, "radius must be > 0");
  }
  double best = fx;
  const auto& space = problem.space();
  for (std::size_t i = 0; i < problem.subset().size(); ++i) {
    if (space.distance(x, problem.subset()[i]) <= 3.0 * r) {
      best = std::max(best, problem.values()[i]);
    }
  }
  return best;
}

double bump_value(const ExtensionProblem& problem, Index x, double r,
                  Index y) {
  const double s = s_sup(problem, x, r);
  const double d = problem.space().distance(x, y);
  return d <= r ? s : s + (d - r) / r;
}

namespace {

// Step function r -> s(x, r) for one center: breakpoints[k] = d(x,z)/3
// ascending (breakpoints[0] = 0 from z = x) and the step value on
// [breakpoints[k], breakpoints[k+1]).
struct StepFunction {
  std::vector<double> breakpoints;
  std::vector<double> steps;
};

StepFunction build_steps(const ExtensionProblem& problem, Index x) {
  std::vector<std::pair<double, double>> events;
  const auto& space = problem.space();
  for (std::size_t i = 0; i < problem.subset().size(); ++i) {
    events.emplace_back(space.distance(x, problem.subset()[i]) / 3.0,
                        problem.values()[i]);
  }
  std::sort(events.begin(), events.end());
  StepFunction step;
  double running = -std::numeric_limits<double>::infinity();
  for (const auto& [b, v] : events) {
    running = std::max(running, v);
    if (!step.breakpoints.empty() && step.breakpoints.back() == b) {
      step.steps.back() = running;
    } else {
      step.breakpoints.push_back(b);
      step.steps.push_back(running);
    }
  }
  return step;
}

void check_unit_range(const ExtensionProblem& problem) {
  for (std::size_t i = 0; i < problem.values().size(); ++i) {
    const double v = problem.values()[i];
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorKind::kOutOfRangeValues,
                  "bounded extension needs values in [0, 1]",
                  {problem.subset()[i]});
    }
  }
}

}  // namespace

ExtensionResult extend_bounded(const ExtensionProblem& problem) {
  check_unit_range(problem);
  const auto& space = problem.space();
  const auto& subset = problem.subset();

  std::vector<StepFunction> steps;
  steps.reserve(subset.size());
  for (Index x : subset) steps.push_back(build_steps(problem, x));

  ExtensionResult result;
  result.mode = ExtensionMode::kBounded;
  result.values.resize(space.size());
  result.diagnostics.resize(space.size());
  for (Index y = 0; y < space.size(); ++y) {
    double best = std::numeric_limits<double>::infinity();
    ExtensionWitness witness;
    for (std::size_t c = 0; c < subset.size(); ++c) {
      const StepFunction& step = steps[c];
      const double d = space.distance(subset[c], y);
      const std::size_t last = step.breakpoints.size() - 1;
      for (std::size_t k = 0; k <= last; ++k) {
        double value;
        double radius;
        bool limit = false;
        const bool reaches = k == last || d < step.breakpoints[k + 1];
        if (reaches) {
          // Some r in [b_k, b_{k+1}) has r >= d: value s_k, and later
          // intervals only have larger steps.
          value = step.steps[k];
          radius = std::max(d, step.breakpoints[k]);
          if (radius == 0.0) {
            // y = x: any r in (0, b_1) attains s_0.
            radius = k == last ? 1.0 : step.breakpoints[k + 1] / 2;
          }
        } else {
          // Every r in the interval is < d: decreasing in r, infimum at the
          // right end with the pre-jump step.
          const double right = step.breakpoints[k + 1];
          value = step.steps[k] + d / right - 1.0;
          radius = right;
          limit = true;
        }
        if (value < best) {
          best = value;
          witness = {subset[c], radius, limit, false};
        }
        if (reaches) break;
      }
    }
    if (best >= 1.0) {
      best = 1.0;
      witness.capped = true;
    }
    result.values[y] = best;
    result.diagnostics[y] = witness;
  }
  return result;
}

ExtensionResult extend_unbounded(const ExtensionProblem& problem) {
  constexpr double kPi = std::numbers::pi;
  std::vector<double> squashed;
  squashed.reserve(problem.values().size());
  for (double v : problem.values()) {
    squashed.push_back(std::atan(v) / kPi + 0.5);
  }
  const ExtensionProblem bounded(problem.space(), problem.subset(),
                                 std::move(squashed));
  ExtensionResult result = extend_bounded(bounded);
  result.mode = ExtensionMode::kUnbounded;
  const auto& space = problem.space();
  for (Index y = 0; y < space.size(); ++y) {
    const double g_star = (result.values[y] - 0.5) * kPi;
    const double damping = std::exp(-distance_to_set(space, y, problem.subset()));
    result.values[y] = std::tan(g_star * damping);
  }
  return result;
}

namespace {

void record(CheckTally& tally, double bound, double lhs, double tolerance,
            std::vector<Index> witness, double parameter) {
  const double slack = bound - lhs;
  if (tally.checked == 0 || slack < tally.worst_slack) tally.worst_slack = slack;
  ++tally.checked;
  if (slack < -tolerance) {
    if (tally.failures == 0) {
      tally.witness = std::move(witness);
      tally.witness_parameter = parameter;
    }
    ++tally.failures;
  }
}

}  // namespace

ExtensionVerification verify_extension(const ExtensionProblem& problem,
                                       const ExtensionResult& result,
                                       const std::vector<double>& grid,
                                       const std::vector<double>& epsilons,
                                       double tolerance) {
  const auto& space = problem.space();
  const std::size_t n = space.size();
  if (result.values.size() != n || result.mode != ExtensionMode::kBounded) {
    throw Error(ErrorKind::kMismatchedInputs,
                "verification needs a bounded extension over the same space");
  }
  for (double eps : epsilons) {
    if (!(eps > 0.0)) {
      throw Error(ErrorKind::kNonpositiveParameter, "epsilon must be > 0");
    }
  }
  const auto& subset = problem.subset();
  const auto& f = problem.values();
  const auto& fs = result.values;

  ExtensionVerification report;
  report.epsilons = epsilons;
  report.restriction_exact = true;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (fs[subset[i]] != f[i]) report.restriction_exact = false;
  }

  for (std::size_t i = 0; i < subset.size(); ++i) {
    const Index x = subset[i];
    std::vector<double> radii = grid;
    if (radii.empty()) {
      for (double d : space.row(x)) {
        if (d > 0.0) radii.push_back(d);
      }
      std::sort(radii.begin(), radii.end());
      radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
    }
    for (double r : radii) {
      // w_f(x, 3r) over F.
      double hat_f = 0.0;
      for (std::size_t j = 0; j < subset.size(); ++j) {
        if (space.distance(x, subset[j]) <= 3.0 * r) {
          hat_f = std::max(hat_f, std::abs(f[j] - f[i]));
        }
      }
      double hat_star = 0.0;
      Index worst = x;
      for (Index y = 0; y < n; ++y) {
        if (space.distance(x, y) > r) continue;
        record(report.oscillation_bound, hat_f, std::abs(fs[y] - f[i]),
               tolerance, {x, y}, r);
        const double dev = std::abs(fs[y] - fs[x]);
        if (dev > hat_star) {
          hat_star = dev;
          worst = y;
        }
      }
      record(report.transfer_bound, hat_f, hat_star, tolerance, {x, worst}, r);
    }
  }

  for (double eps : epsilons) {
    IndexSet outside;
    for (Index y = 0; y < n; ++y) {
      if (distance_to_set(space, y, subset) > eps) outside.push_back(y);
    }
    for (std::size_t a = 0; a < outside.size(); ++a) {
      for (std::size_t b = a + 1; b < outside.size(); ++b) {
        const Index y = outside[a];
        const Index z = outside[b];
        record(report.off_set_lipschitz, 2.0 / eps * space.distance(y, z),
               std::abs(fs[y] - fs[z]), tolerance, {y, z}, eps);
      }
    }
  }

  report.passed = report.restriction_exact &&
                  report.oscillation_bound.failures == 0 &&
                  report.off_set_lipschitz.failures == 0 &&
                  report.transfer_bound.failures == 0;
  return report;
}

}  // namespace packmap
