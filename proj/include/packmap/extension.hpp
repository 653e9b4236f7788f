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

// Little Lipschitz extension from a subset F to the whole space.
//
// For x in F and r > 0 let s(x,r) = max f(B(x,3r) n F) and
//
//   f_{x,r}(y) = s(x,r)                     if d(x,y) <= r,
//              = s(x,r) + (d(x,y) - r) / r  otherwise.
//
// The extension is f*(y) = min(1, inf_{x in F, r > 0} f_{x,r}(y)). For fixed
// (x, y), s(x, .) is a right-continuous step function with jumps at
// d(x,z)/3, z in F, and f_{x,.}(y) is constant in r once r >= d(x,y) and
// strictly decreasing before. The infimum over each step interval is then
// available in closed form, so f* is computed exactly, with no radius grid.
//
// Unbounded values go through atan, an affine map onto (0,1), the bounded
// extension, and back through tan(g*(y) exp(-dist(y,F))).

#ifndef PACKMAP_EXTENSION_HPP_
#define PACKMAP_EXTENSION_HPP_

#include <cstddef>
#include <vector>

#include "packmap/metric_space.hpp"

namespace packmap {

inline constexpr double kVerifyTolerance = 1e-12;

class ExtensionProblem {
 public:
  // `values[i]` is f(subset[i]); `subset` need not be sorted but must be
  // duplicate-free. Errors: EmptyF, MismatchedInputs, IndexOutOfRange,
  // NonFinite.
  ExtensionProblem(FiniteMetricSpace space, std::vector<Index> subset,
                   std::vector<double> values);

  const FiniteMetricSpace& space() const noexcept { return space_; }
  const IndexSet& subset() const noexcept { return subset_; }
  // Values aligned with subset().
  const std::vector<double>& values() const noexcept { return values_; }

  bool in_subset(Index x) const { return slot_[x] != kAbsent; }
  // f(x); throws NotInF for points outside F.
  double value_at(Index x) const;

 private:
  static constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);

  FiniteMetricSpace space_;
  IndexSet subset_;
  std::vector<double> values_;
  std::vector<std::size_t> slot_;
};

enum class ExtensionMode { kBounded, kUnbounded };

// Where the infimum for f*(y) was realized.
struct ExtensionWitness {
  Index center = 0;
  double radius = 0.0;
  bool limit = false;   // approached as r increases to `radius`, not attained
  bool capped = false;  // the outer min with 1 was active
};

struct ExtensionResult {
  std::vector<double> values;  // f* on every point
  ExtensionMode mode = ExtensionMode::kBounded;
  std::vector<ExtensionWitness> diagnostics;
};

// max f over F-points within 3r of x. Errors: NotInF, NonpositiveParameter.
double s_sup(const ExtensionProblem& problem, Index x, double r);

// Value of f_{x,r}(y) straight from the definition.
double bump_value(const ExtensionProblem& problem, Index x, double r, Index y);

// Errors: OutOfRangeValues when some f(x) is outside [0, 1].
ExtensionResult extend_bounded(const ExtensionProblem& problem);

ExtensionResult extend_unbounded(const ExtensionProblem& problem);

struct CheckTally {
  std::size_t checked = 0;
  std::size_t failures = 0;
  double worst_slack = 0.0;  // min over checks of (bound - lhs)
  std::vector<Index> witness;  // first failure, when any
  double witness_parameter = 0.0;  // its radius or epsilon
};

struct ExtensionVerification {
  bool restriction_exact = false;  // f*|F == f bitwise
  CheckTally oscillation_bound;    // |f*(y) - f(x)| <= w_f(x, 3r), y in B(x,r)
  CheckTally off_set_lipschitz;    // (2/eps)-Lipschitz outside F^eps
  CheckTally transfer_bound;       // w_{f*}(x, r) <= w_f(x, 3r) on F
  std::vector<double> epsilons;
  bool passed = false;
};

// Exhaustive checks on finite data. `grid` empty means each x in F uses the
// distinct distances d(x, y), y in X. Comparisons allow `tolerance` of
// absolute floating-point slack. Errors: MismatchedInputs.
ExtensionVerification verify_extension(const ExtensionProblem& problem,
                                       const ExtensionResult& result,
                                       const std::vector<double>& grid,
                                       const std::vector<double>& epsilons,
                                       double tolerance = kVerifyTolerance);

}  // namespace packmap

#endif  // PACKMAP_EXTENSION_HPP_
