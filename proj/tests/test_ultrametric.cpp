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

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "packmap/error.hpp"
#include "packmap/ultrametric.hpp"
#include "support.hpp"

using namespace packmap;
using packmap::testing::Rng;

TEST_CASE("is_ultrametric") {
  CHECK(is_ultrametric(testing::line_space({0, 1})).ultrametric);
  const auto line = testing::line_space({0, 1, 2});
  const auto c = is_ultrametric(line);
  CHECK_FALSE(c.ultrametric);
  CHECK(c.worst_ratio == 2.0);
  CHECK(c.triple == std::array<Index, 3>{0, 1, 2});
}

TEST_CASE("subdominant ultrametric of the line") {
  const auto line = testing::line_space({0, 1, 2});
  const auto tree = subdominant_ultrametric(line);
  CHECK(tree.distance(0, 2) == 1.0);
  CHECK(tree.distance(0, 1) == 1.0);
  const auto one = testing::line_space({0});
  const auto t1 = subdominant_ultrametric(one);
  CHECK(t1.leaf_count() == 1);
  CHECK(t1.leaf_order() == std::vector<Index>{0});
}

TEST_CASE("subdominant ultrametric properties") {
  Rng rng(31);
  for (int t = 0; t < 30; ++t) {
    const auto space = testing::random_plane_space(rng, 18);
    const auto tree = subdominant_ultrametric(space);
    const auto u = tree.induced_space();
    CHECK(is_ultrametric(u).ultrametric);
    for (Index i = 0; i < 18; ++i) {
      for (Index j = 0; j < 18; ++j) CHECK(u.distance(i, j) <= space.distance(i, j));
    }
    // Largest ultrametric below d: u(i,j) is the minimax path length, the
    // smallest h with i and j joined by steps of length <= h.
    for (Index i = 0; i < 18; ++i) {
      for (Index j = i + 1; j < 18; ++j) {
        const double h = u.distance(i, j);
        std::vector<bool> seen(18, false);
        std::vector<Index> stack{i};
        seen[i] = true;
        while (!stack.empty()) {
          const Index a = stack.back();
          stack.pop_back();
          for (Index b = 0; b < 18; ++b) {
            if (!seen[b] && space.distance(a, b) < h) {
              seen[b] = true;
              stack.push_back(b);
            }
          }
        }
        CHECK_FALSE(seen[j]);
      }
    }
  }
}

TEST_CASE("ultrametric inputs are recovered exactly") {
  Rng rng(32);
  for (int t = 0; t < 30; ++t) {
    const auto tree = testing::random_ultra_tree(rng, testing::uniform_int(rng, 1, 40));
    const auto space = tree.induced_space();
    const auto fit = subdominant_ultrametric(space);
    for (Index i = 0; i < space.size(); ++i) {
      for (Index j = 0; j < space.size(); ++j) {
        CHECK(fit.distance(i, j) == space.distance(i, j));
      }
    }
    const auto order = monotone_order_from_tree(space, fit);
    CHECK(order.c == 1.0);
    CHECK(oracle::monotone_ratio(oracle::matrix_of(space), order.order) == 1.0);
  }
}

TEST_CASE("UltraTree validation") {
  using Node = UltraTree::Internal;
  CHECK_NOTHROW(UltraTree(2, {Node{{0, 1}, 1.0}}));
  CHECK_THROWS_AS(UltraTree(3, {Node{{0, 1}, 1.0}}), Error);
  CHECK_THROWS_AS(UltraTree(2, {Node{{0, 1}, 0.0}}), Error);
  CHECK_THROWS_AS(UltraTree(3, {Node{{0, 1}, 2.0}, Node{{2, 3}, 1.0}}), Error);
  const UltraTree t(3, {Node{{0, 1}, 1.0}, Node{{3, 2}, 2.0}});
  CHECK(t.leaf_order() == std::vector<Index>{0, 1, 2});
  CHECK(t.distance(0, 2) == 2.0);
  CHECK(t.distance(1, 1) == 0.0);
}

TEST_CASE("monotone constant") {
  const auto line = testing::line_space({0, 1, 2});
  CHECK(monotone_constant(line, {0, 1, 2}) == 1.0);
  const double c = monotone_constant(line, {0, 2, 1});
  CHECK(c == 2.0);  // z = 2 lies in [0, 1] with d(0, 2) = 2 d(0, 1)
  CHECK(is_monotone(line, {0, 2, 1}, c));
  CHECK_FALSE(is_monotone(line, {0, 2, 1}, c - 1e-9));
  CHECK(monotone_constant(testing::line_space({0, 5}), {1, 0}) == 1.0);
  CHECK_THROWS_AS(monotone_constant(line, {0, 0, 1}), Error);
}

TEST_CASE("monotone constant is tight on random orders") {
  Rng rng(33);
  for (int t = 0; t < 30; ++t) {
    const auto space = testing::random_plane_space(rng, 12);
    std::vector<Index> order(12);
    for (Index i = 0; i < 12; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    const double c = monotone_constant(space, order);
    CHECK(c == doctest::Approx(oracle::monotone_ratio(oracle::matrix_of(space), order)));
    CHECK(is_monotone(space, order, c));
    CHECK_FALSE(is_monotone(space, order, c - 1e-9));
  }
}

TEST_CASE("extract_ultra_subset") {
  Rng rng(34);
  const auto tree = testing::random_ultra_tree(rng, 20);
  const auto ultra = extract_ultra_subset(tree.induced_space(), 1.0, 20);
  CHECK(ultra.subset.size() == 20);
  CHECK(ultra.distortion == 1.0);

  const auto two = testing::line_space({0, 3});
  CHECK(extract_ultra_subset(two, 1.0, 5).subset == IndexSet{0, 1});

  CHECK_THROWS_AS(extract_ultra_subset(two, 0.5, 5), Error);

  const auto cantor = testing::cantor_endpoints(6);
  const auto full = dimension_profile(cantor, cantor.all_points(), 0, 16);
  const auto sub = extract_ultra_subset(cantor, 3.0, 50, 1);
  CHECK(sub.distortion <= 3.0);
  CHECK(sub.distortion == ultrametric_distortion(cantor.restrict(sub.subset)));
  REQUIRE(sub.profile_valid);
  CHECK(std::abs(sub.profile.slope - full.slope) <= 0.1);

  const auto plane = testing::random_plane_space(rng, 40);
  const auto a = extract_ultra_subset(plane, 1.5, 30, 5);
  const auto b = extract_ultra_subset(plane, 1.5, 30, 5);
  CHECK(a.subset == b.subset);
  CHECK(a.distortion <= 1.5);
}

TEST_CASE("is_ultrametric matches a brute-force triple scan") {
  Rng rng(35);
  for (int t = 0; t < 40; ++t) {
    const auto space = t % 2 ? testing::random_ultra_tree(rng, 12).induced_space()
                             : testing::random_plane_space(rng, 12);
    double worst = 0.0;
    for (Index x = 0; x < 12; ++x) {
      for (Index y = 0; y < 12; ++y) {
        for (Index z = 0; z < 12; ++z) {
          const double m = std::max(space.distance(x, y), space.distance(y, z));
          if (m > 0) worst = std::max(worst, space.distance(x, z) / m);
        }
      }
    }
    const auto c = is_ultrametric(space);
    CHECK(c.worst_ratio == worst);
    CHECK(c.ultrametric == (t % 2 == 1));
    const auto [x, y, z] = c.triple;
    CHECK(space.distance(x, z) / std::max(space.distance(x, y), space.distance(y, z)) ==
          worst);
  }
}
