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
#include "packmap/cubemap.hpp"
#include "packmap/error.hpp"
#include "support.hpp"

using namespace packmap;
using packmap::testing::Rng;

namespace {

bool face_adjacent(const std::vector<std::uint32_t>& a,
                   const std::vector<std::uint32_t>& b) {
  int diff = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto d = a[i] > b[i] ? a[i] - b[i] : b[i] - a[i];
    if (d > 1) return false;
    diff += static_cast<int>(d);
  }
  return diff == 1;
}

}  // namespace

TEST_CASE("level-2 Hilbert cells match the hand table") {
  for (std::uint64_t h = 0; h < 16; ++h) {
    const auto c = hilbert_cell(h, 2, 2);
    CHECK(c[0] == oracle::kHilbertLevel2[h][0]);
    CHECK(c[1] == oracle::kHilbertLevel2[h][1]);
  }
}

TEST_CASE("consecutive cells are face-adjacent") {
  for (int dim : {2, 3}) {
    for (int k = 1; k <= (dim == 2 ? 6 : 4); ++k) {
      const std::uint64_t cells = std::uint64_t{1} << (dim * k);
      auto prev = hilbert_cell(0, dim, k);
      for (std::uint64_t h = 1; h < cells; ++h) {
        const auto cur = hilbert_cell(h, dim, k);
        REQUIRE(face_adjacent(prev, cur));
        prev = cur;
      }
    }
  }
}

TEST_CASE("curve start and dyadic times") {
  CHECK(spacefilling_curve(0.0, 2, 4) == std::vector<double>{0.0, 0.0});
  CHECK(spacefilling_curve(0.0, 3, 2) == std::vector<double>{0.0, 0.0, 0.0});
  // t = j/16 at level 2 is the end of cell j - 1.
  for (int j = 1; j <= 16; ++j) {
    CHECK(hilbert_cell_index(j / 16.0, 2, 2) == static_cast<std::uint64_t>(j - 1));
  }
  CHECK(hilbert_cell_index(0.2, 2, 1) == 0);
  CHECK(hilbert_cell_index(0.3, 2, 1) == 1);
  const auto q0 = spacefilling_curve(0.1, 2, 1);
  const auto q1 = spacefilling_curve(0.3, 2, 1);
  CHECK(std::abs(q0[0] - q1[0]) + std::abs(q0[1] - q1[1]) == 0.5);
  CHECK_THROWS_AS(spacefilling_curve(1.5, 2, 3), Error);
  CHECK_THROWS_AS(spacefilling_curve(-0.1, 2, 3), Error);
  CHECK_THROWS_AS(spacefilling_curve(0.5, 4, 3), Error);
  CHECK_THROWS_AS(spacefilling_curve(0.5, 2, 17), Error);
}

TEST_CASE("cdf_map") {
  const auto line = testing::line_space({0, 1, 2});
  const MonotoneOrder order{{0, 1, 2}, 1.0};
  const auto g = cdf_map(line, order, MassDistribution::uniform(3));
  CHECK(g == std::vector<double>{1.0 / 3, 2.0 / 3, 1.0});
  const auto w = cdf_map(line, order, MassDistribution({0.2, 0.3, 0.5}));
  CHECK(w[0] == doctest::Approx(0.2));
  CHECK(w[1] == doctest::Approx(0.5));
  CHECK(w[2] == 1.0);
  const auto atom = cdf_map(line, order, MassDistribution({0, 1, 0}));
  CHECK(atom == std::vector<double>{0, 1, 1});
  CHECK_THROWS_AS(cdf_map(line, order, MassDistribution({0, 0, 0})), Error);
}

TEST_CASE("pipeline on a balanced 4-ary space covers at level k") {
  for (int k : {1, 2, 3}) {
    const auto space = testing::balanced_tree(4, k).induced_space();
    CubeMapOptions opt;
    opt.dim = 2;
    opt.order = k;
    const auto r = cube_map_pipeline(space, MassDistribution::uniform(space.size()), opt);
    CHECK(r.covered);
    CHECK(r.coverage_level == k);
    CHECK(r.coverage_resolution == std::ldexp(1.0, -k));
    CHECK(r.max_cell_hits == 1);
    CHECK(r.monotone.c == 1.0);
    CHECK_FALSE(r.degenerate_measure);
  }
}

TEST_CASE("pipeline degenerate inputs") {
  const auto one = testing::line_space({0});
  const auto r = cube_map_pipeline(one, MassDistribution::uniform(1), CubeMapOptions{});
  CHECK_FALSE(r.covered);
  CHECK(r.mapped.size() == 1);

  const auto space = testing::balanced_tree(4, 2).induced_space();
  std::vector<double> w(16, 0.0);
  w[5] = 1.0;
  const auto atom = cube_map_pipeline(space, MassDistribution(w), CubeMapOptions{});
  CHECK(atom.degenerate_measure);
  CHECK_FALSE(atom.covered);
  for (double g : atom.g_values) CHECK((g == 0.0 || g == 1.0));

  const auto line = testing::line_space({0, 1, 2});
  CHECK_THROWS_AS(cube_map_pipeline(line, MassDistribution::uniform(3), CubeMapOptions{}),
                  Error);
  CubeMapOptions with_order;
  with_order.monotone = MonotoneOrder{{0, 1, 2}, 1.0};
  CHECK_NOTHROW(cube_map_pipeline(line, MassDistribution::uniform(3), with_order));
}

TEST_CASE("lower-Holder diagnostic respects 2 c^s on ultrametric inputs") {
  Rng rng(41);
  for (int t = 0; t < 20; ++t) {
    const auto space = testing::random_ultra_tree(rng, 30).induced_space();
    const double s = 1.0;
    const auto grid = default_radius_grid(space, space.all_points());
    const auto mu =
        frostman_rescale(space, MassDistribution::uniform(30), s, grid).rescaled;
    CubeMapOptions opt;
    opt.s = s;
    opt.grid = grid;
    const auto r = cube_map_pipeline(space, mu, opt);
    CHECK(r.monotone.c == 1.0);
    CHECK(r.holder_bound == 2.0);
    REQUIRE(r.frostman_passes);
    CHECK(r.g_lower_holder_worst <= r.holder_bound);
    for (std::size_t i = 1; i < r.monotone.order.size(); ++i) {
      CHECK(r.g_values[r.monotone.order[i - 1]] <= r.g_values[r.monotone.order[i]]);
    }
  }
}
