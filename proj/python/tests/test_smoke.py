# Copyright 2026 The packmap Authors
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import pytest

import packmap


def line(xs):
    return packmap.FiniteMetricSpace.from_points([[x] for x in xs])


def test_metric_space():
    s = packmap.FiniteMetricSpace.from_matrix([[0, 1], [1, 0]])
    assert len(s) == 2
    assert s.distance(0, 1) == 1.0
    assert s.diameter() == 1.0
    assert s.ball(0, 1.0) == [0, 1]


def test_invalid_metric_raises_with_kind():
    with pytest.raises(packmap.PackmapError) as info:
        packmap.FiniteMetricSpace.from_matrix([[0, 1, 3], [1, 0, 1], [3, 1, 0]])
    assert info.value.kind == "TriangleViolation"
    assert isinstance(info.value, ValueError)


def test_premeasure():
    r = packmap.premeasure_exact(line([0, 1]), [0, 1], 1.0, 0.6)
    assert r.value == pytest.approx(1.2, rel=1e-15)
    assert r.witness == [0, 1]
    h = packmap.premeasure_heuristic(line([0, 1, 2]), [0, 1, 2], 1.0, 0.5, 20)
    assert h.value == 1.5


def test_dimension_profile():
    n = 257
    grid = line([j / (n - 1) for j in range(n)])
    p = packmap.dimension_profile(grid, list(range(n)), 2, 6)
    assert abs(p.dim_estimate - 1.0) < 0.1


def test_frostman_rescale():
    c, w = packmap.frostman_rescale(line([0, 1]), [0.7, 0.3], 1.0, [0.5])
    assert c == pytest.approx(5 / 7, rel=1e-15)
    assert w[0] == pytest.approx(0.5)


def test_oscillation_and_lip_lower():
    s = line([0, 1, 2])
    assert packmap.oscillation(s, [0, 1, 2], 1, 1.0) == (2.0, 1.0)
    assert packmap.lip_lower(s, [3, 3, 3], 1) == 0.0


def test_extension():
    s = line([0, 0.5, 1])
    fstar = packmap.extend(s, [0, 2], [0.0, 1.0])
    assert fstar[0] == 0.0 and fstar[2] == 1.0
    assert fstar[1] == 0.5
    report = packmap.verify_extension(s, [0, 2], [0.0, 1.0], fstar)
    assert report["passed"]
    with pytest.raises(packmap.PackmapError) as info:
        packmap.extend(s, [0, 2], [0.0, 2.0])
    assert info.value.kind == "OutOfRangeValues"
    unb = packmap.extend(s, [0, 2], [-5.0, 5.0], unbounded=True)
    assert all(math.isfinite(v) for v in unb)
    assert unb[0] == pytest.approx(-5.0, rel=1e-12)


def test_ultrametric_and_order():
    s = line([0, 1, 2])
    ok, ratio, triple = packmap.is_ultrametric(s)
    assert not ok and ratio == 2.0 and triple == [0, 1, 2]
    u = packmap.subdominant_ultrametric(s)
    assert u[0][2] == 1.0
    assert packmap.monotone_constant(s, [0, 2, 1]) == 2.0


def test_hilbert_and_cube_map():
    assert packmap.hilbert_cell(0, 2, 2) == [0, 0]
    assert packmap.hilbert_cell(15, 2, 2) == [3, 0]
    assert packmap.spacefilling_curve(0.0, 2, 4) == [0.0, 0.0]
    x = [[0, 1, 4, 4], [1, 0, 4, 4], [4, 4, 0, 2], [4, 4, 2, 0]]
    s = packmap.FiniteMetricSpace.from_matrix(x)
    r = packmap.cube_map(s, [1, 1, 1, 1], dim=2, order=4)
    assert len(r["mapped"]) == 4
    assert all(0.0 <= v <= 1.0 for row in r["mapped"] for v in row)
    assert r["c"] == 1.0
    g = [r["g"][i] for i in r["order"]]
    assert g == sorted(g)
    assert 0.0 <= g[0] and g[-1] <= 1.0
