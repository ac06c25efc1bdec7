from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rankroute.generator import (
    DegenerateInput,
    GeneratorConfig,
    generate,
    min_rule_edges,
    orders_from_points,
    triangle_vertices,
)
from rankroute.schnyder_core import validate_standard
from rankroute.triangulation import validate_structure

from .conftest import K4_COORDS, K4_EDGES


def test_n4_is_the_k4_instance():
    g = generate(GeneratorConfig(n=4, seed=0))
    assert [tuple(c) for c in g.coords] == K4_COORDS
    assert list(g.edges()) == K4_EDGES
    assert g.anchors == (0, 1, 2)


@pytest.mark.parametrize("seed", range(20))
def test_n4_always_k4_shaped(seed):
    # One interior point: each anchor lies in a distinct odd sector of it, so all three edges exist.
    g = generate(GeneratorConfig(n=4, seed=seed))
    assert g.neighbors(3) == [0, 1, 2]
    assert tuple(g.coords[3]) == (3, 3, 3)


def test_n30_seed42_validates(g30):
    report = validate_structure(g30, limit=None)
    assert report.ok and report.witnesses == []


def test_degenerate():
    with pytest.raises(DegenerateInput):
        GeneratorConfig(n=3, seed=1)


@pytest.mark.parametrize("bad", [dict(seed=-1), dict(seed=2**64), dict(triangle_side=0.0), dict(triangle_side=math.inf)])
def test_config_rejects(bad):
    with pytest.raises(ValueError):
        GeneratorConfig(n=10, **bad)


class TestOrdersFromPoints:
    def test_anchors_only(self):
        tri = triangle_vertices()
        coords = orders_from_points(list(tri), tri)
        for i in range(3):
            assert coords[i][i] == 3
            assert sorted(coords[k][i] for k in range(3) if k != i) == [1, 2]

    def test_one_interior_point(self):
        tri = triangle_vertices()
        coords = orders_from_points(list(tri) + [(0.45, 0.3)], tri)
        u = coords[3]
        for i in range(3):
            others = [coords[k][i] for k in range(3) if k != i]
            # Interior points are closer to A_i than the other corners, but not at A_i.
            assert max(others) < u[i] < coords[i][i]

    def test_coincident_points_tie_by_id(self):
        tri = triangle_vertices()
        p = (0.4, 0.2)
        coords = orders_from_points(list(tri) + [p, p], tri)
        for i in range(3):
            assert sorted(c[i] for c in coords) == [1, 2, 3, 4, 5]
            # Same distance: the lower id is ranked first (smaller rank).
            assert coords[3][i] < coords[4][i]

    def test_farther_is_smaller(self):
        anchors = [(0.0, 0.0), (10.0, 0.0), (0.0, 10.0)]
        pts = [(1.0, 0.0), (2.0, 0.0), (3.0, 0.0)]
        coords = orders_from_points(pts, anchors)
        assert [c[0] for c in coords] == [3, 2, 1]


def test_min_rule_on_k4_coords():
    assert sorted(min_rule_edges(K4_COORDS) | {(0, 1), (0, 2), (1, 2)}) == K4_EDGES


def test_determinism():
    a = generate(GeneratorConfig(n=60, seed=123))
    b = generate(GeneratorConfig(n=60, seed=123))
    assert a == b
    assert a.positions == b.positions
    c = generate(GeneratorConfig(n=60, seed=124))
    assert c.positions != a.positions


def test_metadata():
    g = generate(GeneratorConfig(n=10, seed=5, triangle_side=2.0))
    assert g.generator.seed == 5 and g.generator.n == 10 and g.generator.triangle_side == 2.0
    assert "PCG64" in g.generator.algorithm


def test_positions_inside_triangle():
    g = generate(GeneratorConfig(n=200, seed=9, triangle_side=3.0))
    h = 3.0 * math.sqrt(3) / 2
    for x, y in g.positions[3:]:
        assert 0 < y < h
        assert y < math.sqrt(3) * x and y < math.sqrt(3) * (3.0 - x)


@settings(max_examples=40, deadline=None)
@given(st.integers(4, 80), st.integers(0, 2**64 - 1), st.sampled_from([1.0, 0.01, 250.0]))
def test_validity_and_standardness(n, seed, side):
    g = generate(GeneratorConfig(n=n, seed=seed, triangle_side=side))
    report = validate_structure(g)
    assert report.ok, report.to_dict()
    assert validate_standard(g.coords, g.anchors).ok
    assert g.edge_count == 3 * n - 6
