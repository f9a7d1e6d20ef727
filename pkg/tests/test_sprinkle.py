import math

import numpy as np
import pytest

from curvgraph import (
    EuclideanDisk,
    Sphere2,
    bfs_hops,
    build_annulus_graph,
    is_connected,
    min_connection_length,
    sprinkle,
)
from curvgraph.errors import NoConnectedLength
from curvgraph.sprinkle import pairwise_distances


def collinear_points():
    # 0, 1, 2 on a line inside a radius-2.5 disk
    return EuclideanDisk(2.5), np.array([[-1.0, 0.0], [0.0, 0.0], [1.0, 0.0]])


def test_annulus_edges_basic():
    m, pts = collinear_points()
    gg = build_annulus_graph(m, pts, l=1.0, p=0.1)
    assert sorted(gg.graph.edges()) == [(0, 1), (1, 2)]  # d(0,2)=2 outside [0.9,1.1]


def test_annulus_edges_wide_tolerance():
    m, pts = collinear_points()
    gg = build_annulus_graph(m, pts, l=1.0, p=1.0)
    assert sorted(gg.graph.edges()) == [(0, 1), (0, 2), (1, 2)]


def test_annulus_contains_ball_rule():
    # |d - l| <= l is exactly d <= 2l: a classic ball-rule RGG of radius 2l
    rng = np.random.default_rng(41)
    m = EuclideanDisk(1.0)
    pts = m.sample_points(80, rng)
    l = 3.0  # huge: annulus [0, 6] covers the whole disk
    gg = build_annulus_graph(m, pts, l=l, p=1.0)
    assert gg.graph.edge_count == 80 * 79 // 2


def test_annulus_inequality_exact():
    rng = np.random.default_rng(42)
    m = Sphere2(1.0)
    pts = m.sample_points(150, rng)
    l, p = 0.7, 0.25
    gg = build_annulus_graph(m, pts, l, p)
    for u, v in gg.graph.edges():
        assert abs(m.distance(pts[u], pts[v]) - l) <= l * p
    # and non-edges violate it
    adj = {(u, v) for u, v in gg.graph.edges()}
    checked = 0
    for u in range(0, 150, 10):
        for v in range(u + 1, 150, 7):
            if (u, v) not in adj:
                assert abs(m.distance(pts[u], pts[v]) - l) > l * p
                checked += 1
    assert checked > 50


def grid_scan_min_l(m, pts, p, step=1e-3):
    """Independent oracle: scan an l grid, return the smallest connected l."""
    D = pairwise_distances(m, pts, dtype=np.float64)
    for l in np.arange(step, m.diameter() + step, step):
        adj = np.abs(D - l) <= l * p
        np.fill_diagonal(adj, False)
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for v in np.nonzero(adj[u])[0]:
                if v not in seen:
                    seen.add(int(v))
                    stack.append(int(v))
        if len(seen) == len(pts):
            return float(l)
    return None


def test_min_connection_length_collinear():
    m, pts = collinear_points()
    l = min_connection_length(m, pts, 0.25)
    oracle = grid_scan_min_l(m, pts, 0.25)
    # connectivity needs the unit gaps inside the annulus: l in [0.8, 1.0]
    assert 0.8 - 2e-3 <= l <= 1.0
    assert l == pytest.approx(oracle, abs=3e-3)


def test_min_connection_length_two_points():
    m = EuclideanDisk(2.0)
    d = 1.3
    pts = np.array([[0.0, 0.0], [d, 0.0]])
    l = min_connection_length(m, pts, 0.25)
    assert l == pytest.approx(d / 1.25, rel=5e-3)


def test_min_connection_length_bracket_on_sphere():
    rng = np.random.default_rng(43)
    m = Sphere2(1.0)
    pts = m.sample_points(100, rng)
    l = min_connection_length(m, pts, 0.25)
    assert is_connected(build_annulus_graph(m, pts, l, 0.25).graph)
    assert not is_connected(build_annulus_graph(m, pts, l * (1 - 1e-3), 0.25).graph)


def test_no_connected_length():
    # two tight clusters far apart, tiny tolerance: the annulus can hold the
    # far pairs or the near pairs, never both
    m = EuclideanDisk(2.0)
    pts = np.array([[0.0, 0.0], [0.001, 0.0], [1.9, 0.0], [1.9, 0.001]])
    with pytest.raises(NoConnectedLength) as err:
        min_connection_length(m, pts, 0.01)
    assert err.value.best_length is not None


def test_sprinkle_two_points():
    gg = sprinkle(EuclideanDisk(1.0), 2, 0.25, rng=np.random.default_rng(44))
    assert gg.graph.edge_count == 1


def test_sprinkle_deterministic():
    m = Sphere2(1.0)
    g1 = sprinkle(m, 150, 0.25, rng=np.random.default_rng(45))
    g2 = sprinkle(m, 150, 0.25, rng=np.random.default_rng(45))
    assert list(g1.graph.edges()) == list(g2.graph.edges())
    assert np.array_equal(g1.coordinates, g2.coordinates)
    assert g1.connection_length == g2.connection_length


def test_sprinkle_records_parameters_and_l_override():
    m = Sphere2(1.0)
    gg = sprinkle(m, 50, 0.3, rng=np.random.default_rng(46), l_override=0.9)
    assert gg.tolerance == 0.3
    assert gg.connection_length == 0.9


def test_distortion_decreases_with_vertex_count():
    # over 5 seeds each, the mean distortion of sphere sprinkles drops
    # when the vertex count quadruples
    from curvgraph import distortion_report
    from curvgraph.rng import substream

    def mean_distortion(n, seeds):
        vals = []
        for s in range(seeds):
            rng = substream(400 + n, s)
            gg = sprinkle(Sphere2(1.0), n, 0.25, rng=rng)
            vals.append(distortion_report(gg, rng=rng).distortion)
        return np.mean(vals)

    assert mean_distortion(1600, 5) < mean_distortion(400, 5)


def test_mean_degree_lower_at_small_p():
    # identical points: p = 0.25 keeps strictly fewer edges than p = 1
    rng = np.random.default_rng(47)
    m = Sphere2(1.0)
    pts = m.sample_points(400, rng)
    l = min_connection_length(m, pts, 0.25)
    e_small = build_annulus_graph(m, pts, l, 0.25).graph.edge_count
    e_large = build_annulus_graph(m, pts, l, 1.0).graph.edge_count
    assert is_connected(build_annulus_graph(m, pts, l, 0.25).graph)
    assert e_small < e_large
