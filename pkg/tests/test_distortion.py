import math

import numpy as np
import pytest

from curvgraph import (
    EuclideanDisk,
    GeometricGraph,
    Graph,
    Sphere2,
    distortion_report,
    effective_edge_length,
    embedding_log_ratios,
    metric_distortion,
    sprinkle,
)
from curvgraph.errors import Disconnected, EmptyInput


def path3(spacing):
    g = Graph(3, [0, 1], [1, 2])
    coords = np.array([[0.0, 0.0], [spacing, 0.0], [2 * spacing, 0.0]])
    return GeometricGraph(g, EuclideanDisk(3 * spacing), coords, spacing, 0.25)


def test_path3_unit_spacing_zero_ratios():
    logs = embedding_log_ratios(path3(1.0), [0, 1, 2])
    assert np.allclose(logs, 0.0, atol=1e-15)


def test_path3_uniform_rescale():
    logs = embedding_log_ratios(path3(2.0), [0, 1, 2])
    assert np.allclose(logs, math.log(2.0))
    assert effective_edge_length(logs) == pytest.approx(2.0, rel=1e-12)
    assert metric_distortion(logs) == pytest.approx(0.0, abs=1e-15)


def test_c4_on_compass_points():
    # C4 on the equator: adjacent pairs at distance pi/2 and 1 hop, diagonal
    # pairs at pi and 2 hops; every ratio is pi/2
    g = Graph(4, [0, 1, 2, 3], [1, 2, 3, 0])
    coords = np.array([
        [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [-1.0, 0.0, 0.0], [0.0, -1.0, 0.0],
    ])
    gg = GeometricGraph(g, Sphere2(1.0), coords, math.pi / 2, 0.25)
    logs = embedding_log_ratios(gg, [0, 1, 2, 3])
    assert logs.shape == (12,)  # 4 sources x 3 others
    assert np.allclose(logs, math.log(math.pi / 2), atol=1e-12)
    assert effective_edge_length(logs) == pytest.approx(math.pi / 2, rel=1e-12)
    assert metric_distortion(logs) == pytest.approx(0.0, abs=1e-12)


def test_geometric_mean_examples():
    assert effective_edge_length(np.log([2.0, 2.0, 2.0])) == pytest.approx(2.0)
    assert effective_edge_length(np.log([1.0, 4.0])) == pytest.approx(2.0)


def test_mean_deviation_examples():
    assert metric_distortion(np.log([3.0, 3.0])) == 0.0
    assert metric_distortion(np.log([math.e, 1.0 / math.e])) == pytest.approx(1.0, rel=1e-12)


def test_empty_input():
    with pytest.raises(EmptyInput):
        effective_edge_length(np.array([]))
    with pytest.raises(EmptyInput):
        metric_distortion(np.array([]))


def test_disconnected_raises():
    g = Graph(4, [0, 2], [1, 3])
    coords = np.array([[0.0, 0.0], [0.1, 0.0], [0.0, 0.1], [0.1, 0.1]])
    gg = GeometricGraph(g, EuclideanDisk(1.0), coords, 0.1, 0.25)
    with pytest.raises(Disconnected):
        embedding_log_ratios(gg, [0])


def test_scale_invariance_exact():
    # rescaling the manifold metric by c scales l_e by c and leaves the
    # distortion unchanged, exactly
    rng = np.random.default_rng(51)
    gg = sprinkle(Sphere2(1.0), 200, 0.25, rng=rng)
    logs = embedding_log_ratios(gg, np.arange(200))
    scale = 3.7
    scaled = logs + math.log(scale)  # distances x 3.7, hop counts unchanged
    assert effective_edge_length(scaled) == pytest.approx(
        scale * effective_edge_length(logs), rel=1e-12)
    assert metric_distortion(scaled) == pytest.approx(metric_distortion(logs), abs=1e-14)


def test_reciprocal_invariance_exact():
    rng = np.random.default_rng(52)
    gg = sprinkle(Sphere2(1.0), 200, 0.25, rng=rng)
    logs = embedding_log_ratios(gg, np.arange(200))
    assert metric_distortion(-logs) == pytest.approx(metric_distortion(logs), abs=1e-14)


def test_sampled_sources_close_to_full():
    rng = np.random.default_rng(53)
    gg = sprinkle(Sphere2(1.0), 400, 0.25, rng=rng)
    full = distortion_report(gg, sources=np.arange(400))
    sub = distortion_report(gg, sources=rng.choice(400, size=64, replace=False))
    assert sub.distortion == pytest.approx(full.distortion, rel=0.05)
    assert sub.effective_edge_length == pytest.approx(full.effective_edge_length, rel=0.02)


def test_growing_source_sets_converge_to_full():
    rng = np.random.default_rng(54)
    gg = sprinkle(Sphere2(1.0), 150, 0.25, rng=rng)
    full = distortion_report(gg, sources=np.arange(150)).distortion
    errors = []
    for k in (20, 60, 150):
        sources = np.arange(k)
        errors.append(abs(distortion_report(gg, sources=sources).distortion - full))
    assert errors[-1] == 0.0
    assert errors[0] >= errors[-1] and errors[1] >= errors[-1]


def test_report_fills_cache_and_serializes():
    rng = np.random.default_rng(55)
    gg = sprinkle(Sphere2(1.0), 120, 0.25, rng=rng)
    assert gg.effective_edge_length is None
    rep = distortion_report(gg, rng=rng)
    assert gg.effective_edge_length == rep.effective_edge_length
    js = rep.to_json()
    assert set(js) == {"pairCount", "effectiveEdgeLength", "distortion", "sources"}
    assert js["pairCount"] == rep.pair_count
