"""
Comparing against ball-volume curvature
=======================================

A second, independent way to read curvature off a graph: count vertices
in growing geodesic balls and fit V_r = a r^2 (1 - K r^2 / 12).  On the
sphere its mean is serviceable but the per-sample scatter is much larger
than the triangle estimator's, and in negative curvature it degrades
further.
"""

import math

import numpy as np

import curvgraph as cg
from curvgraph.rng import substream

for stream_idx, (manifold, expected, label) in enumerate([
    (cg.Sphere2(1.0), 1.0, "unit sphere"),
    (cg.HyperbolicDisk(1.0, math.acosh(3.0)), -1.0, "hyperbolic disk"),
]):
    rng = substream(31, stream_idx)
    gg = cg.sprinkle(manifold, 3000, p=0.25, rng=rng)
    rep = cg.distortion_report(gg, rng=rng)
    ball = cg.estimate_wolfram(gg.graph, rep.effective_edge_length, 200, rng)
    tri = cg.estimate_curvature(gg.graph, rep.effective_edge_length, 200, rng=rng)
    print(f"{label} (expected K = {expected:+.0f}):")
    print(f"  ball-volume fit: mean {ball.mean:+.3f} +/- {ball.standard_error:.3f}, "
          f"per-sample MAE {np.abs(ball.samples - expected).mean():.3f}")
    print(f"  triangle rule:   mean {tri.mean:+.3f} +/- {tri.standard_error:.3f}, "
          f"per-sample MAE {np.abs(tri.samples - expected).mean():.3f}")
