"""
Estimating the curvature of a sphere from a graph
=================================================

Sprinkle a random geometric graph onto the unit 2-sphere, check how well
its hop metric approximates the spherical metric, and recover the
sectional curvature K = 1 from nothing but hop counts.
"""

import numpy as np

import curvgraph as cg

rng = np.random.default_rng(2024)

# Build a hard-annulus random geometric graph: points are connected when
# their geodesic distance lies within 25% of a connection length l, and l
# itself is the smallest value (found by binary search) that gives a
# connected graph.
sphere = cg.Sphere2(1.0)
gg = cg.sprinkle(sphere, 3000, p=0.25, rng=rng)
print(f"graph: {gg.graph.vertex_count} vertices, {gg.graph.edge_count} edges, "
      f"connection length {gg.connection_length:.4f}")

# The effective edge length converts hop counts to physical lengths; the
# metric distortion says how faithful that conversion is (0 = exact
# rescaling).
rep = cg.distortion_report(gg, rng=rng)
print(f"effective edge length {rep.effective_edge_length:.4f}, "
      f"metric distortion {rep.distortion:.4f}")

# Sample approximate right triangles (apex equidistant from the two base
# ends, base cut in half at a midpoint vertex) and solve the generalized
# cosine rule cos(c sqrt(K)) = cos(a sqrt(K)) cos(b sqrt(K)) per triangle.
cur = cg.estimate_curvature(gg.graph, rep.effective_edge_length, 1500, rng=rng)
print(f"mean curvature {cur.mean:+.4f} +/- {cur.standard_error:.4f} "
      f"(expected +1 on the unit sphere)")
print(f"median {cur.median:+.4f}, 5% trimmed mean {cur.trimmed_mean:+.4f}, "
      f"rejected {sum(cur.rejected.values())} of 1500 draws")

# The scalar curvature of a surface is twice the sectional curvature.
print(f"implied Ricci scalar (n=2): {cg.ricci_scalar_from_mean_sectional(cur.mean, 2):+.4f}")
