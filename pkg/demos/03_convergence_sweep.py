"""
Error versus metric distortion
==============================

Sprinkle ever denser graphs on the unit sphere and watch both error
measures fall as the metric distortion goes to zero.  A linear model of
error against distortion summarizes the convergence; its r^2 says how
linear the relationship is over the probed range.
"""

import curvgraph as cg

points = cg.run_sweep(
    cg.Sphere2(1.0), true_k=1.0,
    vertex_counts=[500, 1000, 2000, 4000],
    seeds_per_count=2, samples_per_graph=400, master_seed=11,
)

print(f"{'V':>6} {'distortion':>11} {'mean abs err':>13} {'abs err of mean':>16}")
for p in points:
    print(f"{p.vertex_count:>6} {p.mean_distortion:>11.4f} "
          f"{p.mean_absolute_error:>13.4f} {p.absolute_error_of_mean:>16.5f}")

rep = cg.sweep_report(points, 1.0)
fit = rep["fitAbsoluteErrorOfMean"]
print(f"\nabs-error-of-mean vs distortion: slope {fit['slope']:.3f}, "
      f"intercept {fit['intercept']:+.4f}, r^2 {fit['rSquared']:.3f}")
fit = rep["fitMeanAbsoluteError"]
print(f"mean-abs-error vs distortion:    slope {fit['slope']:.3f}, "
      f"intercept {fit['intercept']:+.4f}, r^2 {fit['rSquared']:.3f}")
