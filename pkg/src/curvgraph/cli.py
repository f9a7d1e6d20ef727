"""Command-line entry point for all experiments.

Every subcommand takes a 64-bit ``--seed`` and is fully deterministic:
worker sub-streams are derived from (seed, stream index), so output is
byte-identical across runs and across ``--threads`` settings.  Results are
data only (JSON on stdout, optional CSV files); errors exit nonzero with a
JSON object on stderr.
"""

import argparse
import json
import math
import os
import sys

import numpy as np

from .converge import run_sweep, sweep_csv, sweep_report
from .curvature import estimate_curvature, vertex_curvature
from .distortion import default_sources, distortion_report
from .earth import DEFAULT_LEG_RANGE_KM, EARTH_EQUATORIAL_KM, EARTH_POLAR_KM
from .earth import estimate_earth_radius
from .errors import CurvGraphError
from .fractal import (
    enumerate_fractal_triangle_counts,
    fractal_curvature_stats,
    sample_fractal_triangle_counts,
    sierpinski_graph,
)
from .graphs import load_geometric_graph, save_geometric_graph
from .manifolds import Spheroid, manifold_from_json
from .rng import substream
from .sprinkle import sprinkle
from .wolfram import estimate_wolfram

SCHEMA_VERSION = 1

# fixed per-command stream tags: parallelism degree must not change results
_TAG = {"sprinkle": 0, "distortion": 1, "curvature": 2, "wolfram": 3,
        "converge": 4, "fractal": 5, "earth": 6}


def _emit(obj):
    obj = {"schemaVersion": SCHEMA_VERSION, **obj}
    sys.stdout.write(json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n")


def _parse_manifold(text):
    """Inline JSON or a path to a JSON file."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError:
        with open(text) as fh:
            obj = json.load(fh)
    return manifold_from_json(obj)


def _load_graph(prefix, seed):
    """Load a geometric graph, filling in l_e if the sidecar lacks it."""
    gg = load_geometric_graph(prefix)
    if gg.effective_edge_length is None:
        distortion_report(gg, rng=substream(seed, _TAG["distortion"], 1))
    return gg


def _cmd_sprinkle(args):
    manifold = _parse_manifold(args.manifold)
    rng = substream(args.seed, _TAG["sprinkle"])
    gg = sprinkle(manifold, args.n, args.p, rng=rng, l_override=args.l)
    distortion_report(gg, rng=substream(args.seed, _TAG["sprinkle"], 1))
    save_geometric_graph(gg, args.out)
    _emit({
        "out": args.out,
        "vertexCount": gg.vertex_count,
        "edgeCount": gg.graph.edge_count,
        "connectionLength": gg.connection_length,
        "tolerance": gg.tolerance,
        "effectiveEdgeLength": gg.effective_edge_length,
    })


def _cmd_distortion(args):
    gg = load_geometric_graph(args.graph)
    rng = substream(args.seed, _TAG["distortion"])
    if args.sources is not None:
        sources = np.sort(rng.choice(gg.vertex_count,
                                     size=min(args.sources, gg.vertex_count),
                                     replace=False))
    else:
        sources = default_sources(gg.vertex_count, rng)
    rep = distortion_report(gg, sources=sources)
    _emit(rep.to_json())


def _cmd_curvature(args):
    gg = _load_graph(args.graph, args.seed)
    rng = substream(args.seed, _TAG["curvature"])
    l_e = gg.effective_edge_length
    if args.per_vertex:
        if args.smin is None or args.smax is None:
            from .curvature import default_hop_window
            smin, smax = default_hop_window(gg.graph, rng)
            smin = args.smin if args.smin is not None else smin
            smax = args.smax if args.smax is not None else smax
        else:
            smin, smax = args.smin, args.smax
        per_vertex = vertex_curvature(gg.graph, l_e, args.samples, smin, smax, rng)
        _emit({
            "estimator": "sectional-vertex",
            "effectiveEdgeLength": l_e,
            "perVertex": [None if math.isnan(k) else k for k in per_vertex],
        })
        return
    rep = estimate_curvature(
        gg.graph, l_e, args.samples, s_min_hops=args.smin, s_max_hops=args.smax,
        rng=rng, max_length_scale=args.max_length, threads=args.threads,
    )
    if args.csv:
        rep.write_csv(args.csv)
    _emit({"effectiveEdgeLength": l_e, **rep.to_json(include_samples=args.include_samples)})


def _cmd_wolfram(args):
    gg = _load_graph(args.graph, args.seed)
    rng = substream(args.seed, _TAG["wolfram"])
    rep = estimate_wolfram(gg.graph, gg.effective_edge_length, args.vertices, rng)
    _emit({"effectiveEdgeLength": gg.effective_edge_length, **rep.to_json()})


def _cmd_converge(args):
    manifold = _parse_manifold(args.manifold)
    counts = [int(c) for c in args.counts.split(",") if c]
    points = run_sweep(manifold, args.true_k, counts, args.seeds_per, args.samples,
                       master_seed=args.seed, threads=args.threads)
    if args.csv:
        sweep_csv(points, args.csv)
    _emit(sweep_report(points, args.true_k))


def _cmd_fractal(args):
    rng = substream(args.seed, _TAG["fractal"])
    sg = sierpinski_graph(args.level)
    if args.exact:
        counts = enumerate_fractal_triangle_counts(sg)
    else:
        counts = sample_fractal_triangle_counts(sg, args.samples, rng)
    stats = fractal_curvature_stats(counts, args.edge_scale, args.level)
    if args.out:
        scale = args.edge_scale ** (-2 * args.level)
        with open(f"{args.out}.csv", "w") as fh:
            fh.write("K\n")
            for (a, b, c), cnt in sorted(counts.items()):
                try:
                    from .curvature import curvature_from_triangle
                    k = curvature_from_triangle(float(a), float(b), float(c)) * scale
                except CurvGraphError:
                    continue
                fh.writelines([f"{k!r}\n"] * cnt)
    _emit({"n": args.level, "edgeScale": args.edge_scale, **stats})


def _cmd_earth(args):
    rng = substream(args.seed, _TAG["earth"])
    spheroid = Spheroid(args.equatorial, args.polar)
    rep = estimate_earth_radius(
        spheroid, n_samples=args.samples,
        leg_range=(args.leg_min, args.leg_max),
        max_length_scale=args.max_length, rng=rng,
    )
    if args.out:
        rep.write_csv(f"{args.out}.csv")
    _emit(rep.to_json())


def build_parser():
    parser = argparse.ArgumentParser(
        prog="curvgraph",
        description="Discrete sectional curvature experiments on graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, threads=False):
        p.add_argument("--seed", type=int, required=True, help="64-bit master seed")
        if threads:
            p.add_argument("--threads", type=int, default=os.cpu_count(),
                           help="worker cap; results are invariant to it")

    p = sub.add_parser("sprinkle", help="build an annulus random geometric graph")
    p.add_argument("--manifold", required=True, help="manifold JSON or a file path")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, default=0.25)
    p.add_argument("--l", type=float, default=None, help="override the connection length")
    p.add_argument("--out", required=True, help="output prefix (.edges/.json)")
    add_common(p)
    p.set_defaults(func=_cmd_sprinkle)

    p = sub.add_parser("distortion", help="metric distortion of a stored graph")
    p.add_argument("--graph", required=True, help="graph prefix")
    p.add_argument("--sources", type=int, default=None)
    add_common(p)
    p.set_defaults(func=_cmd_distortion)

    p = sub.add_parser("curvature", help="sectional curvature report")
    p.add_argument("--graph", required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--smin", type=int, default=None)
    p.add_argument("--smax", type=int, default=None)
    p.add_argument("--max-length", type=float, default=None)
    p.add_argument("--per-vertex", action="store_true")
    p.add_argument("--csv", default=None, help="write one K per row")
    p.add_argument("--include-samples", action="store_true")
    add_common(p, threads=True)
    p.set_defaults(func=_cmd_curvature)

    p = sub.add_parser("wolfram", help="ball-volume curvature report")
    p.add_argument("--graph", required=True)
    p.add_argument("--vertices", type=int, required=True)
    add_common(p)
    p.set_defaults(func=_cmd_wolfram)

    p = sub.add_parser("converge", help="error-vs-distortion sweep")
    p.add_argument("--manifold", required=True)
    p.add_argument("--true-k", type=float, required=True)
    p.add_argument("--counts", required=True, help="comma-separated vertex counts")
    p.add_argument("--seeds-per", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--csv", default=None)
    add_common(p, threads=True)
    p.set_defaults(func=_cmd_converge)

    p = sub.add_parser("fractal", help="Sierpinski curvature distribution")
    p.add_argument("--level", type=int, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--exact", action="store_true")
    group.add_argument("--samples", type=int, default=None)
    p.add_argument("--edge-scale", type=float, default=1.0)
    p.add_argument("--out", default=None, help="CSV prefix for K samples")
    add_common(p)
    p.set_defaults(func=_cmd_fractal)

    p = sub.add_parser("earth", help="earth radius estimation")
    p.add_argument("--equatorial", type=float, default=EARTH_EQUATORIAL_KM)
    p.add_argument("--polar", type=float, default=EARTH_POLAR_KM)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--max-length", type=float, default=None)
    p.add_argument("--leg-min", type=float, default=DEFAULT_LEG_RANGE_KM[0])
    p.add_argument("--leg-max", type=float, default=DEFAULT_LEG_RANGE_KM[1])
    p.add_argument("--out", default=None, help="CSV prefix for radii")
    add_common(p)
    p.set_defaults(func=_cmd_earth)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (CurvGraphError, OSError, ValueError) as exc:
        sys.stderr.write(json.dumps(
            {"error": type(exc).__name__, "message": str(exc)},
            sort_keys=True, separators=(",", ":"),
        ) + "\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
