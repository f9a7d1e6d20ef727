"""Sierpinski triangle graphs and their curvature distributions.

The level-n graph is built by corner identification: three level-(n-1)
copies share pairwise corner vertices, with unit edge lengths.  On the
integer triangle lattice the construction is just the union of the unit
up-triangles at recursively shifted offsets; shared corners coincide in
coordinates, so the identification is free.  Vertex count 3(3^n + 1)/2,
edge count 3^(n+1), corners pairwise at hop distance 2^n.

Curvature samples are the isosceles triangles with an even base: apex u
equidistant from v and w, base d(v,w) even, a base midpoint m, giving the
right triangle (a, b, c) = (d(u,m), d(v,w)/2, d(u,v)) in unit edge
lengths.  Every qualifying midpoint yields its own sample, and rejection
sampling reproduces exactly the uniform distribution over the enumerated
quadruples.
"""

from dataclasses import dataclass

import numpy as np
from scipy.sparse.csgraph import dijkstra

from .curvature import RootNotFound, TriangleSample, curvature_from_triangle
from .errors import LevelTooLarge, SamplingStalled, TriangleInequalityViolated
from .graphs import Graph

_MAX_LEVEL = 12          # construction memory guard
_MAX_ALLPAIRS_LEVEL = 6  # enumeration / sampling need all-pairs distances
_STALL_LIMIT = 10**6


@dataclass
class SierpinskiGraph:
    level: int
    graph: Graph
    corner_vertices: tuple

    def __post_init__(self):
        self._hops = None

    def all_hops(self):
        """Exact all-pairs hop distances (cached); levels <= 6 only."""
        if self.level > _MAX_ALLPAIRS_LEVEL:
            raise LevelTooLarge(
                f"all-pairs distances limited to level {_MAX_ALLPAIRS_LEVEL}"
            )
        if self._hops is None:
            d = dijkstra(self.graph._csr, directed=False, unweighted=True)
            self._hops = d.astype(np.int32)
        return self._hops


def sierpinski_graph(level):
    """Level-n Sierpinski triangle graph with unit edge lengths."""
    if level < 0:
        raise ValueError("level must be >= 0")
    if level > _MAX_LEVEL:
        raise LevelTooLarge(f"level {level} exceeds the guard of {_MAX_LEVEL}")
    offsets = [(0, 0)]
    for k in range(level):
        s = 2**k
        offsets = (
            offsets
            + [(x + s, y) for (x, y) in offsets]
            + [(x, y + s) for (x, y) in offsets]
        )
    ids = {}

    def vid(pt):
        if pt not in ids:
            ids[pt] = len(ids)
        return ids[pt]

    us, vs = [], []
    for (x, y) in offsets:
        a, b, c = vid((x, y)), vid((x + 1, y)), vid((x, y + 1))
        us.extend((a, a, b))
        vs.extend((b, c, c))
    # up-triangles never share edges, so the lists are duplicate-free
    graph = Graph(len(ids), us, vs)
    side = 2**level
    corners = (ids[(0, 0)], ids[(side, 0)], ids[(0, side)])
    return SierpinskiGraph(level=level, graph=graph, corner_vertices=corners)


def _even_base_pairs(hops):
    """Upper-triangle (v, w) pairs with even hop distance >= 2."""
    iu, ju = np.nonzero(np.triu((hops % 2 == 0) & (hops >= 2), 1))
    return iu, ju


def enumerate_fractal_triangles(sg):
    """Every even-base isosceles triangle quadruple (u, {v,w}, m), exhaustively.

    Conditions: d(u,v) = d(u,w) = c, d(v,w) = 2b even, m a shortest-path
    midpoint (all qualifying midpoints enumerated), a = d(u,m) >= 1, and
    strict triangle inequalities on (a, b, c) in unit edge lengths.
    """
    hops = sg.all_hops()
    out = []
    iu, ju = _even_base_pairs(hops)
    for v, w in zip(iu.tolist(), ju.tolist()):
        dv, dw = hops[v], hops[w]
        half = int(dv[w]) // 2
        mids = np.nonzero((dv == half) & (dw == half))[0]
        apexes = np.nonzero(dv == dw)[0]
        if mids.size == 0 or apexes.size == 0:
            continue
        a_grid = hops[np.ix_(apexes, mids)]
        c_vals = dv[apexes]
        ok = (
            (a_grid >= 1)
            & (a_grid < half + c_vals[:, None])
            & (half < a_grid + c_vals[:, None])
            & (c_vals[:, None] < a_grid + half)
        )
        ai, mi = np.nonzero(ok)
        for i, j in zip(ai.tolist(), mi.tolist()):
            u, m = int(apexes[i]), int(mids[j])
            out.append(TriangleSample(
                a=float(a_grid[i, j]), b=float(half), c=float(c_vals[i]),
                apex=u, base_end1=int(v), base_end2=int(w), midpoint=m,
                hops=(int(a_grid[i, j]), half, int(c_vals[i])),
            ))
    return out


def enumerate_fractal_triangle_counts(sg):
    """Exhaustive {(a,b,c) hop triple: count} over the same quadruples.

    Equivalent to ``triangle_counts(enumerate_fractal_triangles(sg))``
    without materializing per-quadruple samples; levels 5-6 produce
    millions of quadruples but only a few thousand distinct shapes.
    """
    hops = sg.all_hops()
    side = int(2 ** sg.level) + 1  # strict upper bound on any hop distance + 1
    totals = {}
    iu, ju = _even_base_pairs(hops)
    for v, w in zip(iu.tolist(), ju.tolist()):
        dv, dw = hops[v], hops[w]
        half = int(dv[w]) // 2
        mids = np.nonzero((dv == half) & (dw == half))[0]
        apexes = np.nonzero(dv == dw)[0]
        if mids.size == 0 or apexes.size == 0:
            continue
        a_grid = hops[np.ix_(apexes, mids)].astype(np.int64)
        c_vals = dv[apexes].astype(np.int64)
        ok = (
            (a_grid >= 1)
            & (a_grid < half + c_vals[:, None])
            & (half < a_grid + c_vals[:, None])
            & (c_vals[:, None] < a_grid + half)
        )
        if not ok.any():
            continue
        encoded = (a_grid + c_vals[:, None] * 2 * side)[ok]
        keys, counts = np.unique(encoded, return_counts=True)
        for key, cnt in zip(keys.tolist(), counts.tolist()):
            abc = (key % (2 * side), half, key // (2 * side))
            totals[abc] = totals.get(abc, 0) + cnt
    return totals


def _pair_tables(sg):
    """Per even-base pair: midpoint and apex candidate counts.

    Candidate counts (not valid-quadruple counts) drive the acceptance
    correction that makes pair-first sampling uniform over quadruples.
    """
    hops = sg.all_hops()
    iu, ju = _even_base_pairs(hops)
    mcount = np.empty(iu.size, dtype=np.int64)
    ucount = np.empty(iu.size, dtype=np.int64)
    for k in range(iu.size):
        dv, dw = hops[iu[k]], hops[ju[k]]
        half = int(dv[ju[k]]) // 2
        mcount[k] = int(np.count_nonzero((dv == half) & (dw == half)))
        ucount[k] = int(np.count_nonzero(dv == dw))
    keep = (mcount > 0) & (ucount > 0)
    return hops, iu[keep], ju[keep], mcount[keep], ucount[keep]


def sample_fractal_triangles(sg, m, rng):
    """m samples uniform over the enumerated quadruples, by rejection.

    Draws a uniform even-base pair, a uniform qualifying midpoint and a
    uniform equidistant apex, then accepts with probability proportional
    to the pair's candidate-set product so that every quadruple is equally
    likely; draws failing the validity conditions are retried.
    """
    counts, samples = _sample_impl(sg, m, rng, keep_samples=True)
    return samples


def sample_fractal_triangle_counts(sg, m, rng):
    """Like sample_fractal_triangles but returns {(a,b,c) hops: count}.

    Constant-memory variant for large m.
    """
    counts, _ = _sample_impl(sg, m, rng, keep_samples=False)
    return counts


def _sample_impl(sg, m, rng, keep_samples):
    hops, pv, pw, mcount, ucount = _pair_tables(sg)
    if pv.size == 0:
        raise SamplingStalled("no even-base pairs exist at this level")
    weight = mcount.astype(np.float64) * ucount.astype(np.float64)
    w_max = float(weight.max())
    counts = {}
    samples = [] if keep_samples else None
    accepted = 0
    consecutive_rejects = 0
    batch = 4096
    while accepted < m:
        idx = rng.integers(pv.size, size=batch)
        keep = rng.random(batch) * w_max < weight[idx]
        survivors = idx[keep]
        if survivors.size == 0:
            consecutive_rejects += batch
            if consecutive_rejects >= _STALL_LIMIT:
                raise SamplingStalled(f"{consecutive_rejects} consecutive rejections")
            continue
        for k in survivors.tolist():
            if accepted >= m:
                break
            v, w = int(pv[k]), int(pw[k])
            dv, dw = hops[v], hops[w]
            half = int(dv[w]) // 2
            mids = np.nonzero((dv == half) & (dw == half))[0]
            apexes = np.nonzero(dv == dw)[0]
            mid = int(mids[rng.integers(mids.size)])
            u = int(apexes[rng.integers(apexes.size)])
            a, c = int(hops[u, mid]), int(dv[u])
            if a < 1 or not (a < half + c and half < a + c and c < a + half):
                consecutive_rejects += 1
                if consecutive_rejects >= _STALL_LIMIT:
                    raise SamplingStalled(f"{consecutive_rejects} consecutive rejections")
                continue
            consecutive_rejects = 0
            accepted += 1
            key = (a, half, c)
            counts[key] = counts.get(key, 0) + 1
            if keep_samples:
                samples.append(TriangleSample(
                    a=float(a), b=float(half), c=float(c),
                    apex=u, base_end1=v, base_end2=w, midpoint=mid,
                    hops=key,
                ))
    return counts, samples


def triangle_counts(samples):
    """Collapse TriangleSamples to {(a,b,c) hop triple: count}."""
    counts = {}
    for s in samples:
        key = s.hops if s.hops is not None else (s.a, s.b, s.c)
        counts[key] = counts.get(key, 0) + 1
    return counts


def fractal_curvature_stats(samples, edge_scale=1.0, level=None):
    """Statistics of the curvature distribution, scaled by edge_scale^(-2n).

    Choosing edge length edge_scale^n at iteration n rescales every
    curvature by edge_scale^(-2n); edge_scale = 1 reproduces the raw
    unit-edge statistics.  ``samples`` may be a TriangleSample list or a
    {(a,b,c): count} mapping.
    """
    counts = samples if isinstance(samples, dict) else triangle_counts(samples)
    if level is None:
        raise ValueError("level is required for the edge-scale factor")
    scale = float(edge_scale) ** (-2 * level)
    ks, weights = [], []
    rejected = 0
    for (a, b, c), cnt in sorted(counts.items()):
        try:
            k = curvature_from_triangle(float(a), float(b), float(c))
        except (TriangleInequalityViolated, RootNotFound):
            rejected += cnt
            continue
        ks.append(k * scale)
        weights.append(cnt)
    total = int(sum(weights))
    if total == 0:
        return {"count": 0, "mean": None, "median": None, "stdDev": None,
                "rejected": rejected, "empty": True}
    ks = np.asarray(ks)
    weights = np.asarray(weights, dtype=np.float64)
    mean = float(np.average(ks, weights=weights))
    var = float(np.average((ks - mean) ** 2, weights=weights))
    order = np.argsort(ks)
    cum = np.cumsum(weights[order])
    median = float(ks[order][np.searchsorted(cum, 0.5 * total)])
    return {"count": total, "mean": mean, "median": median,
            "stdDev": float(np.sqrt(var)), "rejected": rejected, "empty": False}
