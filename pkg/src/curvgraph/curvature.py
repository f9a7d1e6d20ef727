"""Discrete sectional curvature of path metric spaces.

The generalized cosine rule for a geodesic right triangle with legs a, b
and hypotenuse c in constant sectional curvature K is

    cos(c sqrt(K)) = cos(a sqrt(K)) cos(b sqrt(K)),

where for K < 0 the identity cos(i s) = cosh(s) applies.  K = 0 is always
a trivial root; besides it the equation has exactly one root in
(-inf, pi^2 / max(a,b,c)^2], whose sign equals sign(a^2 + b^2 - c^2), and
that root is the curvature estimate.  The solver deflates the trivial root
and locates the other one by sign-change scanning plus bisection.

On a graph, approximate right triangles are built from hop distances:
pick an apex u, two vertices v, w at equal hop distance from u with an
even-length base between them, and a base midpoint m; then (a, b, c) =
(d(u,m), d(v,w)/2, d(u,v)) in hops, converted to lengths by the effective
edge length.  Curvature statistics are aggregated over many sampled
triangles.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import trim_mean

from .errors import (
    Disconnected,
    NoCandidate,
    RootNotFound,
    TooFewAccepted,
    TriangleInequalityViolated,
)
from .graphs import UNREACHABLE, bfs_hops, diameter_estimate
from .rng import chunk_ranges

_FLAT_REL_TOL = 1e-12     # |a^2+b^2-c^2| below this (relative to c^2) is flat
_ROOT_REL_TOL = 1e-10
_POS_SCAN_CELLS = 256
_NEG_SCAN_DOUBLINGS = 60


@dataclass
class TriangleSample:
    """Physical side lengths of one constructed right triangle.

    a: median leg (apex to base midpoint), b: half-base leg, c: the equal
    sides / hypotenuse.  Vertex ids and hop counts are provenance and are
    absent for continuum (non-graph) samples.
    """

    a: float
    b: float
    c: float
    apex: int = None
    base_end1: int = None
    base_end2: int = None
    midpoint: int = None
    hops: tuple = None

    def sides(self):
        return self.a, self.b, self.c


@dataclass
class CurvatureReport:
    samples: np.ndarray
    mean: float
    standard_error: float
    trimmed_mean: float
    median: float
    rejected: dict = field(default_factory=dict)
    estimator: str = "sectional"

    @classmethod
    def from_samples(cls, samples, rejected=None, estimator="sectional"):
        ks = np.asarray(samples, dtype=np.float64)
        if ks.size == 0:
            raise TooFewAccepted("no accepted samples")
        return cls(
            samples=ks,
            mean=float(ks.mean()),
            standard_error=float(ks.std(ddof=1) / math.sqrt(ks.size)) if ks.size > 1 else 0.0,
            trimmed_mean=float(trim_mean(ks, 0.05)),
            median=float(np.median(ks)),
            rejected=dict(rejected or {}),
            estimator=estimator,
        )

    @property
    def accepted_count(self):
        return int(self.samples.size)

    def to_json(self, include_samples=False):
        out = {
            "estimator": self.estimator,
            "count": self.accepted_count,
            "mean": self.mean,
            "standardError": self.standard_error,
            "trimmedMean": self.trimmed_mean,
            "median": self.median,
            "rejected": {k: int(v) for k, v in sorted(self.rejected.items())},
        }
        if include_samples:
            out["samples"] = self.samples.tolist()
        return out

    def write_csv(self, path):
        with open(path, "w") as fh:
            fh.write("K\n")
            for k in self.samples:
                fh.write(f"{float(k)!r}\n")


def _check_triangle(a, b, c):
    if not (a > 0 and b > 0 and c > 0):
        raise TriangleInequalityViolated(f"sides must be positive: {(a, b, c)}")
    if not (a < b + c and b < a + c and c < a + b):
        raise TriangleInequalityViolated(f"strict triangle inequality fails: {(a, b, c)}")


def _logcosh(x):
    x = abs(x)
    return x + math.log1p(math.exp(-2.0 * x)) - math.log(2.0)


def _bisect(f, lo, hi, flo, rel_tol):
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
        if hi - lo <= rel_tol * hi:
            break
    return 0.5 * (lo + hi)


def curvature_from_triangle(a, b, c):
    """Sectional curvature of the right triangle with legs a, b, hypotenuse c.

    Returns the unique nonzero root of cos(c sqrt(K)) - cos(a sqrt(K)) cos(b sqrt(K))
    in (-inf, pi^2/max(a,b,c)^2], or exactly 0 for a Pythagorean triple.
    """
    a, b, c = float(a), float(b), float(c)
    _check_triangle(a, b, c)
    gap = a * a + b * b - c * c
    if abs(gap) <= _FLAT_REL_TOL * c * c:
        return 0.0

    m = max(a, b, c)
    if gap > 0:
        # Positive branch.  Divide out the trivial K=0 root; the deflated
        # function tends to gap/2 > 0 at 0+, and is <= 0 somewhere before
        # K_max = pi^2/m^2 (no triangle fits a smaller sphere).
        def g(k):
            s = math.sqrt(k)
            return (math.cos(c * s) - math.cos(a * s) * math.cos(b * s)) / k

        k_max = math.pi * math.pi / (m * m)
        step = k_max / _POS_SCAN_CELLS
        lo, glo = 0.0, gap / 2.0
        for i in range(1, _POS_SCAN_CELLS + 1):
            k = i * step
            gk = g(k)
            if gk == 0.0:
                return k
            if (gk > 0) != (glo > 0):
                return _bisect(g, lo, k, glo, _ROOT_REL_TOL)
            lo, glo = k, gk
        raise RootNotFound(f"no sign change on the positive branch for {(a, b, c)}")

    # Negative branch: substitute K = -t^2, giving cosh(c t) = cosh(a t) cosh(b t).
    # Comparing log-cosh keeps the same sign structure without overflow.
    def h(t):
        return _logcosh(c * t) - _logcosh(a * t) - _logcosh(b * t)

    t_prev = 0.0
    t = 1e-3 / m
    h_prev = 1.0  # analytic sign at 0+ is that of c^2 - a^2 - b^2 > 0
    for _ in range(_NEG_SCAN_DOUBLINGS + 1):
        ht = h(t)
        if ht == 0.0:
            return -t * t
        if ht < 0:
            root = _bisect(h, t_prev, t, h_prev, 0.5 * _ROOT_REL_TOL)
            return -root * root
        t_prev, h_prev = t, ht
        t *= 2.0
    raise RootNotFound(f"no sign change on the negative branch for {(a, b, c)}")


def forward_hypotenuse(a, b, curvature):
    """Hypotenuse of the right triangle with legs a, b in constant curvature.

    Forward evaluation of the generalized cosine rule; the independent check
    for the root solver.
    """
    if curvature > 0:
        s = math.sqrt(curvature)
        if max(a, b) * s >= math.pi:
            raise ValueError("legs do not fit on the sphere")
        return math.acos(max(-1.0, min(1.0, math.cos(a * s) * math.cos(b * s)))) / s
    if curvature < 0:
        t = math.sqrt(-curvature)
        return math.acosh(math.cosh(a * t) * math.cosh(b * t)) / t
    return math.hypot(a, b)


def ricci_scalar_from_mean_sectional(kappa, n):
    """Ricci scalar from the mean sectional curvature in dimension n."""
    if n < 2:
        raise ValueError("dimension must be >= 2")
    return n * (n - 1) * kappa


def default_hop_window(g, rng):
    """(s_min, s_max) hop window from the diameter estimate."""
    diam = diameter_estimate(g, rng)
    return max(2, math.ceil(diam / 3)), diam


def sample_triangle(g, l_e, s_min_hops, s_max_hops, rng, retries=64, apex=None):
    """Construct one approximate right triangle from hop distances.

    All three sides are required to reach the minimum hop scale: the
    half-base b = d(v,w)/2 and the median a = d(u,m) are each >= s_min,
    and the hypotenuse c = d(u,v) lies in [ceil(sqrt(2) s_min), s_max].
    The sqrt(2) floor keeps flat right triangles with both legs at the
    minimum constructible; below it only positively-curved shapes satisfy
    the leg constraints, which would bias the estimate.  The base midpoint
    is drawn uniformly among the qualifying vertices.  Raises NoCandidate
    when no valid triple is found within the retry budget.
    """
    if not 2 <= s_min_hops <= s_max_hops:
        raise ValueError("need 2 <= s_min_hops <= s_max_hops")
    c_min = math.ceil(math.sqrt(2.0) * s_min_hops)
    n = g.vertex_count
    du_fixed = bfs_hops(g, int(apex)) if apex is not None else None
    for _ in range(retries):
        if apex is None:
            u = int(rng.integers(n))
            du = bfs_hops(g, u)
        else:
            u, du = int(apex), du_fixed
        v_cand = np.nonzero((du >= c_min) & (du <= s_max_hops))[0]
        if v_cand.size == 0:
            if apex is not None:
                break
            continue
        v = int(v_cand[rng.integers(v_cand.size)])
        dv = bfs_hops(g, v)
        w_mask = (du == du[v]) & (dv % 2 == 0) & (dv >= 2 * s_min_hops)
        w_mask[v] = False
        w_cand = np.nonzero(w_mask)[0]
        if w_cand.size == 0:
            continue
        w = int(w_cand[rng.integers(w_cand.size)])
        dw = bfs_hops(g, w)
        half = int(dv[w]) // 2
        m_cand = np.nonzero((dv == half) & (dw == half))[0]
        m_cand = m_cand[du[m_cand] >= s_min_hops]
        if m_cand.size == 0:
            continue
        mid = int(m_cand[rng.integers(m_cand.size)])
        a_h, b_h, c_h = int(du[mid]), half, int(du[v])
        return TriangleSample(
            a=a_h * l_e, b=b_h * l_e, c=c_h * l_e,
            apex=u, base_end1=v, base_end2=w, midpoint=mid,
            hops=(a_h, b_h, c_h),
        )
    raise NoCandidate(f"no valid triangle after {retries} retries")


def _collect_chunk(g, l_e, count, s_min, s_max, rng, max_length_scale, apex=None):
    ks = []
    rejected = {}

    def reject(reason):
        rejected[reason] = rejected.get(reason, 0) + 1

    for _ in range(count):
        try:
            tri = sample_triangle(g, l_e, s_min, s_max, rng, apex=apex)
        except NoCandidate:
            reject("no_candidate")
            continue
        if max_length_scale is not None and max(tri.sides()) > max_length_scale:
            reject("max_length_scale")
            continue
        try:
            ks.append(curvature_from_triangle(*tri.sides()))
        except TriangleInequalityViolated:
            reject("triangle_inequality")
        except RootNotFound:
            reject("root_not_found")
    return ks, rejected


def _merge_rejections(parts):
    total = {}
    for part in parts:
        for reason, count in part.items():
            total[reason] = total.get(reason, 0) + count
    return total


def estimate_curvature(g, l_e, n_samples, s_min_hops=None, s_max_hops=None,
                       rng=None, max_length_scale=None, threads=1):
    """Curvature report over ``n_samples`` triangle draws.

    Draws are split into fixed-size chunks, each with its own random
    sub-stream spawned from ``rng``, and merged in chunk order: the result
    is bit-identical for any thread count.  Samples whose construction or
    root solve fails are tallied by reason, not propagated.
    """
    if n_samples < 1:
        raise ValueError("need n_samples >= 1")
    if rng is None:
        raise ValueError("an explicit rng is required for reproducibility")
    if np.any(bfs_hops(g, 0) == UNREACHABLE):
        raise Disconnected("curvature estimation requires a connected graph")
    if s_min_hops is None or s_max_hops is None:
        d_min, d_max = default_hop_window(g, rng)
        s_min_hops = d_min if s_min_hops is None else s_min_hops
        s_max_hops = d_max if s_max_hops is None else s_max_hops

    chunks = chunk_ranges(n_samples)
    streams = rng.spawn(len(chunks))
    jobs = [
        (g, l_e, hi - lo, s_min_hops, s_max_hops, streams[i], max_length_scale)
        for i, (lo, hi) in enumerate(chunks)
    ]
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda args: _collect_chunk(*args), jobs))
    else:
        results = [_collect_chunk(*args) for args in jobs]

    ks = [k for part, _ in results for k in part]
    rejected = _merge_rejections([rej for _, rej in results])
    needed = max(10, n_samples / 100)
    if len(ks) < needed:
        raise TooFewAccepted(
            f"{len(ks)} of {n_samples} samples accepted, below the minimum of "
            f"{needed:g} for a meaningful report (rejections: {rejected})"
        )
    return CurvatureReport.from_samples(ks, rejected)


def vertex_curvature(g, l_e, samples_per_vertex, s_min_hops, s_max_hops, rng):
    """Mean curvature per vertex over triangles having that vertex as apex.

    Returns an array with NaN for vertices with no accepted sample.
    """
    n = g.vertex_count
    out = np.full(n, np.nan)
    streams = rng.spawn(n)
    for v in range(n):
        ks, _ = _collect_chunk(
            g, l_e, samples_per_vertex, s_min_hops, s_max_hops, streams[v],
            None, apex=v,
        )
        if ks:
            out[v] = float(np.mean(ks))
    return out
