"""Compact undirected graphs with BFS shortest-path machinery.

The graph is stored in compressed sparse form (per-vertex sorted neighbor
lists).  Hop counts are the combinatorial metric used by every estimator;
they are exact unweighted shortest-path lengths computed one source row at
a time, so no all-pairs matrix is ever materialized for large graphs.

Graphs are immutable after construction; BFS from distinct sources into
worker-owned outputs is the intended parallelization pattern.
"""

import json

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from .errors import Disconnected
from .manifolds import manifold_from_json

UNREACHABLE = np.uint32(0xFFFFFFFF)


class Graph:
    """Undirected simple graph: symmetric adjacency, no loops, no duplicates."""

    def __init__(self, vertex_count, edges_u, edges_v):
        edges_u = np.asarray(edges_u, dtype=np.int64)
        edges_v = np.asarray(edges_v, dtype=np.int64)
        if edges_u.size and (edges_u.min() < 0 or max(edges_u.max(), edges_v.max()) >= vertex_count):
            raise ValueError("edge endpoint out of range")
        if np.any(edges_u == edges_v):
            raise ValueError("self-loops are not allowed")
        self.vertex_count = int(vertex_count)
        lo = np.minimum(edges_u, edges_v)
        hi = np.maximum(edges_u, edges_v)
        key = lo * vertex_count + hi
        if np.unique(key).size != key.size:
            raise ValueError("duplicate edges are not allowed")
        rows = np.concatenate([lo, hi])
        cols = np.concatenate([hi, lo])
        order = np.lexsort((cols, rows))
        rows, cols = rows[order], cols[order]
        self.indptr = np.zeros(vertex_count + 1, dtype=np.int64)
        np.add.at(self.indptr, rows + 1, 1)
        np.cumsum(self.indptr, out=self.indptr)
        self.indices = cols.astype(np.int64)
        self.edge_count = int(lo.size)
        self._csr = csr_matrix(
            (np.ones(self.indices.size, dtype=np.int8), self.indices, self.indptr),
            shape=(vertex_count, vertex_count),
        )

    def neighbors(self, v):
        return self.indices[self.indptr[v] : self.indptr[v + 1]]

    def degrees(self):
        return np.diff(self.indptr)

    def edges(self):
        """Iterate edges once as (u, v) with u < v."""
        for u in range(self.vertex_count):
            for v in self.neighbors(u):
                if u < v:
                    yield u, int(v)

    def __repr__(self):
        return f"Graph(V={self.vertex_count}, E={self.edge_count})"


def from_adjacency_matrix(adj_bool):
    """Graph from a symmetric boolean adjacency matrix (diagonal ignored)."""
    a = np.asarray(adj_bool, dtype=bool).copy()
    np.fill_diagonal(a, False)
    iu, ju = np.nonzero(np.triu(a, 1))
    return Graph(a.shape[0], iu, ju)


def bfs_hops(g, source):
    """Hop counts from ``source`` to every vertex.

    Unreachable vertices get the sentinel :data:`UNREACHABLE`.
    """
    d = dijkstra(g._csr, directed=False, unweighted=True, indices=source)
    out = np.full(g.vertex_count, UNREACHABLE, dtype=np.uint32)
    finite = np.isfinite(d)
    out[finite] = d[finite].astype(np.uint32)
    return out


def is_connected(g):
    """True iff a BFS from vertex 0 reaches every vertex."""
    if g.vertex_count == 0:
        raise ValueError("graph must have at least one vertex")
    return bool(np.all(bfs_hops(g, 0) != UNREACHABLE))


def diameter_estimate(g, rng):
    """Diameter lower bound by repeated double-sweep BFS (4 sweeps).

    Each sweep starts from the most eccentric vertex the previous sweep
    found; the first starts from a random vertex.  Exact on trees, a lower
    bound in general.
    """
    start = int(rng.integers(g.vertex_count))
    best = 0
    for _ in range(4):
        hops = bfs_hops(g, start)
        if np.any(hops == UNREACHABLE):
            raise Disconnected("diameter estimate requires a connected graph")
        ecc = int(hops.max())
        best = max(best, ecc)
        start = int(np.argmax(hops))
    return best


def save_edge_list(g, path):
    """Write the text edge-list format: "V E" then one "u v" line per edge."""
    with open(path, "w") as fh:
        fh.write(f"{g.vertex_count} {g.edge_count}\n")
        for u, v in g.edges():
            fh.write(f"{u} {v}\n")


def load_edge_list(path):
    with open(path) as fh:
        header = fh.readline().split()
        vcount, ecount = int(header[0]), int(header[1])
        us = np.empty(ecount, dtype=np.int64)
        vs = np.empty(ecount, dtype=np.int64)
        for i in range(ecount):
            parts = fh.readline().split()
            us[i], vs[i] = int(parts[0]), int(parts[1])
    return Graph(vcount, us, vs)


class GeometricGraph:
    """A graph whose vertices carry coordinates on a manifold.

    ``connection_length`` and ``tolerance`` are the annulus parameters the
    edges satisfy: an edge (u, v) exists iff |d(u,v) - l| <= l * p.
    ``effective_edge_length`` is filled in lazily by the distortion module.
    """

    def __init__(self, graph, manifold, coordinates, connection_length, tolerance,
                 effective_edge_length=None):
        self.graph = graph
        self.manifold = manifold
        self.coordinates = np.asarray(coordinates, dtype=np.float64)
        self.connection_length = float(connection_length)
        self.tolerance = float(tolerance)
        self.effective_edge_length = effective_edge_length

    @property
    def vertex_count(self):
        return self.graph.vertex_count

    def __repr__(self):
        return (f"GeometricGraph({self.graph!r}, {self.manifold!r}, "
                f"l={self.connection_length:.6g}, p={self.tolerance})")


def save_geometric_graph(gg, prefix):
    """Write ``<prefix>.edges`` (edge list) and ``<prefix>.json`` (sidecar)."""
    save_edge_list(gg.graph, f"{prefix}.edges")
    sidecar = {
        "manifold": gg.manifold.to_json(),
        "connection_length": gg.connection_length,
        "tolerance": gg.tolerance,
        "coordinates": gg.coordinates.tolist(),
    }
    if gg.effective_edge_length is not None:
        sidecar["effective_edge_length"] = gg.effective_edge_length
    with open(f"{prefix}.json", "w") as fh:
        json.dump(sidecar, fh, sort_keys=True)
        fh.write("\n")


def load_geometric_graph(prefix):
    graph = load_edge_list(f"{prefix}.edges")
    with open(f"{prefix}.json") as fh:
        sidecar = json.load(fh)
    return GeometricGraph(
        graph,
        manifold_from_json(sidecar["manifold"]),
        np.asarray(sidecar["coordinates"], dtype=np.float64),
        sidecar["connection_length"],
        sidecar["tolerance"],
        sidecar.get("effective_edge_length"),
    )
