"""Single-source procedures on dense weight matrices.

``quantum_dijkstra`` returns classical Dijkstra distances and books an
analytic ``ceil(n^1.5)`` charge. ``nondecreasing_pass`` is the per-target
search for nondecreasing paths that settles each vertex once, charged
``ceil(n_z^1.5)`` per neighbour call.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .graph import INF, NEG_INF, WeightedGraph
from .qmodel import CostLedger, ceil_sqrt


class NegativeWeightError(ValueError):
    pass


@dataclass
class SsspResult:
    distances: np.ndarray
    order: list
    mode: str = "classical"


@dataclass
class NondecreasingResult:
    """Output of one nondecreasing pass towards (backward) or from (forward) v.

    backward: ``label[u]`` is the last-edge weight w(z, v) of the call that
    reached u, ``dist[u]`` the weight of the first edge leaving u on that path.
    forward: ``label[u]`` is the departure weight w(v, z) of the call that
    reached u, ``dist[u]`` the weight of the edge arriving at u.
    """

    v: int
    direction: str
    label: np.ndarray
    dist: np.ndarray
    calls: list = field(default_factory=list)  # (z, n_z) per call made
    removed: list = field(default_factory=list)  # settle order

    @property
    def charge(self) -> int:
        return sum(pass_charge(nz) for _, nz in self.calls)


def _matrix(G) -> np.ndarray:
    return G.W if isinstance(G, WeightedGraph) else np.asarray(G, dtype=float)


def _check_nonneg(W: np.ndarray) -> None:
    fin = np.isfinite(W)
    if np.any(W[fin] < 0) or np.any(W == NEG_INF):
        raise NegativeWeightError("Dijkstra needs nonnegative weights")


def classical_dijkstra(G, source: int) -> SsspResult:
    """Binary-heap Dijkstra; ties settle the smaller vertex first."""
    W = _matrix(G)
    _check_nonneg(W)
    n = W.shape[0]
    dist = np.full(n, INF)
    dist[source] = 0.0
    done = np.zeros(n, dtype=bool)
    order = []
    heap = [(0.0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        order.append(u)
        row = W[u]
        for v in np.flatnonzero(np.isfinite(row) & ~done):
            nd = d + row[v]
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, int(v)))
    return SsspResult(dist, order)


def dijkstra_many(W, sources) -> np.ndarray:
    """Distances from every source at once (rows follow ``sources``).

    Dense-matrix Dijkstra vectorised across sources; same values as
    ``classical_dijkstra``.
    """
    W = np.asarray(W, dtype=float)
    _check_nonneg(W)
    sources = np.asarray(sources, dtype=np.int64)
    m, n = len(sources), W.shape[0]
    D = np.full((m, n), INF)
    rows = np.arange(m)
    D[rows, sources] = 0.0
    done = np.zeros((m, n), dtype=bool)
    for _ in range(n):
        cand = np.where(done, INF, D)
        u = np.argmin(cand, axis=1)
        du = cand[rows, u]
        live = du < INF
        if not live.any():
            break
        r, uu = rows[live], u[live]
        done[r, uu] = True
        D[r] = np.minimum(D[r], du[live, None] + W[uu])
    return D


def qdijkstra_charge(n: int) -> int:
    """ceil(n^1.5), computed exactly."""
    return ceil_sqrt(n ** 3)


def quantum_dijkstra(G, source: int, ledger: Optional[CostLedger] = None) -> SsspResult:
    res = classical_dijkstra(G, source)
    if ledger is not None:
        ledger.add_analytic("qdijkstra", qdijkstra_charge(len(res.distances)))
    return SsspResult(res.distances, res.order, mode="quantum")


def quantum_dijkstra_many(W, sources, ledger: Optional[CostLedger] = None, reverse: bool = False) -> np.ndarray:
    """Rows d(s, .) for s in sources, or columns d(., s) stacked as rows if reverse."""
    W = np.asarray(W, dtype=float)
    D = dijkstra_many(W.T if reverse else W, sources)
    if ledger is not None:
        for _ in range(len(sources)):
            ledger.add_analytic("qdijkstra", qdijkstra_charge(W.shape[0]))
    return D


# ---------------------------------------------------------------------------
# nondecreasing paths


def pass_charge(n_z: int) -> int:
    return ceil_sqrt(n_z ** 3)


def _backward(W: np.ndarray, exists: np.ndarray, v: int):
    """Settle-once search towards v over nondecreasing paths.

    Neighbours z of v are taken in nondecreasing w(z, v); each call runs a
    max-key search from z over reversed edges, crossing edge (y, x) only if
    w(y, x) <= dist(x). Settled vertices are never revisited.
    """
    n = W.shape[0]
    label = np.full(n, INF)
    dist = np.full(n, NEG_INF)
    removed = np.zeros(n, dtype=bool)
    removed[v] = True
    label[v] = NEG_INF
    calls, log = [], []
    nbrs = [z for z in np.flatnonzero(exists[:, v]) if z != v]
    nbrs.sort(key=lambda z: (W[z, v], z))
    for z in nbrs:
        if removed[z]:
            continue
        start = W[z, v]
        best = {z: start}
        heap = [(-start, int(z))]
        count = 0
        while heap:
            negd, x = heapq.heappop(heap)
            if removed[x] or -negd < best.get(x, NEG_INF):
                continue
            removed[x] = True
            label[x] = start
            dist[x] = -negd
            log.append(x)
            count += 1
            for y in np.flatnonzero(exists[:, x] & ~removed):
                w = W[y, x]
                if w <= dist[x] and w > best.get(int(y), NEG_INF):
                    best[int(y)] = w
                    heapq.heappush(heap, (-w, int(y)))
        calls.append((int(z), count))
    return label, dist, calls, log


def nondecreasing_pass(G, v: int, direction: str = "backward",
                       ledger: Optional[CostLedger] = None) -> NondecreasingResult:
    """One settle-once nondecreasing-path search anchored at v.

    ``forward`` runs the same procedure on the reversed graph with negated
    weights, i.e. on paths leaving v, and maps the values back.
    """
    W = _matrix(G)
    exists = np.isfinite(W)
    np.fill_diagonal(exists, False)
    if direction == "backward":
        label, dist, calls, log = _backward(W, exists, v)
    elif direction == "forward":
        label, dist, calls, log = _backward(-W.T, exists.T, v)
        label, dist = -label, -dist
    else:
        raise ValueError(f"unknown direction {direction!r}")
    res = NondecreasingResult(v, direction, label, dist, calls, log)
    if ledger is not None:
        ledger.add_analytic(f"ndpass_{direction}", res.charge)
    return res


def exact_backward_labels(W, v: int) -> np.ndarray:
    """Exact min last-edge weight of a nondecreasing u -> v path, for every u.

    Same neighbour order as the settle-once pass, but a vertex is searched
    again whenever a later call offers it a larger outgoing-edge allowance.
    ``-inf`` at v (empty path), ``inf`` where no path exists.
    """
    W = np.asarray(W, dtype=float)
    exists = np.isfinite(W)
    np.fill_diagonal(exists, False)
    n = W.shape[0]
    label = np.full(n, INF)
    allow = np.full(n, NEG_INF)
    label[v] = NEG_INF
    nbrs = [z for z in np.flatnonzero(exists[:, v]) if z != v]
    nbrs.sort(key=lambda z: (W[z, v], z))
    for z in nbrs:
        last = W[z, v]
        if last <= allow[z]:
            continue
        allow[z] = last
        if label[z] == INF:
            label[z] = last
        heap = [(-last, int(z))]
        while heap:
            negd, x = heapq.heappop(heap)
            if -negd < allow[x]:
                continue
            for y in np.flatnonzero(exists[:, x]):
                w = W[y, x]
                if w <= allow[x] and w > allow[y]:
                    allow[y] = w
                    if label[y] == INF:
                        label[y] = last
                    heapq.heappush(heap, (-w, int(y)))
    return label


def threshold_arrivals(W, x: int, thresholds) -> np.ndarray:
    """Min last-edge weight of nondecreasing x -> v paths whose first edge is >= a.

    One row per threshold a; vectorised earliest-arrival search. Column x
    holds only paths that return to x (the empty path is not counted).
    """
    W = np.asarray(W, dtype=float)
    exists = np.isfinite(W)
    np.fill_diagonal(exists, False)
    th = np.asarray(thresholds, dtype=float)
    T, n = len(th), W.shape[0]
    arr = np.full((T, n), INF)
    out_w = np.where(exists[x], W[x], INF)
    arr[:] = np.where(out_w[None, :] >= th[:, None], out_w[None, :], INF)
    done = np.zeros((T, n), dtype=bool)
    rows = np.arange(T)
    Wm = np.where(exists, W, INF)
    for _ in range(n):
        cand = np.where(done, INF, arr)
        u = np.argmin(cand, axis=1)
        au = cand[rows, u]
        live = au < INF
        if not live.any():
            break
        r, uu = rows[live], u[live]
        done[r, uu] = True
        nxt = Wm[uu]
        ok = nxt >= au[live, None]
        arr[r] = np.minimum(arr[r], np.where(ok, nxt, INF))
    return arr
