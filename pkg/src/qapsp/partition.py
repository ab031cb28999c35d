"""Point partitions with box cells, and surface-crossing queries.

Points live in R^{d+1}: d spatial coordinates followed by a height z (an
entry of the right-hand matrix). A surface is ``{(x, z) : w(p, x) + z = c0}``.
Cells are axis-aligned boxes, so the range of ``w(p, x) + z`` over a cell is
available in closed form and a cell meets the surface iff c0 lies in it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import EUCLID_GRID, EUCLIDEAN, NODE_WEIGHT

STRATEGIES = ("sorted_1d", "grid_2d")
STRATEGY_FOR = {NODE_WEIGHT: "sorted_1d", EUCLIDEAN: "grid_2d"}


@dataclass(frozen=True)
class Partition:
    subsets: tuple  # tuple of index arrays into the point set
    lo: np.ndarray  # (cells, d+1)
    hi: np.ndarray
    strategy: str
    size_cap: int

    @property
    def r(self) -> int:
        return len(self.subsets)

    @property
    def sizes(self) -> np.ndarray:
        return np.array([len(s) for s in self.subsets], dtype=np.int64)

    def cell_of(self, m: int) -> np.ndarray:
        out = np.full(m, -1, dtype=np.int64)
        for c, sub in enumerate(self.subsets):
            out[sub] = c
        return out

    def crossed_cells(self, weight_fn: str, p, c0: float, interior: bool = False) -> np.ndarray:
        """Indices of cells the surface w(p, .) + z = c0 meets.

        With ``interior=True`` only cells whose interior it passes through.
        """
        fmin, fmax = surface_range(weight_fn, np.atleast_2d(np.asarray(p, dtype=float)), self.lo, self.hi,
                                   slack=0.0)
        fmin, fmax = fmin[0], fmax[0]
        if interior:
            hit = (fmin < c0) & (c0 < fmax)
        else:
            hit = (fmin <= c0) & (c0 <= fmax)
        return np.flatnonzero(hit)


def build_partition(points, r: int, strategy: str) -> Partition:
    """Split ``points`` (m x (d+1)) into at most r subsets with bounding cells.

    sorted_1d: sort by height and cut into contiguous groups.
    grid_2d: a sqrt(r) x sqrt(r) grid over the first two coordinates; cells
    over the size cap spill their excess round-robin into cells with room.
    """
    pts = np.asarray(points, dtype=float)
    if r < 1:
        raise ValueError("r must be >= 1")
    if pts.ndim != 2:
        raise ValueError("points must be a 2-d array")
    m = pts.shape[0]
    if m == 0:
        dim = pts.shape[1]
        return Partition((), np.zeros((0, dim)), np.zeros((0, dim)), strategy, 0)
    r = min(r, m)
    cap = -(-2 * m // r)
    if strategy == "sorted_1d":
        order = np.argsort(pts[:, -1], kind="stable")
        groups = [g for g in np.array_split(order, r)]
    elif strategy == "grid_2d":
        if pts.shape[1] < 3:
            raise ValueError("grid_2d needs two spatial coordinates")
        groups, cap = _grid_groups(pts, r, cap)
    else:
        raise ValueError(f"unknown partition strategy {strategy!r}")
    groups = [np.sort(g) for g in groups if len(g)]
    lo = np.array([pts[g].min(axis=0) for g in groups])
    hi = np.array([pts[g].max(axis=0) for g in groups])
    return Partition(tuple(groups), lo, hi, strategy, cap)


def _grid_groups(pts: np.ndarray, r: int, cap: int):
    m = pts.shape[0]
    g = max(1, math.isqrt(r))
    cap = max(cap, -(-m // (g * g)))
    xy = pts[:, :2]
    lo, hi = xy.min(axis=0), xy.max(axis=0)
    span = np.where(hi > lo, hi - lo, 1.0)
    cell = np.minimum(((xy - lo) / span * g).astype(np.int64), g - 1)
    flat = cell[:, 0] * g + cell[:, 1]
    buckets = [list(np.flatnonzero(flat == c)) for c in range(g * g)]
    spill = []
    for b in buckets:
        if len(b) > cap:
            spill.extend(b[cap:])
            del b[cap:]
    target = 0
    for idx in spill:
        while len(buckets[target % len(buckets)]) >= cap:
            target += 1
        buckets[target % len(buckets)].append(idx)
        target += 1
    return [np.array(b, dtype=np.int64) for b in buckets], cap


def surface_range(weight_fn: str, P: np.ndarray, lo: np.ndarray, hi: np.ndarray, slack: float | None = None):
    """Min and max of w(p, x) + z over each box, for each p.

    P is (m, d); lo/hi are (..., d+1). Returns arrays of shape (m, ...).
    Euclidean ranges are widened by the rounding grid so that rounded edge
    weights never fall outside them.
    """
    P = np.asarray(P, dtype=float)
    zlo, zhi = lo[..., -1], hi[..., -1]
    if weight_fn == NODE_WEIGHT:
        w = P[:, 0].reshape((-1,) + (1,) * zlo.ndim)
        return w + zlo, w + zhi
    if weight_fn == EUCLIDEAN:
        if slack is None:
            slack = EUCLID_GRID
        d = P.shape[1]
        shape = (-1,) + (1,) * zlo.ndim + (d,)
        p = P.reshape(shape)
        xlo, xhi = lo[..., :d][None], hi[..., :d][None]
        near = np.maximum(np.maximum(xlo - p, p - xhi), 0.0)
        far = np.maximum(np.abs(p - xlo), np.abs(p - xhi))
        dmin = np.sqrt((near ** 2).sum(axis=-1))
        dmax = np.sqrt((far ** 2).sum(axis=-1))
        return dmin - slack + zlo, dmax + slack + zhi
    raise ValueError(f"unknown weight function {weight_fn!r}")
