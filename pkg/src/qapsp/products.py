"""Structured matrix products with simulated-Grover inner loops.

Each product returns the exact classical result (given delta = 0) and charges
the ledger what the quantum algorithm would spend: Boolean matrix products go
to ``matmul_ops``, Grover searches to ``quantum_queries``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .graph import INF, NODE_WEIGHT, WeightedGraph
from .matmul import boolean_matmul
from .partition import STRATEGY_FOR, build_partition, surface_range
from .qmodel import DEFAULT_CONFIG, CostLedger, GroverConfig, grover_charges, qmin_rows

# exponent of the black-box (min, <=) product algorithm
MINLE_EXPONENT = 2.473


class ProductResult(NamedTuple):
    values: np.ndarray
    witness: np.ndarray  # -1 where the entry is infinite


class SparseProductResult(NamedTuple):
    rows: np.ndarray
    cols: np.ndarray
    values: np.ndarray
    witness: np.ndarray

    def as_dict(self) -> dict:
        return {(int(i), int(j)): float(v) for i, j, v in zip(self.rows, self.cols, self.values)}


@dataclass
class GeometricMatrix:
    """A matrix whose finite entries are w(p_i, p_k) for a fixed weight function."""

    values: np.ndarray
    points: np.ndarray
    weight_fn: str

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        self.points = np.asarray(self.points, dtype=float)
        if self.points.ndim == 1:
            self.points = self.points[:, None]

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @classmethod
    def from_graph(cls, G: WeightedGraph) -> "GeometricMatrix":
        if G.geometry is None:
            raise ValueError("graph carries no geometry")
        return cls(G.W, G.geometry.points, G.geometry.weight_fn)

    @classmethod
    def node_weighted(cls, mask, weights) -> "GeometricMatrix":
        """Row-constant matrix: entry (i, k) is weights[i] where mask[i, k]."""
        weights = np.asarray(weights, dtype=float)
        return cls(np.where(np.asarray(mask, dtype=bool), weights[:, None], INF), weights, NODE_WEIGHT)


# ---------------------------------------------------------------------------
# Boolean x real min product with sorted buckets


@dataclass
class Bucketing:
    d: int
    order: np.ndarray  # (n, n): order[:, j] sorts column j ascending
    bucket: np.ndarray  # (n, n): bucket index of entry (k, j), -1 if infinite
    sizes: np.ndarray  # (buckets, n): finite entries in bucket r of column j

    @property
    def count(self) -> int:
        return self.sizes.shape[0]


def column_bucketing(B, d: int) -> Bucketing:
    """Sort every column of B and cut it into buckets of d consecutive ranks.

    The last bucket of a column may be ragged; infinite entries are left out.
    """
    B = np.asarray(B, dtype=float)
    n = B.shape[0]
    if not 1 <= d <= max(n, 1):
        raise ValueError(f"bucket size d={d} outside [1, {n}]")
    order = np.argsort(B, axis=0, kind="stable")
    rank = np.empty_like(order)
    cols = np.arange(B.shape[1])
    rank[order, cols[None, :]] = np.arange(n)[:, None]
    finite = np.isfinite(B)
    bucket = np.where(finite, rank // d, -1)
    nb = max(1, -(-n // d))
    fcount = finite.sum(axis=0)
    starts = np.arange(nb)[:, None] * d
    sizes = np.clip(fcount[None, :] - starts, 0, d)
    return Bucketing(d, order, bucket, sizes)


def bucketed_bool_min_product(A, B, d: int, ledger: Optional[CostLedger] = None,
                              config: GroverConfig = DEFAULT_CONFIG, kernel: str = "naive",
                              trace: Optional[list] = None, tag: tuple = ()) -> ProductResult:
    """C[i,j] = min{B[k,j] : A[i,k] = 1} via bucket detection and Grover.

    One Boolean product per bucket finds the first bucket r_ij of column j
    that holds a witness for row i; a Grover minimum over that bucket
    finishes the entry.
    """
    A = np.asarray(A, dtype=bool)
    B = np.asarray(B, dtype=float)
    if A.shape != B.shape or A.shape[0] != A.shape[1]:
        raise ValueError(f"dimension mismatch: {A.shape} vs {B.shape}")
    n = B.shape[0]
    bk = column_bucketing(B, d)
    first = np.full((n, n), -1, dtype=np.int64)
    for r in range(bk.count):
        hit = boolean_matmul(A, bk.bucket == r, kernel, ledger)
        first[hit & (first < 0)] = r
    if ledger is not None:
        ledger.add_classical(n * n * bk.count)

    C = np.full((n, n), INF)
    wit = np.full((n, n), -1, dtype=np.int64)
    cols = np.arange(n)
    for i in range(n):
        ri = first[i]
        active = ri >= 0
        sizes = np.where(active, bk.sizes[np.maximum(ri, 0), cols], 0)
        mask = A[i][:, None] & (bk.bucket == ri[None, :]) & active[None, :]
        k, v = qmin_rows(B.T, mask.T, sizes, ledger, config, tag=("bucketed",) + tag + (i,))
        C[i], wit[i] = v, k
        if trace is not None:
            charges = grover_charges(sizes, config.c_g) * config.repetitions
            for j in np.flatnonzero(active):
                trace.append({"i": i, "j": int(j), "bucket": int(ri[j]), "size": int(sizes[j]),
                              "charge": int(charges[j])})
    return ProductResult(C, wit)


# ---------------------------------------------------------------------------
# geometric star product (dense and sparse)


def _check_strategy(A: GeometricMatrix, strategy: Optional[str]) -> str:
    expected = STRATEGY_FOR.get(A.weight_fn)
    if expected is None:
        raise ValueError(f"no partition strategy for weight function {A.weight_fn!r}")
    if strategy is None:
        return expected
    if strategy != expected:
        raise ValueError(f"strategy {strategy!r} does not match weight function {A.weight_fn!r}")
    return strategy


class _Cells:
    """Per-column partitions of the points {(p_k, B[k, j]) : B[k, j] finite}."""

    def __init__(self, A: GeometricMatrix, B: np.ndarray, cells_for, strategy: str):
        n, ncols = B.shape
        dim = A.points.shape[1]
        self.cell_of = np.full((n, ncols), -1, dtype=np.int64)
        parts = []
        for j in range(ncols):
            rows = np.flatnonzero(np.isfinite(B[:, j]))
            rj = cells_for(len(rows)) if len(rows) else 0
            if rj == 0:
                parts.append(None)
                continue
            pts = np.column_stack([A.points[rows], B[rows, j]])
            part = build_partition(pts, rj, strategy)
            for c, sub in enumerate(part.subsets):
                self.cell_of[rows[sub], j] = c
            parts.append(part)
        self.ncells = np.array([0 if p is None else p.r for p in parts], dtype=np.int64)
        R = int(self.ncells.max()) if ncols else 0
        self.R = R
        self.lo = np.zeros((ncols, R, dim + 1))
        self.hi = np.zeros((ncols, R, dim + 1))
        self.size = np.zeros((ncols, R), dtype=np.int64)
        self.valid = np.zeros((ncols, R), dtype=bool)
        for j, part in enumerate(parts):
            if part is None:
                continue
            self.lo[j, : part.r] = part.lo
            self.hi[j, : part.r] = part.hi
            self.size[j, : part.r] = part.sizes
            self.valid[j, : part.r] = True
        self.offsets = np.concatenate([[0], np.cumsum(self.ncells)])

    def intersections(self, A: GeometricMatrix, kernel: str, ledger) -> np.ndarray:
        """Boolean (n, ncols, R): does row i's finite set meet cell (j, l)?"""
        n, ncols = self.cell_of.shape
        total = int(self.offsets[-1])
        E = np.zeros((n, total), dtype=bool)
        k, j = np.nonzero(self.cell_of >= 0)
        E[k, self.offsets[j] + self.cell_of[k, j]] = True
        DE = boolean_matmul(np.isfinite(A.values), E, kernel, ledger)
        out = np.zeros((A.n, ncols, self.R), dtype=bool)
        jj = np.repeat(np.arange(ncols), self.ncells)
        ll = np.arange(total) - self.offsets[jj]
        out[:, jj, ll] = DE
        return out


def _geometric_row(A: GeometricMatrix, B, cells: _Cells, DE, i: int, J: np.ndarray,
                   ledger, config, tag, trace):
    """Entries (i, j) for j in J."""
    if cells.R == 0:
        return np.full(len(J), -1, dtype=np.int64), np.full(len(J), INF)
    lo, hi = cells.lo[J], cells.hi[J]
    qual = DE[i, J] & cells.valid[J]
    fmin, fmax = surface_range(A.weight_fn, A.points[i : i + 1], lo, hi)
    fmin, fmax = fmin[0], fmax[0]
    ncell = cells.ncells[J]
    # upper bound: smallest cell supremum over cells that hold a finite entry of row i
    _, chat = qmin_rows(fmax, qual, ncell, ledger, config, tag=("chat",) + tag + (i,))
    cross = qual & (fmin <= chat[:, None]) & (chat[:, None] <= fmax)
    pool = (cross * cells.size[J]).sum(axis=1)
    cof = cells.cell_of[:, J]
    inpool = (cof >= 0) & cross[np.arange(len(J))[None, :], np.maximum(cof, 0)]
    mask = np.isfinite(A.values[i])[:, None] & inpool
    vals = A.values[i][:, None] + B[:, J]
    k, v = qmin_rows(vals.T, mask.T, pool, ledger, config, tag=("refine",) + tag + (i,))
    if trace is not None:
        c1 = grover_charges(ncell, config.c_g) * config.repetitions
        c2 = grover_charges(pool, config.c_g) * config.repetitions
        for t, j in enumerate(J):
            if ncell[t]:
                trace.append({"i": i, "j": int(j), "cells": int(ncell[t]),
                              "crossed": int(cross[t].sum()), "pool": int(pool[t]),
                              "charge": int(c1[t] + c2[t])})
    return k, v


def geometric_star_product(A: GeometricMatrix, B, r: int, strategy: Optional[str] = None,
                           ledger: Optional[CostLedger] = None, config: GroverConfig = DEFAULT_CONFIG,
                           kernel: str = "naive", trace: Optional[list] = None,
                           tag: tuple = ()) -> ProductResult:
    """Distance product A * B for a geometrically weighted A.

    Per column j the points (p_k, B[k, j]) are split into r cells. Row i
    first finds, by Grover over the cells it meets, the smallest cell
    supremum c_hat; the answer is then a Grover minimum over the cells the
    level surface w(p_i, x) + z = c_hat passes through.
    """
    strategy = _check_strategy(A, strategy)
    B = np.asarray(B, dtype=float)
    n = A.n
    if B.shape != (n, n):
        raise ValueError(f"dimension mismatch: {A.values.shape} vs {B.shape}")
    if not 1 <= r <= max(n, 1):
        raise ValueError(f"r={r} outside [1, {n}]")
    cells = _Cells(A, B, lambda m: min(r, m), strategy)
    DE = cells.intersections(A, kernel, ledger)
    C = np.full((n, n), INF)
    wit = np.full((n, n), -1, dtype=np.int64)
    J = np.arange(n)
    for i in range(n):
        wit[i], C[i] = _geometric_row(A, B, cells, DE, i, J, ledger, config, ("geo",) + tag, trace)
    return ProductResult(C, wit)


def sparse_geometric_star_product(A: GeometricMatrix, B, requested, r: int, strategy: Optional[str] = None,
                                  ledger: Optional[CostLedger] = None, config: GroverConfig = DEFAULT_CONFIG,
                                  kernel: str = "naive", trace: Optional[list] = None,
                                  tag: tuple = ()) -> SparseProductResult:
    """Selected entries of A * B when B is sparse.

    Column j is partitioned into r_j = ceil(r |G_j| / n) cells, G_j being its
    finite rows, so the cells keep size about n / r.
    """
    strategy = _check_strategy(A, strategy)
    B = np.asarray(B, dtype=float)
    n = A.n
    if B.shape != (n, n):
        raise ValueError(f"dimension mismatch: {A.values.shape} vs {B.shape}")
    if r < 1:
        raise ValueError("r must be >= 1")
    req = np.asarray(list(requested), dtype=np.int64).reshape(-1, 2)
    flat = np.unique(req[:, 0] * n + req[:, 1]) if len(req) else np.zeros(0, dtype=np.int64)
    rows, cols = flat // n, flat % n
    cells = _Cells(A, B, lambda m: min(m, max(1, -(-r * m // n))), strategy)
    DE = cells.intersections(A, kernel, ledger)
    vals = np.full(len(flat), INF)
    wit = np.full(len(flat), -1, dtype=np.int64)
    starts = np.searchsorted(rows, np.arange(n + 1))
    for i in range(n):
        a, b = starts[i], starts[i + 1]
        if a == b:
            continue
        wit[a:b], vals[a:b] = _geometric_row(A, B, cells, DE, i, cols[a:b], ledger, config,
                                             ("sparse",) + tag, trace)
    return SparseProductResult(rows, cols, vals, wit)


# ---------------------------------------------------------------------------
# trivial Grover distance product and the (min, <=) product


def trivial_star_product(A, B, ledger: Optional[CostLedger] = None, config: GroverConfig = DEFAULT_CONFIG,
                         support=None, tag: tuple = ()) -> ProductResult:
    """Distance product with one Grover minimum per entry.

    ``support`` restricts the inner index to a known set (e.g. a hitting set),
    shrinking every search to |support| items.
    """
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    if A.shape != B.shape or A.shape[0] != A.shape[1]:
        raise ValueError(f"dimension mismatch: {A.shape} vs {B.shape}")
    n = A.shape[0]
    if support is None:
        inner = np.ones(n, dtype=bool)
    else:
        inner = np.zeros(n, dtype=bool)
        inner[np.asarray(support, dtype=np.int64)] = True
    N = int(inner.sum())
    sizes = np.full(n, N, dtype=np.int64)
    C = np.full((n, n), INF)
    wit = np.full((n, n), -1, dtype=np.int64)
    for i in range(n):
        vals = A[i][:, None] + B
        mask = np.broadcast_to(inner[:, None], vals.shape)
        wit[i], C[i] = qmin_rows(vals.T, mask.T, sizes, ledger, config, tag=("trivial",) + tag + (i,))
    return ProductResult(C, wit)


def minle_charge(n: int) -> int:
    return math.ceil(n ** MINLE_EXPONENT)


def minle_product(X, Y, mode: str = "analytic", ledger: Optional[CostLedger] = None,
                  config: GroverConfig = DEFAULT_CONFIG, tag: tuple = ()) -> ProductResult:
    """(min, <=) product C[i,j] = min{Y[k,j] : X[i,k] <= Y[k,j]}.

    ``analytic`` computes the product classically and books the black-box
    quantum algorithm's cost; ``trivial`` runs one filtered Grover minimum
    per entry.
    """
    from .oracles import brute_minle_product

    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    if X.shape != Y.shape or X.shape[0] != X.shape[1]:
        raise ValueError(f"dimension mismatch: {X.shape} vs {Y.shape}")
    n = X.shape[0]
    if mode == "analytic":
        C, wit = brute_minle_product(X, Y, return_witness=True)
        if ledger is not None:
            ledger.add_analytic("minle", minle_charge(n))
        return ProductResult(C, wit)
    if mode == "trivial":
        C = np.full((n, n), INF)
        wit = np.full((n, n), -1, dtype=np.int64)
        sizes = np.full(n, n, dtype=np.int64)
        for i in range(n):
            mask = X[i][:, None] <= Y
            wit[i], C[i] = qmin_rows(Y.T, mask.T, sizes, ledger, config, tag=("minle",) + tag + (i,))
        return ProductResult(C, wit)
    raise ValueError(f"unknown (min, <=) mode {mode!r}")
