"""Brute-force reference implementations.

These are the correctness oracles every quantum-charged algorithm is checked
against. They are plain classical computations and charge only
``classical_ops`` when a ledger is supplied.
"""
from __future__ import annotations

from typing import Optional

import numpy as np

from .graph import INF, NEG_INF, WeightedGraph, min_plus_identity
from .qmodel import CostLedger


def _square_pair(A, B):
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    if A.ndim != 2 or B.ndim != 2 or A.shape[0] != A.shape[1] or A.shape != B.shape:
        raise ValueError(f"dimension mismatch: {A.shape} vs {B.shape}")
    return A, B


def _weights(G) -> np.ndarray:
    return G.W if isinstance(G, WeightedGraph) else np.asarray(G, dtype=float)


def brute_distance_product(A, B, ledger: Optional[CostLedger] = None, return_witness: bool = False):
    """Min-plus product C[i,j] = min_k A[i,k] + B[k,j]."""
    A, B = _square_pair(A, B)
    if np.any(A == NEG_INF) or np.any(B == NEG_INF):
        raise ValueError("-inf is not a valid distance-product entry")
    n = A.shape[0]
    C = np.empty((n, n))
    wit = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        vals = A[i][:, None] + B
        k = np.argmin(vals, axis=0)
        C[i] = vals[k, np.arange(n)]
        wit[i] = np.where(np.isfinite(C[i]), k, -1)
    if ledger is not None:
        ledger.add_classical(n ** 3)
    return (C, wit) if return_witness else C


def elementwise_min(A, B) -> np.ndarray:
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    if A.shape != B.shape:
        raise ValueError(f"dimension mismatch: {A.shape} vs {B.shape}")
    return np.minimum(A, B)


def brute_bool_min_product(A, B, ledger: Optional[CostLedger] = None) -> np.ndarray:
    """C[i,j] = min{B[k,j] : A[i,k] = 1}; +inf for an empty witness set."""
    A = np.asarray(A, dtype=bool)
    B = np.asarray(B, dtype=float)
    if A.shape != B.shape or A.shape[0] != A.shape[1]:
        raise ValueError(f"dimension mismatch: {A.shape} vs {B.shape}")
    n = A.shape[0]
    C = np.empty((n, n))
    for i in range(n):
        C[i] = np.where(A[i][:, None], B, INF).min(axis=0) if n else INF
    if ledger is not None:
        ledger.add_classical(n ** 3)
    return C


def brute_minle_product(X, Y, ledger: Optional[CostLedger] = None, return_witness: bool = False):
    """(min, <=) product: C[i,j] = min{Y[k,j] : X[i,k] <= Y[k,j]}.

    With X holding the last edge of a nondecreasing i -> k path and Y the edge
    weights, C extends every such path by one edge.
    """
    X, Y = _square_pair(X, Y)
    n = X.shape[0]
    C = np.empty((n, n))
    wit = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        vals = np.where(X[i][:, None] <= Y, Y, INF)
        k = np.argmin(vals, axis=0)
        C[i] = vals[k, np.arange(n)]
        wit[i] = np.where(C[i] < INF, k, -1)
    if ledger is not None:
        ledger.add_classical(n ** 3)
    return (C, wit) if return_witness else C


def brute_apsp(G, ledger: Optional[CostLedger] = None) -> np.ndarray:
    """Floyd-Warshall on the weight matrix (diagonal forced to 0)."""
    D = np.minimum(_weights(G).copy(), min_plus_identity(len(_weights(G))))
    n = D.shape[0]
    for k in range(n):
        D = np.minimum(D, D[:, k, None] + D[None, k, :])
    if ledger is not None:
        ledger.add_classical(n ** 3)
    return D


def apnp_seed(W) -> np.ndarray:
    """Edge weights with a -inf diagonal: the empty path ends 'before' any edge."""
    A = np.asarray(W, dtype=float).copy()
    np.fill_diagonal(A, NEG_INF)
    return A


def brute_apnp(G, ledger: Optional[CostLedger] = None, return_iterations: bool = False):
    """Minimum last-edge weight over nondecreasing paths, for all pairs.

    Fixpoint of B <- B ^ (B (min,<=) A) from B = A. The diagonal stays -inf
    (the empty path).
    """
    A = apnp_seed(_weights(G))
    n = A.shape[0]
    B = A.copy()
    it = 0
    for it in range(1, n + 1):
        nxt = np.minimum(B, brute_minle_product(B, A, ledger))
        if np.array_equal(nxt, B):
            break
        B = nxt
    return (B, it) if return_iterations else B


def brute_min_triangle(G, ledger: Optional[CostLedger] = None):
    """Minimum w(a,b) + w(b,c) + w(c,a) over triangles a < b < c.

    Returns ``(weight, (a, b, c))`` or ``(inf, None)`` if there is no triangle.
    Lexicographically smallest triple wins ties.
    """
    W = _weights(G)
    n = W.shape[0]
    if n < 3:
        raise ValueError("need at least 3 vertices")
    best, triple = INF, None
    for a in range(n):
        for b in range(a + 1, n):
            wab = W[a, b]
            if wab == INF:
                continue
            cs = np.arange(b + 1, n)
            tot = wab + W[b, cs] + W[cs, a]
            if tot.size:
                m = int(np.argmin(tot))
                if tot[m] < best:
                    best, triple = float(tot[m]), (a, b, int(cs[m]))
    if ledger is not None:
        ledger.add_classical(n ** 3)
    return best, triple
