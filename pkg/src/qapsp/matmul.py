"""Boolean matrix multiplication kernels with element-operation accounting."""
from __future__ import annotations

from typing import Optional

import numpy as np

from .qmodel import CostLedger

KERNELS = ("naive", "strassen")
STRASSEN_CUTOFF = 64


def boolean_matmul(X, Y, kernel: str = "naive", ledger: Optional[CostLedger] = None) -> np.ndarray:
    """Boolean product (X @ Y) > 0 for an (n x m) and an (m x p) 0/1 matrix."""
    X = np.asarray(X, dtype=bool)
    Y = np.asarray(Y, dtype=bool)
    if X.shape[1] != Y.shape[0]:
        raise ValueError(f"dimension mismatch: {X.shape} @ {Y.shape}")
    n, m = X.shape
    p = Y.shape[1]
    if kernel == "naive":
        if ledger is not None:
            ledger.add_matmul(n * m * p)
        # float32 counts are exact up to 2**24 terms
        return (X.astype(np.float32) @ Y.astype(np.float32)) > 0
    if kernel == "strassen":
        size = 1 << max(0, (max(n, m) - 1).bit_length())
        Xp = np.zeros((size, size), dtype=np.int64)
        Xp[:n, :m] = X
        out = np.zeros((n, p), dtype=bool)
        ops = 0
        # rectangular right factor: multiply square tiles of width `size`
        for start in range(0, p, size):
            stop = min(p, start + size)
            Yp = np.zeros((size, size), dtype=np.int64)
            Yp[:m, : stop - start] = Y[:, start:stop]
            prod, tile_ops = _strassen(Xp, Yp)
            ops += tile_ops
            out[:, start:stop] = prod[:n, : stop - start] > 0
        if ledger is not None:
            ledger.add_matmul(ops)
        return out
    raise ValueError(f"unknown kernel {kernel!r}")


def _strassen(A: np.ndarray, B: np.ndarray):
    n = A.shape[0]
    if n <= STRASSEN_CUTOFF:
        return A @ B, n ** 3
    h = n // 2
    a11, a12, a21, a22 = A[:h, :h], A[:h, h:], A[h:, :h], A[h:, h:]
    b11, b12, b21, b22 = B[:h, :h], B[:h, h:], B[h:, :h], B[h:, h:]
    m1, o1 = _strassen(a11 + a22, b11 + b22)
    m2, o2 = _strassen(a21 + a22, b11)
    m3, o3 = _strassen(a11, b12 - b22)
    m4, o4 = _strassen(a22, b21 - b11)
    m5, o5 = _strassen(a11 + a12, b22)
    m6, o6 = _strassen(a21 - a11, b11 + b12)
    m7, o7 = _strassen(a12 - a22, b21 + b22)
    C = np.empty_like(A)
    C[:h, :h] = m1 + m4 - m5 + m7
    C[:h, h:] = m3 + m5
    C[h:, :h] = m2 + m4
    C[h:, h:] = m1 - m2 + m3 + m6
    # 10 pre-additions and 8 post-additions on h x h blocks
    return C, o1 + o2 + o3 + o4 + o5 + o6 + o7 + 18 * h * h
