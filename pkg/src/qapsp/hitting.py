"""Random hitting sets for long shortest paths."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

DEFAULT_HITTING_CONSTANT = 3.0


@dataclass
class HittingSet:
    vertices: np.ndarray  # sorted vertex ids
    n: int
    s: int
    seed: int
    c_h: float = DEFAULT_HITTING_CONSTANT
    verified: bool = False
    rounds: int = 0

    @property
    def size(self) -> int:
        return len(self.vertices)

    def mask(self) -> np.ndarray:
        out = np.zeros(self.n, dtype=bool)
        out[self.vertices] = True
        return out


def hitting_set_size(n: int, s: int, c_h: float = DEFAULT_HITTING_CONSTANT) -> int:
    """min(n, max(1, ceil(c_h * (n / s) * ln n)))."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 1 <= s <= n:
        raise ValueError(f"path length s={s} outside [1, {n}]")
    return min(n, max(1, math.ceil(c_h * (n / s) * math.log(n))))


def _sample(n: int, size: int, seed: int, round_: int) -> np.ndarray:
    rng = np.random.default_rng(np.random.SeedSequence([int(seed) & 0xFFFFFFFF, round_]))
    return np.sort(rng.choice(n, size=size, replace=False))


def sample_hitting_set(n: int, s: int, seed: int = 0, c_h: float = DEFAULT_HITTING_CONSTANT) -> HittingSet:
    """Uniform sample without replacement of ``hitting_set_size(n, s, c_h)`` vertices."""
    size = hitting_set_size(n, s, c_h)
    return HittingSet(_sample(n, size, seed, 0), n, s, seed, c_h)


def _path_table(paths, n: int) -> np.ndarray:
    """Paths as a 2-d array padded with ``n`` (a sentinel that is never a member)."""
    if isinstance(paths, np.ndarray) and paths.ndim == 2:
        table = np.where(paths < 0, n, paths).astype(np.int64)
    else:
        rows = [np.asarray(p, dtype=np.int64) for p in paths]
        width = max((len(p) for p in rows), default=0)
        table = np.full((len(rows), width), n, dtype=np.int64)
        for m, p in enumerate(rows):
            table[m, : len(p)] = p
    if len(table) and np.any((table == n).all(axis=1)):
        raise ValueError("cannot hit an empty path")
    return table


def _hit(vertices, table: np.ndarray, n: int) -> bool:
    member = np.zeros(n + 1, dtype=bool)
    member[np.asarray(vertices, dtype=np.int64)] = True
    return bool(member[table].any(axis=1).all()) if len(table) else True


def hits_all(vertices, paths, n: int) -> bool:
    """True iff every path (a vertex sequence, or a row padded with -1) meets ``vertices``."""
    return _hit(vertices, _path_table(paths, n), n)


def verify_and_repair_hitting(S: HittingSet, paths, seed: int | None = None,
                              max_plain_rounds: int = 8) -> HittingSet:
    """Check that every path in ``paths`` meets S; resample until it does.

    The first ``max_plain_rounds`` resamples keep the original size; after
    that the size doubles each round, so the loop ends by S = V at the latest.
    """
    n, size = S.n, S.size
    table = _path_table(paths, n)
    seed = S.seed if seed is None else seed
    vertices = S.vertices
    rounds = 0
    while True:
        if _hit(vertices, table, n):
            return HittingSet(vertices, n, S.s, S.seed, S.c_h, True, rounds)
        rounds += 1
        if rounds > max_plain_rounds:
            size = min(n, 2 * size)
        vertices = _sample(n, size, seed, rounds)
