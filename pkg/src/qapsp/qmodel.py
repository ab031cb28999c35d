"""Simulated quantum cost model.

Every quantum subroutine is executed classically and returns the exact
answer (unless failure injection is switched on), while the ledger is
charged the number of oracle queries the quantum routine would make:
``ceil(c_g * sqrt(N))`` per Grover search or minimum finding over N items.
Black-box quantum procedures are recorded as labelled analytic charges.
"""
from __future__ import annotations

import contextlib
import csv
import io
import math
import zlib
from fractions import Fraction
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

INF = math.inf


class EmptyDomainError(ValueError):
    """Search or minimum finding over zero items."""


class Counters(NamedTuple):
    quantum_queries: int
    classical_ops: int
    matmul_ops: int
    analytic_total: int

    def __sub__(self, other):
        return Counters(*(a - b for a, b in zip(self, other)))


@dataclass
class PhaseRecord:
    phase: str
    counters: Counters


@dataclass
class CostLedger:
    quantum_queries: int = 0
    classical_ops: int = 0
    matmul_ops: int = 0
    analytic_charges: list = field(default_factory=list)
    phases: list = field(default_factory=list)

    # --- charging -------------------------------------------------------
    def add_queries(self, amount: int) -> None:
        self.quantum_queries += _nonneg(amount)

    def add_classical(self, amount: int) -> None:
        self.classical_ops += _nonneg(amount)

    def add_matmul(self, amount: int) -> None:
        self.matmul_ops += _nonneg(amount)

    def add_analytic(self, label: str, amount: int) -> None:
        self.analytic_charges.append((label, _nonneg(amount)))

    # --- reading ----------------------------------------------------------
    @property
    def analytic_total(self) -> int:
        return sum(a for _, a in self.analytic_charges)

    @property
    def quantum_total(self) -> int:
        """Grover queries plus analytically charged quantum subroutines."""
        return self.quantum_queries + self.analytic_total

    def analytic_by_label(self) -> dict:
        out: dict[str, int] = {}
        for label, amount in self.analytic_charges:
            out[label] = out.get(label, 0) + amount
        return dict(sorted(out.items()))

    def snapshot(self) -> Counters:
        return Counters(self.quantum_queries, self.classical_ops, self.matmul_ops, self.analytic_total)

    def totals(self) -> dict:
        snap = self.snapshot()
        return {**snap._asdict(), "quantum_total": self.quantum_total}

    @contextlib.contextmanager
    def phase(self, name: str):
        """Record the counter delta accumulated inside the block."""
        start = self.snapshot()
        try:
            yield self
        finally:
            self.phases.append(PhaseRecord(name, self.snapshot() - start))

    def phase_totals(self) -> dict:
        out: dict[str, Counters] = {}
        for rec in self.phases:
            prev = out.get(rec.phase, Counters(0, 0, 0, 0))
            out[rec.phase] = Counters(*(a + b for a, b in zip(prev, rec.counters)))
        return out

    # --- combining ----------------------------------------------------------
    def merge(self, other: "CostLedger") -> "CostLedger":
        return CostLedger(
            self.quantum_queries + other.quantum_queries,
            self.classical_ops + other.classical_ops,
            self.matmul_ops + other.matmul_ops,
            self.analytic_charges + other.analytic_charges,
            self.phases + other.phases,
        )

    __add__ = merge

    def absorb(self, other: "CostLedger") -> None:
        """In-place merge, used to join per-worker sub-ledgers."""
        merged = self.merge(other)
        self.__dict__.update(merged.__dict__)

    # --- export ------------------------------------------------------------
    CSV_HEADER = ("phase", "quantum_queries", "classical_ops", "matmul_ops", "analytic_total")

    def csv_rows(self) -> list:
        rows = [(rec.phase, *rec.counters) for rec in self.phases]
        rows.append(("total", *self.snapshot()))
        return rows

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.CSV_HEADER)
        writer.writerows(self.csv_rows())
        return buf.getvalue()


def _nonneg(amount) -> int:
    amount = int(amount)
    if amount < 0:
        raise ValueError("ledger charges must be non-negative")
    return amount


@dataclass(frozen=True)
class GroverConfig:
    c_g: float = 1.0
    delta: float = 0.0
    seed: int = 0
    repetitions: int = 1

    def __post_init__(self):
        if not self.c_g > 0:
            raise ValueError("c_g must be positive")
        if not 0.0 <= self.delta < 1.0:
            raise ValueError("delta must lie in [0, 1)")
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")

    def rng(self, *tag) -> np.random.Generator:
        """Failure-mode stream derived from the seed and the call coordinates."""
        words = [int(self.seed) & 0xFFFFFFFF]
        words += [zlib.crc32(repr(t).encode()) for t in tag]
        return np.random.default_rng(np.random.SeedSequence(words))


DEFAULT_CONFIG = GroverConfig()


def ceil_sqrt(x) -> int:
    """Exact ceil(sqrt(x)) for a non-negative int or Fraction."""
    k = math.ceil(Fraction(x))
    return 0 if k <= 0 else math.isqrt(k - 1) + 1


def grover_charge(N: int, c_g: float = 1.0) -> int:
    """Queries charged for one Grover call over N items: ceil(c_g * sqrt(N)), exactly."""
    N = int(N)
    if N < 1:
        raise EmptyDomainError("Grover search over an empty domain")
    if c_g == 1.0:
        return ceil_sqrt(N)
    return ceil_sqrt(Fraction(c_g) ** 2 * N)


def grover_charges(sizes: np.ndarray, c_g: float = 1.0) -> np.ndarray:
    """Vectorised grover_charge; entries with size 0 are charged 0."""
    sizes = np.asarray(sizes, dtype=np.int64)
    out = np.zeros(sizes.shape, dtype=np.int64)
    pos = sizes > 0
    if not pos.any():
        return out
    if c_g == 1.0:
        s = sizes[pos]
        m = np.ceil(np.sqrt(s.astype(float))).astype(np.int64)
        # float sqrt can be one off near perfect squares
        m = np.where((m - 1) * (m - 1) >= s, m - 1, m)
        m = np.where(m * m < s, m + 1, m)
        out[pos] = m
    else:
        uniq, inv = np.unique(sizes[pos], return_inverse=True)
        out[pos] = np.array([grover_charge(int(u), c_g) for u in uniq], dtype=np.int64)[inv]
    return out


def _charge(ledger: Optional[CostLedger], N: int, config: GroverConfig) -> int:
    amount = grover_charge(N, config.c_g) * config.repetitions
    if ledger is not None:
        ledger.add_queries(amount)
    return amount


def _values(N: int, value_at) -> np.ndarray:
    if callable(value_at):
        return np.fromiter((value_at(k) for k in range(N)), dtype=float, count=N)
    vals = np.asarray(value_at, dtype=float)
    if vals.shape != (N,):
        raise ValueError(f"expected {N} values, got shape {vals.shape}")
    return vals


def _mask(N: int, predicate) -> np.ndarray:
    if callable(predicate):
        return np.fromiter((bool(predicate(k)) for k in range(N)), dtype=bool, count=N)
    mask = np.asarray(predicate, dtype=bool)
    if mask.shape != (N,):
        raise ValueError(f"expected {N} predicate values, got shape {mask.shape}")
    return mask


def _pick(vals: np.ndarray, mask: np.ndarray, config: GroverConfig, rng) -> Optional[int]:
    """Best of ``repetitions`` simulated runs of minimum finding."""
    cand = np.flatnonzero(mask)
    if cand.size == 0:
        return None
    best = int(cand[np.argmin(vals[cand])])
    if config.delta == 0.0:
        return best
    worse = cand[vals[cand] > vals[best]]
    results = []
    for _ in range(config.repetitions):
        if worse.size and rng.random() < config.delta:
            results.append(int(worse[rng.integers(worse.size)]))
        else:
            results.append(best)
    return min(results, key=lambda k: (vals[k], k))


def qmin(N: int, value_at, ledger: Optional[CostLedger] = None,
         config: GroverConfig = DEFAULT_CONFIG, tag: tuple = ()) -> tuple:
    """Quantum minimum finding over indices 0..N-1.

    Returns ``(index, value)``; the smallest index wins ties.
    """
    if N < 1:
        raise EmptyDomainError("minimum finding over an empty domain")
    vals = _values(N, value_at)
    _charge(ledger, N, config)
    k = _pick(vals, np.ones(N, dtype=bool), config, config.rng("qmin", *tag) if config.delta else None)
    return k, float(vals[k])


def qmin_filtered(N: int, predicate, value_at, ledger: Optional[CostLedger] = None,
                  config: GroverConfig = DEFAULT_CONFIG, tag: tuple = ()):
    """Minimum over indices passing ``predicate``; ``None`` if none pass.

    The charge depends only on N, so an empty filter still costs a full search.
    """
    if N < 1:
        raise EmptyDomainError("minimum finding over an empty domain")
    vals = _values(N, value_at)
    mask = _mask(N, predicate)
    _charge(ledger, N, config)
    k = _pick(vals, mask, config, config.rng("qminf", *tag) if config.delta else None)
    if k is None:
        return None
    return k, float(vals[k])


def qsearch(N: int, predicate, ledger: Optional[CostLedger] = None,
            config: GroverConfig = DEFAULT_CONFIG, tag: tuple = ()) -> Optional[int]:
    """Grover search; returns the smallest marked index or ``None``.

    In failure mode each repetition misses a marked item with probability delta.
    """
    if N < 1:
        raise EmptyDomainError("search over an empty domain")
    mask = _mask(N, predicate)
    _charge(ledger, N, config)
    hits = np.flatnonzero(mask)
    if hits.size == 0:
        return None
    if config.delta:
        rng = config.rng("qsearch", *tag)
        if all(rng.random() < config.delta for _ in range(config.repetitions)):
            return None
    return int(hits[0])


def qmin_rows(values: np.ndarray, mask: Optional[np.ndarray], sizes: np.ndarray,
              ledger: Optional[CostLedger] = None, config: GroverConfig = DEFAULT_CONFIG,
              tag: tuple = ()) -> tuple:
    """Batched minimum finding: one call per row of ``values``.

    ``sizes[m]`` is the domain size of call m (what gets charged); rows with
    size 0 make no call. ``mask`` marks the indices that pass the filter.
    Returns ``(index, value)`` arrays with index -1 / value inf where a call
    finds nothing finite.
    """
    values = np.asarray(values, dtype=float)
    sizes = np.asarray(sizes, dtype=np.int64)
    M = values.shape[0]
    if mask is None:
        mask = np.ones(values.shape, dtype=bool)
    active = sizes > 0
    masked = np.where(mask & active[:, None], values, INF)
    if masked.shape[1]:
        idx = np.argmin(masked, axis=1)
        val = masked[np.arange(M), idx]
    else:
        idx = np.zeros(M, dtype=np.int64)
        val = np.full(M, INF)
    idx = np.where(val < INF, idx, -1)
    charges = grover_charges(sizes, config.c_g) * config.repetitions
    if ledger is not None:
        ledger.add_queries(int(charges.sum()))
    if config.delta and M:
        idx, val = _inject_failures(masked, idx, val, active, config, tag)
    return idx, val


def _inject_failures(masked, idx, val, active, config, tag):
    rng = config.rng("rows", *tag)
    M = masked.shape[0]
    best_idx, best_val = idx.copy(), val.copy()
    runs_idx = []
    runs_val = []
    for _ in range(config.repetitions):
        fail = (rng.random(M) < config.delta) & active
        r_idx, r_val = best_idx.copy(), best_val.copy()
        for m in np.flatnonzero(fail):
            worse = np.flatnonzero(masked[m] > best_val[m])
            if worse.size:
                k = int(worse[rng.integers(worse.size)])
                r_idx[m], r_val[m] = k, masked[m, k]
        runs_idx.append(r_idx)
        runs_val.append(r_val)
    runs_idx = np.array(runs_idx)
    runs_val = np.array(runs_val)
    # best run per row; ties resolved by smaller index
    order = np.lexsort((np.where(runs_idx < 0, np.iinfo(np.int64).max, runs_idx), runs_val), axis=0)
    pick = order[0]
    cols = np.arange(M)
    out_val = runs_val[pick, cols]
    out_idx = np.where(out_val < INF, runs_idx[pick, cols], -1)
    return out_idx, out_val
