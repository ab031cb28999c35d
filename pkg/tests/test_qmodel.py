import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qapsp.qmodel import (CostLedger, EmptyDomainError, GroverConfig, ceil_sqrt, grover_charge, grover_charges,
                          qmin, qmin_filtered, qmin_rows, qsearch)

from qapsp.acceptance import exact_ceil_scaled_sqrt

constants = st.sampled_from([1.0, 0.5, 0.75, 1.5, 2.25, 3.0])


def test_qmin_example_n16():
    vals = np.array([9, 8, 7, 6, 5, 4, 4, 3, 5, 6, 7, 8, 9, 9, 9, 9], dtype=float)
    led = CostLedger()
    assert qmin(16, vals, led) == (7, 3.0)
    assert led.quantum_queries == 4


def test_qmin_singleton_and_n1000():
    led = CostLedger()
    assert qmin(1, [5.0], led) == (0, 5.0) and led.quantum_queries == 1
    vals = np.random.default_rng(0).random(1000)
    led = CostLedger()
    k, v = qmin(1000, vals, led)
    assert k == int(np.argmin(vals)) and led.quantum_queries == 32


def test_qsearch_examples():
    led = CostLedger()
    assert qsearch(25, np.zeros(25, bool), led) is None and led.quantum_queries == 5
    mask = np.zeros(10, bool)
    mask[0] = True
    assert qsearch(10, mask) == 0
    rng = np.random.default_rng(1)
    sparse = rng.random(400) < 0.01
    assert qsearch(400, sparse) == (int(np.flatnonzero(sparse)[0]) if sparse.any() else None)


def test_qmin_filtered_examples():
    vals = np.arange(10, dtype=float)[::-1]
    only = np.zeros(10, bool)
    only[4] = True
    assert qmin_filtered(10, only, vals) == (4, 5.0)
    led = CostLedger()
    assert qmin_filtered(10, np.zeros(10, bool), vals, led) is None
    assert led.quantum_queries == 4


def test_empty_domain_rejected():
    with pytest.raises(EmptyDomainError):
        qmin(0, [])
    with pytest.raises(EmptyDomainError):
        qsearch(0, [])


def test_callable_oracles():
    assert qmin(5, lambda i: (i - 3) ** 2) == (3, 0.0)
    assert qsearch(6, lambda i: i % 4 == 3) == 3


@given(st.integers(1, 10 ** 6), constants)
def test_charge_matches_exact_oracle(N, c_g):
    assert grover_charge(N, c_g) == exact_ceil_scaled_sqrt(N, c_g)


@given(st.integers(1, 10 ** 6), constants, st.integers(1, 4))
def test_calls_charge_exactly(N, c_g, reps):
    cfg = GroverConfig(c_g=c_g, repetitions=reps)
    want = exact_ceil_scaled_sqrt(N, c_g) * reps
    for call in (lambda led: qsearch(N, np.zeros(N, bool), led, cfg),
                 lambda led: qmin_filtered(N, np.zeros(N, bool), np.zeros(N), led, cfg)):
        led = CostLedger()
        call(led)
        assert led.quantum_queries == want


@given(st.lists(st.integers(0, 5000), min_size=1, max_size=40), constants)
def test_batched_charges_sum(sizes, c_g):
    sizes = np.array(sizes)
    assert grover_charges(sizes, c_g).tolist() == [exact_ceil_scaled_sqrt(s, c_g) if s else 0 for s in sizes]


def test_perfect_squares_are_exact():
    for k in range(1, 2000):
        assert ceil_sqrt(k * k) == k
        assert ceil_sqrt(k * k + 1) == k + 1
    assert grover_charge(10 ** 6, 1.5) == 1500
    assert ceil_sqrt(Fraction(9, 4)) == 2


@given(st.integers(1, 300), st.integers(0, 2 ** 31))
def test_delta_zero_equals_linear_scan(N, seed):
    rng = np.random.default_rng(seed)
    vals = rng.integers(0, 20, N).astype(float)
    mask = rng.random(N) < 0.3
    assert qmin(N, vals) == (int(np.argmin(vals)), float(vals.min()))
    hits = np.flatnonzero(mask)
    expect = None if hits.size == 0 else (int(hits[np.argmin(vals[hits])]), float(vals[hits].min()))
    assert qmin_filtered(N, mask, vals) == expect
    assert qsearch(N, mask) == (int(hits[0]) if hits.size else None)


def test_qmin_rows_matches_scan_and_marks_empty_rows():
    rng = np.random.default_rng(2)
    vals = rng.integers(0, 9, (6, 10)).astype(float)
    mask = rng.random((6, 10)) < 0.4
    mask[3] = False
    sizes = np.array([10, 10, 10, 10, 0, 4])
    led = CostLedger()
    idx, v = qmin_rows(vals, mask, sizes, led)
    for m in range(6):
        live = np.flatnonzero(mask[m]) if sizes[m] else []
        if len(live) == 0:
            assert idx[m] == -1 and v[m] == math.inf
        else:
            assert v[m] == vals[m, live].min() and idx[m] == live[np.argmin(vals[m, live])]
    assert led.quantum_queries == 4 * 4 + 2


@given(st.lists(st.integers(1, 500), min_size=2, max_size=12), st.integers(0, 100))
def test_ledger_split_invariance(sizes, cut):
    whole = CostLedger()
    for N in sizes:
        qsearch(N, np.zeros(N, bool), whole)
    cut = cut % len(sizes)
    a, b = CostLedger(), CostLedger()
    for N in sizes[:cut]:
        qsearch(N, np.zeros(N, bool), a)
    for N in sizes[cut:]:
        qsearch(N, np.zeros(N, bool), b)
    assert (a + b).snapshot() == whole.snapshot() == (b + a).snapshot()


def test_ledger_merge_associative_and_phases():
    ls = []
    for k in range(3):
        led = CostLedger()
        with led.phase("p"):
            led.add_queries(k + 1)
            led.add_classical(2 * k)
            led.add_analytic("x", k)
        ls.append(led)
    assert ((ls[0] + ls[1]) + ls[2]).snapshot() == (ls[0] + (ls[1] + ls[2])).snapshot()
    merged = ls[0] + ls[1] + ls[2]
    assert merged.phase_totals()["p"] == merged.snapshot()
    assert merged.to_csv().splitlines()[0] == "phase,quantum_queries,classical_ops,matmul_ops,analytic_total"
    with pytest.raises(ValueError):
        CostLedger().add_queries(-1)


def test_failure_rate_within_bound():
    # best-of-k repetitions fails only if every repetition fails: rate delta^k
    delta, k, trials = 0.3, 2, 10_000
    vals = np.arange(50, dtype=float)
    fails = sum(qmin(50, vals, config=GroverConfig(delta=delta, repetitions=k, seed=s))[0] != 0
                for s in range(trials))
    p = delta ** k
    assert fails / trials <= p + 3 * math.sqrt(p * (1 - p) / trials)
    assert fails > 0


def test_failure_mode_is_seeded():
    cfg = GroverConfig(delta=0.5, seed=9)
    vals = np.arange(30, dtype=float)
    assert [qmin(30, vals, config=cfg, tag=(t,)) for t in range(20)] == \
        [qmin(30, vals, config=cfg, tag=(t,)) for t in range(20)]


def test_config_validation():
    with pytest.raises(ValueError):
        GroverConfig(c_g=0)
    with pytest.raises(ValueError):
        GroverConfig(delta=1.0)
    with pytest.raises(ValueError):
        GroverConfig(repetitions=0)
