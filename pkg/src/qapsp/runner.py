"""Experiment execution: instance in, result record and ledger CSV out."""
from __future__ import annotations

import json
import time
import warnings
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import apsp as pipelines
from .apsp import AlgoConfig
from .graph import WeightedGraph, encode_weight
from .oracles import (apnp_seed, brute_apnp, brute_apsp, brute_bool_min_product, brute_distance_product,
                      brute_min_triangle, brute_minle_product)
from .params import select_parameters
from .products import GeometricMatrix, bucketed_bool_min_product, geometric_star_product, minle_product
from .qmodel import CostLedger

DEFAULT_ORACLE_CAP = 128


@dataclass(frozen=True)
class Algorithm:
    name: str
    kinds: tuple  # compatible instance kinds; empty = any
    run: Callable  # (G, ledger, cfg) -> (values, plan dict, extra dict)
    oracle: Callable  # G -> reference values
    needs_geometry: bool = False


def _pipeline(fn, **kw):
    def run(G, ledger, cfg):
        res = fn(G, ledger=ledger, config=cfg, **kw)
        info = dict(res.info)
        plan = info.pop("plan", None)
        info.pop("layer_of", None)
        return res.values, plan, info
    return run


def _triangle(G, ledger, cfg):
    w, triple = pipelines.min_triangle_quantum(G, ledger, cfg)
    return (w, triple), None, {}


def _thm1_product(G, ledger, cfg):
    plan = select_parameters("thm1", G.n, kappa=cfg.kappa or (3 if G.geometry.weight_fn == "euclidean" else 1),
                             omega_model=cfg.omega_model, overrides={"r": cfg.r})
    A = GeometricMatrix.from_graph(G)
    res = geometric_star_product(A, G.W, plan["r"], ledger=ledger, config=cfg.grover, kernel=cfg.kernel)
    return res.values, plan.to_dict(), {}


def _bucketed_product(G, ledger, cfg):
    plan = select_parameters("node_weighted", G.n, omega_model=cfg.omega_model, overrides={"d": cfg.d})
    res = bucketed_bool_min_product(G.adjacency(), G.W, plan["d"], ledger, cfg.grover, cfg.kernel)
    return res.values, plan.to_dict(), {}


def _minle(G, ledger, cfg):
    A = apnp_seed(G.W)
    res = minle_product(A, A, cfg.minle_mode, ledger, cfg.grover)
    return res.values, None, {"mode": cfg.minle_mode}


ALGORITHMS = {
    a.name: a for a in [
        Algorithm("node_weighted-grover", ("node_weighted", "bounded_weight"),
                  _pipeline(pipelines.apsp_node_weighted, variant="grover-combine"), brute_apsp, True),
        Algorithm("node_weighted-product", ("node_weighted", "bounded_weight"),
                  _pipeline(pipelines.apsp_node_weighted, variant="product-combine"), brute_apsp, True),
        Algorithm("thm2", ("node_weighted", "bounded_weight", "euclidean_planar"),
                  _pipeline(pipelines.apsp_geometric), brute_apsp, True),
        Algorithm("thm4", ("bounded_weight",), _pipeline(pipelines.apsp_geometric_bounded), brute_apsp, True),
        Algorithm("thm7", (), _pipeline(pipelines.apsp_small_L), brute_apsp),
        Algorithm("apnp", (), _pipeline(pipelines.apnp), brute_apnp),
        Algorithm("triangle", (), _triangle, brute_min_triangle),
        Algorithm("thm1-product", ("node_weighted", "bounded_weight", "euclidean_planar"), _thm1_product,
                  lambda G: brute_distance_product(G.W, G.W), True),
        Algorithm("bucketed-product", (), _bucketed_product,
                  lambda G: brute_bool_min_product(G.adjacency(), G.W)),
        Algorithm("minle-product", (), _minle, lambda G: brute_minle_product(apnp_seed(G.W), apnp_seed(G.W))),
    ]
}
ALGORITHMS["thm8"] = ALGORITHMS["apnp"]


class IncompatibleError(ValueError):
    pass


def _same(a, b) -> bool:
    if isinstance(a, tuple):
        return a == b
    return bool(np.array_equal(np.asarray(a), np.asarray(b)))


def run_experiment(algorithm: str, G: WeightedGraph, config: Optional[AlgoConfig] = None,
                   oracle_cap: int = DEFAULT_ORACLE_CAP, timing: bool = False) -> tuple:
    """Run one algorithm; returns ``(record dict, ledger)``.

    The record holds no wall-clock time unless ``timing`` is set, so equal
    inputs give byte-identical output.
    """
    if algorithm not in ALGORITHMS:
        raise IncompatibleError(f"unknown algorithm {algorithm!r}; choose from {sorted(ALGORITHMS)}")
    algo = ALGORITHMS[algorithm]
    if algo.kinds and G.kind not in algo.kinds:
        raise IncompatibleError(f"{algorithm} does not accept {G.kind} instances")
    if algo.needs_geometry and G.geometry is None:
        raise IncompatibleError(f"{algorithm} needs a geometric instance")
    cfg = config or AlgoConfig()
    ledger = CostLedger()
    start = time.perf_counter()
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        values, plan, extra = algo.run(G, ledger, cfg)
    elapsed = time.perf_counter() - start
    for w in caught:
        warnings.warn_explicit(w.message, w.category, w.filename, w.lineno)
    verdict = "skipped"
    if G.n <= oracle_cap:
        verdict = "match" if _same(values, algo.oracle(G)) else "mismatch"
    record = {
        "algorithm": algo.name,
        "instance": {"kind": G.kind, "n": G.n, "seed": G.seed, "params": G.params},
        "config": {
            "c_g": cfg.grover.c_g, "delta": cfg.grover.delta, "repetitions": cfg.grover.repetitions,
            "grover_seed": cfg.grover.seed, "omega_model": cfg.omega_model, "kernel": cfg.kernel,
            "minle_mode": cfg.minle_mode, "kappa": cfg.kappa, "seed": cfg.seed,
            "overrides": {k: v for k, v in cfg.overrides().items() if v is not None},
        },
        "plan": plan,
        "ledger": {**ledger.totals(), "analytic_by_label": ledger.analytic_by_label()},
        "verdict": verdict,
        "warnings": sorted({str(w.message) for w in caught}),
        "info": extra,
    }
    if isinstance(values, tuple):
        record["result"] = {"weight": encode_weight(values[0]), "triple": values[1]}
    if timing:
        record["wall_time"] = elapsed
    return _plain(record), ledger


def _plain(obj):
    """JSON-ready copy with sorted keys and encoded infinities."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in sorted(obj.items(), key=lambda kv: str(kv[0]))}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return encode_weight(float(obj))
    return obj


def dump_record(record: dict) -> str:
    return json.dumps(record, sort_keys=True, indent=2) + "\n"
