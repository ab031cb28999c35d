"""Graph and matrix domain types, JSON serialization and instance generators.

Weights are float64 arrays. ``+inf`` marks an absent edge; ``-inf`` is only
used as the diagonal seed of nondecreasing-path tables.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

INF = math.inf
NEG_INF = -math.inf

# Euclidean weights are rounded to this grid so that path sums are exact.
EUCLID_GRID = 2.0 ** -20
NODE_WEIGHT = "node_weight"
EUCLIDEAN = "euclidean"
WEIGHT_FUNCTIONS = (NODE_WEIGHT, EUCLIDEAN)

KINDS = ("node_weighted", "euclidean_planar", "small_L", "bounded_weight", "general", "apnp")


class InstanceError(ValueError):
    """Invalid generator parameters or an instance that violates its kind."""


@dataclass
class Geometry:
    points: np.ndarray  # (n, d)
    weight_fn: str

    @property
    def d(self) -> int:
        return int(self.points.shape[1])

    def weight(self, u: int, v: int) -> float:
        return float(geometric_weights(self.points, self.weight_fn)[u, v])


def geometric_weights(points: np.ndarray, weight_fn: str) -> np.ndarray:
    """Full n x n table of w(p_u, p_v) for the given weight function."""
    points = np.asarray(points, dtype=float)
    n = points.shape[0]
    if weight_fn == NODE_WEIGHT:
        return np.repeat(points[:, :1], n, axis=1)
    if weight_fn == EUCLIDEAN:
        diff = points[:, None, :] - points[None, :, :]
        dist = np.sqrt((diff ** 2).sum(axis=2))
        return np.round(dist / EUCLID_GRID) * EUCLID_GRID
    raise InstanceError(f"unknown weight function {weight_fn!r}")


@dataclass
class WeightedGraph:
    W: np.ndarray
    directed: bool = True
    geometry: Optional[Geometry] = None
    kind: str = "general"
    seed: Optional[int] = None
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        self.W = np.asarray(self.W, dtype=float)
        if self.W.ndim != 2 or self.W.shape[0] != self.W.shape[1]:
            raise InstanceError(f"weight matrix must be square, got {self.W.shape}")

    @property
    def n(self) -> int:
        return int(self.W.shape[0])

    def adjacency(self) -> np.ndarray:
        return np.isfinite(self.W)

    def to_dict(self) -> dict:
        out: dict[str, Any] = {
            "n": self.n,
            "directed": self.directed,
            "weights": [encode_weight(x) for x in self.W.ravel()],
            "kind": self.kind,
            "seed": self.seed,
        }
        if self.geometry is not None:
            out["geometry"] = {
                "d": self.geometry.d,
                "points": self.geometry.points.tolist(),
                "weight_fn": self.geometry.weight_fn,
            }
        if self.params:
            out["params"] = dict(sorted(self.params.items()))
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict, validate: bool = True) -> "WeightedGraph":
        n = int(data["n"])
        weights = [decode_weight(x) for x in data["weights"]]
        if len(weights) != n * n:
            raise InstanceError(f"expected {n * n} weights, got {len(weights)}")
        geometry = None
        if data.get("geometry"):
            g = data["geometry"]
            pts = np.asarray(g["points"], dtype=float).reshape(n, int(g["d"]))
            geometry = Geometry(pts, g["weight_fn"])
        G = cls(
            W=np.asarray(weights, dtype=float).reshape(n, n),
            directed=bool(data.get("directed", True)),
            geometry=geometry,
            kind=data.get("kind", "general"),
            seed=data.get("seed"),
            params=dict(data.get("params") or {}),
        )
        if validate:
            validate_instance(G)
        return G

    @classmethod
    def from_json(cls, text: str, validate: bool = True) -> "WeightedGraph":
        return cls.from_dict(json.loads(text), validate=validate)


@dataclass
class DistanceMatrix:
    """An n x n result table tagged with the algorithm that produced it."""

    values: np.ndarray
    algorithm: str
    ledger: Any = None
    stages: dict = field(default_factory=dict)
    info: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return int(self.values.shape[0])

    def to_dict(self) -> dict:
        out = {
            "algorithm": self.algorithm,
            "n": self.n,
            "values": [encode_weight(x) for x in np.asarray(self.values).ravel()],
            "info": _jsonable(self.info),
        }
        if self.ledger is not None:
            out["ledger"] = self.ledger.totals()
        return out


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in sorted(obj.items())}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return encode_weight(float(obj))
    return obj


def encode_weight(x: float):
    x = float(x)
    if x == INF:
        return "inf"
    if x == NEG_INF:
        return "-inf"
    if x.is_integer() and abs(x) < 2 ** 53:
        return int(x)
    return x


def decode_weight(x) -> float:
    if isinstance(x, str):
        if x == "inf":
            return INF
        if x == "-inf":
            return NEG_INF
        raise InstanceError(f"bad weight literal {x!r}")
    return float(x)


def min_plus_identity(n: int) -> np.ndarray:
    eye = np.full((n, n), INF)
    np.fill_diagonal(eye, 0.0)
    return eye


# ---------------------------------------------------------------------------
# generators


def _edge_mask(rng: np.random.Generator, n: int, density: float, directed: bool) -> np.ndarray:
    mask = rng.random((n, n)) < density
    np.fill_diagonal(mask, False)
    if not directed:
        mask = np.triu(mask, 1)
        mask = mask | mask.T
    return mask


def generate_instance(kind: str, n: int, seed: int, params: Optional[dict] = None) -> WeightedGraph:
    """Deterministic random instance of the given kind.

    Recognised params: ``density`` (edge probability), ``max_weight``,
    ``L`` (small_L), ``c`` (bounded_weight), ``undirected`` (general, apnp).
    """
    params = dict(params or {})
    if kind not in KINDS:
        raise InstanceError(f"unknown instance kind {kind!r}")
    if n < 1:
        raise InstanceError("n must be positive")
    density = float(params.get("density", 0.25))
    if not 0.0 <= density <= 1.0:
        raise InstanceError("density must lie in [0, 1]")
    max_weight = int(params.get("max_weight", 10 if kind == "apnp" else 100))
    if max_weight < 1:
        raise InstanceError("max_weight must be >= 1")
    rng = np.random.default_rng(seed)
    stored = {"density": density}
    geometry = None
    directed = True

    if kind == "node_weighted":
        p = rng.integers(1, max_weight + 1, size=n).astype(float)
        mask = _edge_mask(rng, n, density, directed)
        W = np.where(mask, p[:, None], INF)
        geometry = Geometry(p[:, None], NODE_WEIGHT)
        stored["max_weight"] = max_weight
    elif kind == "bounded_weight":
        c = float(params.get("c", 4.0))
        if c < 1:
            raise InstanceError("c must be >= 1")
        # multiples of 1/16 in [1, c]
        steps = int(math.floor((c - 1.0) * 16))
        p = 1.0 + rng.integers(0, steps + 1, size=n) / 16.0
        mask = _edge_mask(rng, n, density, directed)
        W = np.where(mask, p[:, None], INF)
        geometry = Geometry(p[:, None], NODE_WEIGHT)
        stored["c"] = c
    elif kind == "euclidean_planar":
        directed = False
        pts = rng.integers(0, 1024, size=(n, 2)) / 1024.0
        mask = _edge_mask(rng, n, density, directed)
        W = np.where(mask, geometric_weights(pts, EUCLIDEAN), INF)
        geometry = Geometry(pts, EUCLIDEAN)
    elif kind == "small_L":
        L = int(params.get("L", 2))
        if L < 1 or L > n:
            raise InstanceError("L must satisfy 1 <= L <= n")
        values = rng.integers(1, max_weight + 1, size=(n, L)).astype(float)
        choice = rng.integers(0, L, size=(n, n))
        mask = _edge_mask(rng, n, density, directed)
        W = np.where(mask, np.take_along_axis(values, choice, axis=1), INF)
        stored.update(L=L, max_weight=max_weight)
    else:  # general, apnp
        directed = not params.get("undirected", False)
        w = rng.integers(1, max_weight + 1, size=(n, n)).astype(float)
        if not directed:
            w = np.triu(w) + np.triu(w, 1).T
            stored["undirected"] = True
        mask = _edge_mask(rng, n, density, directed)
        W = np.where(mask, w, INF)
        stored["max_weight"] = max_weight

    G = WeightedGraph(W=W, directed=directed, geometry=geometry, kind=kind, seed=seed, params=stored)
    validate_instance(G)
    return G


def distinct_out_weights(W: np.ndarray) -> list[np.ndarray]:
    """Per vertex, the distinct finite outgoing weights in decreasing order."""
    out = []
    for row in np.asarray(W):
        vals = np.unique(row[np.isfinite(row)])
        out.append(vals[::-1])
    return out


def validate_instance(G: WeightedGraph) -> None:
    """Check the kind-specific invariants; raises InstanceError."""
    W = G.W
    if np.any(W == NEG_INF):
        raise InstanceError("-inf weights are only allowed in nondecreasing-path tables")
    if np.any(np.isnan(W)):
        raise InstanceError("NaN weight")
    fin = np.isfinite(W)
    if G.geometry is not None:
        ref = geometric_weights(G.geometry.points, G.geometry.weight_fn)
        if G.geometry.points.shape[0] != G.n:
            raise InstanceError("geometry has the wrong number of points")
        if G.geometry.weight_fn == NODE_WEIGHT and G.geometry.d != 1:
            raise InstanceError("node weights need 1-dimensional points")
        if not np.array_equal(W[fin], ref[fin]):
            raise InstanceError("finite weights disagree with the declared geometry")
    if not G.directed and not np.array_equal(W, W.T):
        raise InstanceError("undirected instance with asymmetric weights")
    if G.kind == "small_L":
        L = int(G.params.get("L", 0))
        worst = max((len(v) for v in distinct_out_weights(W)), default=0)
        if L and worst > L:
            raise InstanceError(f"vertex with {worst} distinct outgoing weights exceeds L={L}")
    if G.kind == "bounded_weight":
        c = float(G.params.get("c", INF))
        vals = W[fin]
        if vals.size and (vals.min() < 1 or vals.max() > c):
            raise InstanceError(f"weights outside [1, {c}]")
