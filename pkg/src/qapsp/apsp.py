"""End-to-end shortest-path pipelines.

Every pipeline splits pairs into short paths, found by repeated matrix
products, and long paths, which pass through a random hitting set S and are
finished from single-source searches rooted in S. The short stage records
one witness per entry and step, so the paths of exactly the threshold
length can be rebuilt and handed to the hitting-set check.
"""
from __future__ import annotations

import math
import zlib
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from .graph import (EUCLIDEAN, INF, NEG_INF, NODE_WEIGHT, DistanceMatrix, WeightedGraph,
                    distinct_out_weights, min_plus_identity)
from .hitting import DEFAULT_HITTING_CONSTANT, HittingSet, sample_hitting_set, verify_and_repair_hitting
from .matmul import boolean_matmul
from .oracles import apnp_seed, brute_distance_product
from .params import DEFAULT_OMEGA, ParameterPlan, select_parameters
from .products import (GeometricMatrix, ProductResult, bucketed_bool_min_product, geometric_star_product,
                       minle_product, sparse_geometric_star_product, trivial_star_product)
from .qmodel import DEFAULT_CONFIG, CostLedger, GroverConfig, qmin
from .sssp import exact_backward_labels, nondecreasing_pass, quantum_dijkstra_many, threshold_arrivals

SMALL_L_PRODUCTS = ("geometric", "bucketed")
NODE_WEIGHTED_VARIANTS = ("grover-combine", "product-combine")


@dataclass
class AlgoConfig:
    grover: GroverConfig = DEFAULT_CONFIG
    omega_model: float = DEFAULT_OMEGA
    kernel: str = "naive"
    hitting_constant: float = DEFAULT_HITTING_CONSTANT
    minle_mode: str = "analytic"
    small_L_product: str = "geometric"
    seed: int = 0
    kappa: Optional[int] = None
    # explicit parameter overrides; None means "derive from the plan"
    r: Optional[int] = None
    d: Optional[int] = None
    s: Optional[int] = None
    ell: Optional[int] = None

    def overrides(self) -> dict:
        return {"r": self.r, "d": self.d, "s": self.s, "ell": self.ell}

    def with_overrides(self, **kw) -> "AlgoConfig":
        return replace(self, **kw)


# ---------------------------------------------------------------------------
# walk tables and path reconstruction


@dataclass
class WalkTrace:
    """Running minimum of a sequence of product tables, with provenance.

    ``hold[t][i, j]`` is the step whose table supplied entry (i, j) of the
    running minimum after step t (0 = the starting table) and ``wit[t][i, j]``
    the inner index that step used.
    """

    hold: list = field(default_factory=list)
    wit: list = field(default_factory=list)

    def start(self, n: int) -> None:
        self.hold = [np.zeros((n, n), dtype=np.int32)]
        self.wit = [np.full((n, n), -1, dtype=np.int32)]

    def record(self, improved: np.ndarray, witness: np.ndarray, step: int) -> None:
        self.hold.append(np.where(improved, step, self.hold[-1]).astype(np.int32))
        self.wit.append(np.where(improved, witness, self.wit[-1]).astype(np.int32))

    @property
    def steps(self) -> int:
        return len(self.hold) - 1

    def last_step_pairs(self) -> tuple:
        """Pairs whose running value was last improved at the final step."""
        t = self.steps
        if t == 0:
            return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
        return np.nonzero(self.hold[t] == t)


def left_paths(starts, ends, step: int, hold: Optional[list], wit: list) -> np.ndarray:
    """Rebuild paths for tables grown as A * B (a new first edge per step).

    ``hold=None`` means every entry of table t comes from step t (exact-hop
    powers with no running minimum). Rows are padded with -1.
    """
    u = np.asarray(starts, dtype=np.int64).copy()
    x = np.asarray(ends, dtype=np.int64)
    H = None if hold is None else np.stack(hold)
    Wt = np.stack(wit)
    t = np.full(len(u), step, dtype=np.int64)
    cols = [u.copy()]
    live = np.ones(len(u), dtype=bool)
    for _ in range(step + 1):
        idx = np.flatnonzero(live)
        if idx.size == 0:
            break
        t0 = t[idx] if H is None else H[t[idx], u[idx], x[idx]].astype(np.int64)
        done = t0 <= 0
        live[idx[done]] = False
        idx, t0 = idx[~done], t0[~done]
        if idx.size == 0:
            break
        k = Wt[t[idx], u[idx], x[idx]].astype(np.int64)
        col = np.full(len(u), -1, dtype=np.int64)
        col[idx] = k
        u[idx] = k
        t[idx] = t0 - 1
        cols.append(col)
    return np.stack(cols, axis=1) if len(u) else np.zeros((0, step + 1), dtype=np.int64)


def right_paths(starts, ends, step: int, hold: list, wit: list) -> np.ndarray:
    """Rebuild paths for tables grown as B (min,<=) A (a new last edge per step).

    A step-0 entry is the edge (i, j) itself, or the empty path when i = j.
    Rows are padded with -1.
    """
    i = np.asarray(starts, dtype=np.int64)
    j = np.asarray(ends, dtype=np.int64).copy()
    H, Wt = np.stack(hold), np.stack(wit)
    t = np.full(len(i), step, dtype=np.int64)
    rev = [j.copy()]
    live = np.ones(len(i), dtype=bool)
    for _ in range(step + 1):
        idx = np.flatnonzero(live)
        if idx.size == 0:
            break
        t0 = H[t[idx], i[idx], j[idx]].astype(np.int64)
        col = np.full(len(i), -1, dtype=np.int64)
        base = idx[t0 <= 0]
        edge = base[i[base] != j[base]]
        col[edge] = i[edge]
        live[base] = False
        idx, t0 = idx[t0 > 0], t0[t0 > 0]
        # k == i leaves the empty path (i, i), closed at the next base step
        k = Wt[t[idx], i[idx], j[idx]].astype(np.int64)
        col[idx] = k
        j[idx] = k
        t[idx] = t0 - 1
        rev.append(col)
    table = np.stack(rev[::-1], axis=1) if len(i) else np.zeros((0, 1), dtype=np.int64)
    return _compact_rows(table)


def _compact_rows(table: np.ndarray) -> np.ndarray:
    """Shift the valid entries of each row to the front (padding stays -1)."""
    if table.size == 0:
        return table
    order = np.argsort(table < 0, axis=1, kind="stable")
    return np.take_along_axis(table, order, axis=1)


# ---------------------------------------------------------------------------
# shared stages


def _ledger(ledger: Optional[CostLedger]) -> CostLedger:
    return CostLedger() if ledger is None else ledger


def _plan(task: str, n: int, cfg: AlgoConfig, **kw) -> ParameterPlan:
    return select_parameters(task, n, omega_model=cfg.omega_model, overrides=cfg.overrides(), **kw)


def left_powering(step_fn: Callable, start: np.ndarray, steps: int, trace: WalkTrace) -> np.ndarray:
    """B <- B ^ step_fn(B, t) for t = 1..steps, recording provenance."""
    B = np.array(start, dtype=float)
    trace.start(B.shape[0])
    for t in range(1, steps + 1):
        P = step_fn(B, t)
        improved = P.values < B
        B = np.where(improved, P.values, B)
        trace.record(improved, P.witness, t)
    return B


def hitting_stage(n: int, length: int, paths: np.ndarray, cfg: AlgoConfig, tag: str) -> HittingSet:
    length = min(max(int(length), 1), n)
    S = sample_hitting_set(n, length, seed=_derive_seed(cfg.seed, tag), c_h=cfg.hitting_constant)
    return verify_and_repair_hitting(S, paths)


def _derive_seed(seed: int, tag: str) -> int:
    return int(np.random.SeedSequence([int(seed) & 0xFFFFFFFF, zlib.crc32(tag.encode())]).generate_state(1)[0])


def _dijkstra_tables(W: np.ndarray, S: np.ndarray, ledger: CostLedger, both: bool):
    """Rows d(y, .) for y in S placed in an n x n table; also d(., y) columns if ``both``."""
    n = W.shape[0]
    out = np.full((n, n), INF)
    out[S] = quantum_dijkstra_many(W, S, ledger)
    if not both:
        return out, None
    inn = np.full((n, n), INF)
    inn[:, S] = quantum_dijkstra_many(W, S, ledger, reverse=True).T
    return out, inn


def _result(values, algorithm: str, ledger: CostLedger, short, long, plan: ParameterPlan,
            S: Optional[HittingSet], **info) -> DistanceMatrix:
    extra = {"plan": plan.to_dict()}
    if S is not None:
        extra.update(hitting_size=S.size, hitting_rounds=S.rounds, hitting_verified=S.verified)
    extra.update(info)
    return DistanceMatrix(values, algorithm, ledger, {"short": short, "long": long}, extra)


def _require_geometry(G: WeightedGraph, weight_fn: Optional[str] = None):
    if G.geometry is None:
        raise ValueError("this algorithm needs a geometrically weighted graph")
    if weight_fn is not None and G.geometry.weight_fn != weight_fn:
        raise ValueError(f"expected {weight_fn} geometry, got {G.geometry.weight_fn}")


def _check_nonnegative(W: np.ndarray) -> None:
    fin = np.isfinite(W)
    if np.any(W == NEG_INF) or np.any(W[fin] < 0):
        raise ValueError("shortest-path pipelines need nonnegative weights")


# ---------------------------------------------------------------------------
# node-weighted graphs


def apsp_node_weighted(G: WeightedGraph, variant: str = "grover-combine", ledger: Optional[CostLedger] = None,
                       config: Optional[AlgoConfig] = None) -> DistanceMatrix:
    """APSP when w(u, v) = p_u on every edge.

    Short paths: s rounds of B <- B ^ (p + Adj (min) B) using the bucketed
    Boolean x real product. Long paths: Dijkstra from a hitting set, then
    either one Grover minimum over S per pair (``grover-combine``) or s more
    rounds of the same product from the S-seeded table (``product-combine``).
    """
    if variant not in NODE_WEIGHTED_VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {NODE_WEIGHTED_VARIANTS}")
    _require_geometry(G, NODE_WEIGHT)
    cfg = config or AlgoConfig()
    ledger = _ledger(ledger)
    W, n = G.W, G.n
    _check_nonnegative(W)
    p = G.geometry.points[:, 0]
    adj = G.adjacency()
    plan = _plan("node_weighted", n, cfg)
    s, d = plan["s"], plan["d"]

    def step(stage):
        def run(B, t):
            res = bucketed_bool_min_product(adj, B, d, ledger, cfg.grover, cfg.kernel, tag=(stage, t))
            return ProductResult(p[:, None] + res.values, res.witness)
        return run

    trace = WalkTrace()
    with ledger.phase("short"):
        short = left_powering(step("short"), min_plus_identity(n), s, trace)
    with ledger.phase("hitting"):
        u, x = trace.last_step_pairs()
        K = left_paths(u, x, s, trace.hold, trace.wit)
        S = hitting_stage(n, s, K, cfg, "node_weighted")
    with ledger.phase("dijkstra"):
        out, inn = _dijkstra_tables(W, S.vertices, ledger, both=variant == "grover-combine")
    with ledger.phase("combine"):
        if variant == "grover-combine":
            long = trivial_star_product(inn, out, ledger, cfg.grover, support=S.vertices, tag=("combine",)).values
        else:
            long = left_powering(step("long"), out, s, WalkTrace())
    values = np.minimum(short, long)
    np.fill_diagonal(values, 0.0)
    return _result(values, f"node_weighted/{variant}", ledger, short, long, plan, S, K_paths=len(K))


# ---------------------------------------------------------------------------
# geometric graphs


def _default_kappa(G: WeightedGraph, cfg: AlgoConfig) -> int:
    if cfg.kappa is not None:
        return cfg.kappa
    return 3 if G.geometry.weight_fn == EUCLIDEAN else 1


def apsp_geometric(G: WeightedGraph, kappa: Optional[int] = None, ledger: Optional[CostLedger] = None,
                   config: Optional[AlgoConfig] = None) -> DistanceMatrix:
    """APSP on a geometrically weighted graph with the geometric distance product.

    A^(t) = A * A^(t-1) for t <= ell gives exact-hop walk tables whose running
    minimum (with the identity) is the short-path table. The long-path table
    starts from Dijkstra rows of the hitting set and takes ell more products
    B^(t) = A * B^(t-1); the answer is the entrywise minimum of both.
    """
    _require_geometry(G)
    cfg = config or AlgoConfig()
    ledger = _ledger(ledger)
    W, n = G.W, G.n
    _check_nonnegative(W)
    kappa = kappa or _default_kappa(G, cfg)
    plan = _plan("thm2", n, cfg, kappa=kappa)
    r, ell = plan["r"], plan["ell"]
    A = GeometricMatrix.from_graph(G)

    def product(B, stage, t):
        return geometric_star_product(A, B, r, ledger=ledger, config=cfg.grover, kernel=cfg.kernel,
                                      tag=(stage, t))

    # walk tables: step 0 is the identity, step 1 is A itself (witness = end vertex)
    cols = np.broadcast_to(np.arange(n), (n, n))
    powers_wit = [np.full((n, n), -1, dtype=np.int32),
                  np.where(np.isfinite(W), cols, -1).astype(np.int32)]
    trace = WalkTrace()
    with ledger.phase("short"):
        bar = min_plus_identity(n)
        trace.start(n)
        improved = W < bar
        bar = np.minimum(bar, W)
        trace.record(improved, powers_wit[1], 1)
        cur = W
        for t in range(2, ell + 1):
            P = product(cur, "short", t)
            cur = P.values
            powers_wit.append(P.witness.astype(np.int32))
            improved = cur < bar
            bar = np.minimum(bar, cur)
            trace.record(improved, P.witness, t)
    with ledger.phase("hitting"):
        u, x = trace.last_step_pairs()
        K = left_paths(u, x, ell, None, powers_wit)
        S = hitting_stage(n, ell, K, cfg, "geometric")
    with ledger.phase("dijkstra"):
        B, _ = _dijkstra_tables(W, S.vertices, ledger, both=False)
    with ledger.phase("long"):
        long = B.copy()
        for t in range(1, ell + 1):
            B = product(B, "long", t).values
            long = np.minimum(long, B)
    values = np.minimum(bar, long)
    np.fill_diagonal(values, 0.0)
    return _result(values, f"geometric/k{kappa}", ledger, bar, long, plan, S, K_paths=len(K),
                   products=2 * ell - 1)


def apsp_geometric_bounded(G: WeightedGraph, c: Optional[float] = None, ledger: Optional[CostLedger] = None,
                           config: Optional[AlgoConfig] = None) -> DistanceMatrix:
    """APSP on a geometric graph whose finite weights lie in [1, c].

    Layer s holds the pairs with distance in [s, s+1). It is found with one
    sparse geometric product of A against the layers s-c .. s-1, requested
    only on pairs not yet placed that have some finite candidate. Pairs
    farther than the last layer go through the hitting set with a trivial
    Grover product B' * B over S.
    """
    _require_geometry(G)
    cfg = config or AlgoConfig()
    ledger = _ledger(ledger)
    W, n = G.W, G.n
    if c is None:
        c = G.params.get("c")
    fin = np.isfinite(W)
    np.fill_diagonal(fin, False)
    if c is None:
        c = float(W[fin].max()) if fin.any() else 1.0
    if c < 1:
        raise ValueError("c must be >= 1")
    if np.any(W[fin] < 1) or np.any(W[fin] > c) or np.any(W == NEG_INF):
        raise ValueError(f"finite weights must lie in [1, {c}]")
    kappa = _default_kappa(G, cfg)
    plan = _plan("thm4", n, cfg, kappa=kappa, c=c)
    r, ell = plan["r"], plan["ell"]
    A = GeometricMatrix.from_graph(G)
    adj = G.adjacency()
    np.fill_diagonal(adj, False)
    last = min(math.ceil(c * ell), max(1, math.ceil(c * (n - 1))))

    final = min_plus_identity(n)
    layer = np.where(np.isfinite(final), 0, -1)
    with ledger.phase("short"):
        for s in range(1, last + 1):
            lo = max(0, math.floor(s - c))
            M = np.where((layer >= lo) & (layer <= s - 1), final, INF)
            cand = boolean_matmul(adj, np.isfinite(M), cfg.kernel, ledger) & (layer < 0)
            req = np.argwhere(cand)
            if len(req) == 0:
                continue
            res = sparse_geometric_star_product(A, M, req, r, ledger=ledger, config=cfg.grover,
                                                kernel=cfg.kernel, tag=("layer", s))
            hit = (res.values >= s) & (res.values < s + 1)
            final[res.rows[hit], res.cols[hit]] = res.values[hit]
            layer[res.rows[hit], res.cols[hit]] = s
    with ledger.phase("hitting"):
        # hop-bounded classical powering supplies the ell-edge shortest paths
        trace = WalkTrace()
        Wz = np.where(fin, W, INF)
        left_powering(lambda B, t: ProductResult(*brute_distance_product(Wz, B, ledger, return_witness=True)),
                      min_plus_identity(n), ell, trace)
        u, x = trace.last_step_pairs()
        K = left_paths(u, x, ell, trace.hold, trace.wit)
        S = hitting_stage(n, ell, K, cfg, "bounded")
    with ledger.phase("dijkstra"):
        out, inn = _dijkstra_tables(W, S.vertices, ledger, both=True)
    with ledger.phase("combine"):
        long = trivial_star_product(inn, out, ledger, cfg.grover, support=S.vertices, tag=("combine",)).values
    values = np.minimum(final, long)
    np.fill_diagonal(values, 0.0)
    return _result(values, "geometric_bounded", ledger, final, long, plan, S, K_paths=len(K), c=c,
                   layers=last, layer_of=layer)


# ---------------------------------------------------------------------------
# few distinct weights per vertex


@dataclass
class WeightClasses:
    """Per-vertex distinct outgoing weights, largest first.

    ``weights[l, u]`` is the (l+1)-th largest weight leaving u (0 if u has
    fewer) and ``masks[l]`` marks the edges carrying it.
    """

    weights: np.ndarray  # (L, n)
    masks: np.ndarray  # (L, n, n) bool

    @property
    def L(self) -> int:
        return self.weights.shape[0]

    def table(self, u: int) -> tuple:
        return tuple(float(self.weights[l, u]) for l in range(self.L) if self.masks[l, u].any())


def weight_classes(W: np.ndarray, L: Optional[int] = None) -> WeightClasses:
    W = np.asarray(W, dtype=float)
    n = W.shape[0]
    off = np.isfinite(W)
    np.fill_diagonal(off, False)
    Wo = np.where(off, W, INF)
    per = distinct_out_weights(Wo)
    most = max((len(v) for v in per), default=0)
    if L is not None and most > L:
        raise ValueError(f"a vertex has {most} distinct outgoing weights, more than L={L}")
    weights = np.zeros((max(most, 1), n))
    masks = np.zeros((max(most, 1), n, n), dtype=bool)
    for u, vals in enumerate(per):
        for l, w in enumerate(vals):
            weights[l, u] = w
            masks[l, u] = Wo[u] == w
    return WeightClasses(weights, masks)


def apsp_small_L(G: WeightedGraph, L: Optional[int] = None, ledger: Optional[CostLedger] = None,
                 config: Optional[AlgoConfig] = None) -> DistanceMatrix:
    """APSP when each vertex has at most L distinct outgoing weights.

    One short-path round is min over weight classes l of
    w_l[i] + min{B[k, j] : A_l[i, k] = 1}, each class a node-weighted
    product. Long paths use the same round s times from the Dijkstra rows of
    the hitting set.
    """
    cfg = config or AlgoConfig()
    if cfg.small_L_product not in SMALL_L_PRODUCTS:
        raise ValueError(f"unknown product {cfg.small_L_product!r}")
    ledger = _ledger(ledger)
    W, n = G.W, G.n
    _check_nonnegative(W)
    if L is None:
        L = G.params.get("L")
    classes = weight_classes(W, L)
    plan = _plan("thm7", n, cfg, L=L or classes.L)
    r, d, s = plan["r"], plan["d"], plan["s"]

    def round_(stage):
        def run(B, t):
            best = np.full((n, n), INF)
            wit = np.full((n, n), -1, dtype=np.int64)
            for l in range(classes.L):
                tag = (stage, t, l)
                if cfg.small_L_product == "geometric":
                    Al = GeometricMatrix.node_weighted(classes.masks[l], classes.weights[l])
                    res = geometric_star_product(Al, B, r, ledger=ledger, config=cfg.grover,
                                                 kernel=cfg.kernel, tag=tag)
                    vals = res.values
                else:
                    res = bucketed_bool_min_product(classes.masks[l], B, d, ledger, cfg.grover, cfg.kernel, tag=tag)
                    vals = classes.weights[l][:, None] + res.values
                better = (vals < best) | ((vals == best) & (vals < INF) & (res.witness < wit))
                best = np.where(better, vals, best)
                wit = np.where(better, res.witness, wit)
            return ProductResult(best, wit)
        return run

    trace = WalkTrace()
    with ledger.phase("short"):
        short = left_powering(round_("short"), min_plus_identity(n), s, trace)
    with ledger.phase("hitting"):
        u, x = trace.last_step_pairs()
        K = left_paths(u, x, s, trace.hold, trace.wit)
        S = hitting_stage(n, s, K, cfg, "small_L")
    with ledger.phase("dijkstra"):
        out, _ = _dijkstra_tables(W, S.vertices, ledger, both=False)
    with ledger.phase("long"):
        long = left_powering(round_("long"), out, s, WalkTrace())
    values = np.minimum(short, long)
    np.fill_diagonal(values, 0.0)
    return _result(values, f"small_L/{cfg.small_L_product}", ledger, short, long, plan, S,
                   K_paths=len(K), L=classes.L)


# ---------------------------------------------------------------------------
# nondecreasing paths


def apnp(G, ledger: Optional[CostLedger] = None, config: Optional[AlgoConfig] = None) -> DistanceMatrix:
    """All pairs nondecreasing paths: minimum last-edge weight per pair.

    Short stage: s-1 (min,<=) products from B = A (A has a -inf diagonal),
    covering paths of at most s edges. Long stage, for each hitting vertex
    x: the settle-once backward and forward passes (charged), exact labels
    W(u, x), and a threshold table f_x(a, v) = least last edge of an x -> v
    path whose first edge is at least a. Then L[u, v] = min_x f_x(W(u, x), v).
    """
    cfg = config or AlgoConfig()
    ledger = _ledger(ledger)
    W = G.W if isinstance(G, WeightedGraph) else np.asarray(G, dtype=float)
    n = W.shape[0]
    A = apnp_seed(W)
    plan = _plan("thm8", n, cfg)
    s = plan["s"]

    trace = WalkTrace()
    with ledger.phase("short"):
        B = A.copy()
        trace.start(n)
        for t in range(1, s):
            P = minle_product(B, A, cfg.minle_mode, ledger, cfg.grover, tag=("short", t))
            improved = P.values < B
            B = np.where(improved, P.values, B)
            trace.record(improved, P.witness, t)
    with ledger.phase("hitting"):
        t = trace.steps
        off = ~np.eye(n, dtype=bool)
        i, j = np.nonzero((trace.hold[t] == t) & np.isfinite(B) & off)
        K = right_paths(i, j, t, trace.hold, trace.wit)
        S = hitting_stage(n, s, K, cfg, "apnp")
    long = np.full((n, n), INF)
    passes = []
    with ledger.phase("long"):
        for x in S.vertices:
            back = nondecreasing_pass(W, int(x), "backward", ledger)
            fwd = nondecreasing_pass(W, int(x), "forward", ledger)
            passes.append((int(x), back.charge, fwd.charge))
            label = np.minimum(exact_backward_labels(W, int(x)), back.label)
            reach = label < INF
            if not reach.any():
                continue
            thresholds = np.unique(label[reach])
            F = threshold_arrivals(W, int(x), thresholds)
            F[:, x] = thresholds
            ledger.add_classical(len(thresholds) * n * n)
            rows = np.searchsorted(thresholds, label[reach])
            long[reach] = np.minimum(long[reach], F[rows])
    values = np.minimum(B, long)
    np.fill_diagonal(values, NEG_INF)
    return _result(values, "apnp", ledger, B, long, plan, S, K_paths=len(K), passes=passes,
                   minle_products=max(s - 1, 0))


# ---------------------------------------------------------------------------
# minimum weight triangle


def min_triangle_quantum(G, ledger: Optional[CostLedger] = None, config: Optional[AlgoConfig] = None):
    """Minimum-weight triangle by one Grover minimum over all n^3 ordered triples.

    Only triples a < b < c carry their weight; the smallest index among the
    minima is the lexicographically smallest triple. Returns ``(weight,
    (a, b, c))`` or ``(inf, None)``.
    """
    cfg = config or AlgoConfig()
    W = G.W if isinstance(G, WeightedGraph) else np.asarray(G, dtype=float)
    n = W.shape[0]
    if n < 3:
        raise ValueError("need at least 3 vertices")
    T = W[:, :, None] + W[None, :, :] + W.T[:, None, :]
    a, b, c = np.ogrid[:n, :n, :n]
    T = np.where((a < b) & (b < c), T, INF)
    k, v = qmin(n ** 3, T.ravel(), ledger, cfg.grover, tag=("triangle",))
    if v == INF:
        return INF, None
    return v, (k // (n * n), (k // n) % n, k % n)
