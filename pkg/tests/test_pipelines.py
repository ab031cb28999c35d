import math

import numpy as np
import pytest

from qapsp.apsp import (AlgoConfig, apnp, apsp_geometric, apsp_geometric_bounded, apsp_node_weighted, apsp_small_L,
                        min_triangle_quantum, weight_classes)
from qapsp.graph import INF, Geometry, WeightedGraph, generate_instance, min_plus_identity
from qapsp.oracles import brute_apnp, brute_apsp, brute_min_triangle
from qapsp.products import GeometricMatrix, bucketed_bool_min_product, geometric_star_product
from qapsp.qmodel import CostLedger
from qapsp.sssp import qdijkstra_charge

import refs

pytestmark = pytest.mark.usefixtures("quiet")


def node_graph(p, mask):
    p = np.asarray(p, dtype=float)
    W = np.where(mask, p[:, None], INF)
    np.fill_diagonal(W, INF)
    return WeightedGraph(W=W, geometry=Geometry(p[:, None], "node_weight"), kind="node_weighted")


def coverage_ok(res, D):
    fin = np.isfinite(D)
    return np.all(~fin | np.isfinite(res.stages["short"]) | np.isfinite(res.stages["long"]))


# --- node-weighted ---------------------------------------------------------------


@pytest.mark.parametrize("variant", ["grover-combine", "product-combine"])
def test_node_weighted_uniform_weights(variant):
    rng = np.random.default_rng(0)
    G = node_graph(np.full(20, 3.0), rng.random((20, 20)) < 0.15)
    res = apsp_node_weighted(G, variant)
    D = brute_apsp(G)
    assert np.array_equal(res.values, D)
    hops = brute_apsp(np.where(np.isfinite(G.W), 1.0, INF))
    assert np.array_equal(D, 3 * hops)


@pytest.mark.parametrize("variant", ["grover-combine", "product-combine"])
def test_node_weighted_all_short(variant):
    G = generate_instance("node_weighted", 16, 2)
    res = apsp_node_weighted(G, variant, config=AlgoConfig(s=16))
    assert np.array_equal(res.stages["short"], brute_apsp(G))


def test_node_weighted_n128_ledger_decomposition():
    n = 128
    G = generate_instance("node_weighted", n, 3)
    led = CostLedger()
    res = apsp_node_weighted(G, "grover-combine", led)
    assert np.array_equal(res.values, brute_apsp(G))
    plan = res.info["plan"]["values"]
    s, d, S = plan["s"], plan["d"], res.info["hitting_size"]
    phases = led.phase_totals()
    # Dijkstra: one search per hitting vertex in each direction
    assert phases["dijkstra"].analytic_total == 2 * S * qdijkstra_charge(n)
    # combine: one Grover minimum over S per pair
    assert phases["combine"].quantum_queries == n * n * math.ceil(math.sqrt(S))
    # short: replay the s products with fresh ledgers
    p = G.geometry.points[:, 0]
    B, total = min_plus_identity(n), 0
    for t in range(1, s + 1):
        sub = CostLedger()
        P = bucketed_bool_min_product(G.adjacency(), B, d, sub, tag=("short", t))
        B = np.minimum(B, p[:, None] + P.values)
        total += sub.quantum_queries
    assert phases["short"].quantum_queries == total
    assert led.quantum_queries == total + phases["combine"].quantum_queries
    assert coverage_ok(res, brute_apsp(G))


# --- geometric ------------------------------------------------------------------


def test_geometric_short_stage_suffices_for_diameter_two():
    n = 12
    mask = np.zeros((n, n), bool)
    mask[0, 1:] = mask[1:, 0] = True
    G = node_graph(np.arange(1, n + 1), mask)
    res = apsp_geometric(G, 1, config=AlgoConfig(ell=2))
    assert np.array_equal(res.stages["short"], brute_apsp(G))


def test_geometric_long_stage_alone_with_full_hitting_set():
    G = generate_instance("node_weighted", 24, 5)
    res = apsp_geometric(G, 1, config=AlgoConfig(hitting_constant=1000))
    assert res.info["hitting_size"] == 24
    long = res.stages["long"].copy()
    np.fill_diagonal(long, 0)
    assert np.array_equal(long, brute_apsp(G))


def test_geometric_n96_fifty_seeds():
    for seed in range(50):
        G = generate_instance("node_weighted", 96, seed)
        res = apsp_geometric(G, 1, config=AlgoConfig(seed=seed))
        D = brute_apsp(G)
        assert np.array_equal(res.values, D)
        assert coverage_ok(res, D)


def test_geometric_ledger_formula():
    n = 48
    G = generate_instance("node_weighted", n, 7)
    led = CostLedger()
    res = apsp_geometric(G, 1, led)
    ell, r = res.info["plan"]["values"]["ell"], res.info["plan"]["values"]["r"]
    S = res.info["hitting_size"]
    assert res.info["products"] == 2 * ell - 1
    # replay the ell - 1 short products; the remaining ell run in the long phase
    A = GeometricMatrix.from_graph(G)
    cur, short = G.W, 0
    for t in range(2, ell + 1):
        sub = CostLedger()
        cur = geometric_star_product(A, cur, r, ledger=sub, tag=("short", t)).values
        short += sub.quantum_queries
    phases = led.phase_totals()
    assert phases["short"].quantum_queries == short
    assert led.analytic_total == phases["dijkstra"].analytic_total == S * qdijkstra_charge(n)
    assert led.quantum_total == short + phases["long"].quantum_queries + S * qdijkstra_charge(n)


def test_geometric_euclidean_kappa3():
    for seed in range(5):
        G = generate_instance("euclidean_planar", 40, seed)
        assert np.array_equal(apsp_geometric(G, 3).values, brute_apsp(G))


# --- bounded weights ---------------------------------------------------------------


def test_bounded_unit_weights_layer_by_hops():
    rng = np.random.default_rng(1)
    G = node_graph(np.ones(20), rng.random((20, 20)) < 0.12)
    G = WeightedGraph(W=G.W, geometry=G.geometry, kind="bounded_weight", params={"c": 1.0})
    res = apsp_geometric_bounded(G)
    D = brute_apsp(G)
    assert np.array_equal(res.values, D)
    layer = res.info["layer_of"]
    last = res.info["layers"]
    reach = np.isfinite(D) & (D <= last)
    assert np.array_equal(layer[reach], D[reach].astype(int))
    assert last == res.info["plan"]["values"]["ell"]


@pytest.mark.parametrize("seed", range(10))
def test_bounded_c4_layers_partition(seed):
    G = generate_instance("bounded_weight", 64, seed, {"c": 4})
    res = apsp_geometric_bounded(G, config=AlgoConfig(seed=seed))
    D = brute_apsp(G)
    assert np.array_equal(res.values, D)
    layer, last = res.info["layer_of"], res.info["layers"]
    inside = np.isfinite(D) & (D < last + 1)
    assert np.array_equal(layer[inside], np.floor(D[inside]).astype(int))
    assert np.all(layer[~inside] == -1)


def test_bounded_rejects_out_of_range_weights():
    G = generate_instance("node_weighted", 8, 0)
    with pytest.raises(ValueError):
        apsp_geometric_bounded(G, c=2.0)


# --- few distinct weights ---------------------------------------------------------


def test_weight_table_largest_first():
    W = np.full((3, 3), INF)
    W[0, 1], W[0, 2] = 3, 7
    cls = weight_classes(W)
    assert cls.table(0) == (7.0, 3.0)
    assert not np.any(cls.masks[0] & cls.masks[1])
    with pytest.raises(ValueError):
        weight_classes(W, L=1)


def test_small_L_one_weight_matches_node_weighted():
    G = generate_instance("node_weighted", 30, 4)
    D = brute_apsp(G)
    assert np.array_equal(apsp_small_L(G, 1).values, D)
    assert np.array_equal(apsp_node_weighted(G).values, D)


@pytest.mark.parametrize("product", ["geometric", "bucketed"])
def test_small_L_n64_fifty_seeds(product):
    for seed in range(25):
        G = generate_instance("small_L", 64, seed, {"L": 3})
        res = apsp_small_L(G, config=AlgoConfig(seed=seed, small_L_product=product))
        assert np.array_equal(res.values, brute_apsp(G))


# --- nondecreasing paths -----------------------------------------------------------


def test_apnp_increasing_dag():
    n = 9
    W = np.full((n, n), INF)
    for i in range(n):
        for j in range(i + 1, n):
            if (i * 7 + j) % 3:
                W[i, j] = j  # weights increase along every path
    assert np.array_equal(apnp(W).values, brute_apnp(W))
    assert np.array_equal(apnp(W).values, np.array(refs.dfs_apnp(W.tolist())))


def test_apnp_constant_weights():
    G = generate_instance("apnp", 20, 3)
    W = np.where(np.isfinite(G.W), 4.0, INF)
    vals = apnp(W).values
    reach = np.isfinite(brute_apsp(W))
    np.fill_diagonal(reach, False)
    assert np.all(vals[reach] == 4) and np.all(vals[~reach & ~np.eye(20, dtype=bool)] == INF)


def test_apnp_n24_hundred_seeds():
    for seed in range(100):
        G = generate_instance("apnp", 24, seed)
        assert np.array_equal(apnp(G, config=AlgoConfig(seed=seed)).values, brute_apnp(G))


def test_apnp_counterexample_graph():
    u, y, z1, z2, v = range(5)
    W = np.full((5, 5), INF)
    W[u, y], W[y, z1], W[y, z2], W[z1, v], W[z2, v] = 3, 1, 5, 1, 10
    for s in (1, 2, 5):
        assert apnp(W, config=AlgoConfig(s=s)).values[u, v] == 10


def test_apnp_trivial_minle_mode():
    G = generate_instance("apnp", 16, 8)
    led = CostLedger()
    res = apnp(G, led, AlgoConfig(minle_mode="trivial", s=4))
    assert np.array_equal(res.values, brute_apnp(G))
    assert "minle" not in led.analytic_by_label() and led.quantum_queries == 3 * 16 * 16 * 4


# --- minimum triangle ---------------------------------------------------------------


def test_triangle_charge_and_k3():
    led = CostLedger()
    W = np.full((27, 27), INF)
    assert min_triangle_quantum(W, led) == (INF, None)
    assert led.quantum_queries == 141
    K3 = np.array([[INF, 1, 3], [1, INF, 2], [3, 2, INF]])
    assert min_triangle_quantum(K3) == (6.0, (0, 1, 2))


def test_triangle_k10_distinct():
    for seed in range(10):
        rng = np.random.default_rng(seed)
        W = np.full((10, 10), INF)
        iu = np.triu_indices(10, 1)
        w = rng.permutation(45).astype(float) + 1
        W[iu] = w
        W.T[iu] = w
        got = min_triangle_quantum(W)
        assert got == brute_min_triangle(W) == refs.scan_triangle(W.tolist())


# --- shared behaviour ------------------------------------------------------------


CASES = [
    ("node_weighted", lambda G, c: apsp_node_weighted(G, "grover-combine", config=c), "s"),
    ("node_weighted", lambda G, c: apsp_node_weighted(G, "product-combine", config=c), "s"),
    ("node_weighted", lambda G, c: apsp_geometric(G, 1, config=c), "ell"),
    ("bounded_weight", lambda G, c: apsp_geometric_bounded(G, config=c), "ell"),
    ("small_L", lambda G, c: apsp_small_L(G, config=c), "s"),
]


@pytest.mark.parametrize("kind,run,knob", CASES)
@pytest.mark.parametrize("setting", ["one", "n", "tiny_hitting"])
def test_degenerate_settings_stay_correct(kind, run, knob, setting):
    for seed in range(6):
        n = 10 + 7 * seed
        G = generate_instance(kind, n, seed)
        if setting == "tiny_hitting":
            cfg = AlgoConfig(seed=seed, hitting_constant=0.01)
        else:
            cfg = AlgoConfig(seed=seed, **{knob: 1 if setting == "one" else n})
        res = run(G, cfg)
        D = brute_apsp(G)
        assert np.array_equal(res.values, D)
        assert coverage_ok(res, D)
        if res.info.get("hitting_verified") is not None:
            assert res.info["hitting_verified"]


@pytest.mark.parametrize("kind,run,knob", CASES)
def test_pipelines_are_deterministic(kind, run, knob):
    G = generate_instance(kind, 24, 9)
    a, b = run(G, AlgoConfig(seed=3)), run(G, AlgoConfig(seed=3))
    assert np.array_equal(a.values, b.values)
    assert a.ledger.snapshot() == b.ledger.snapshot()
    assert a.ledger.analytic_by_label() == b.ledger.analytic_by_label()


def test_input_checks():
    with pytest.raises(ValueError):
        apsp_node_weighted(generate_instance("general", 6, 0))
    with pytest.raises(ValueError):
        apsp_node_weighted(generate_instance("node_weighted", 6, 0), "fastest")
    with pytest.raises(ValueError):
        apsp_small_L(generate_instance("small_L", 6, 0), config=AlgoConfig(small_L_product="fft"))
    with pytest.raises(ValueError):
        min_triangle_quantum(np.zeros((2, 2)))
