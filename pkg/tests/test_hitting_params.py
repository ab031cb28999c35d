import math
import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qapsp.hitting import hits_all, hitting_set_size, sample_hitting_set, verify_and_repair_hitting
from qapsp.params import DegenerateParameterWarning, TASKS, paper_exponents, select_parameters

# --- hitting sets -------------------------------------------------------------


def test_size_formula_and_clamps():
    assert sample_hitting_set(100, 100).size == math.ceil(3 * math.log(100))
    assert sample_hitting_set(50, 1).vertices.tolist() == list(range(50))
    assert hitting_set_size(4096, 256) == math.ceil(3 * 16 * math.log(4096))
    with pytest.raises(ValueError):
        hitting_set_size(10, 11)


def test_sampling_is_seeded_and_sorted():
    a, b = sample_hitting_set(500, 20, seed=4), sample_hitting_set(500, 20, seed=4)
    assert np.array_equal(a.vertices, b.vertices)
    assert np.all(np.diff(a.vertices) > 0)
    assert not np.array_equal(a.vertices, sample_hitting_set(500, 20, seed=5).vertices)


def _random_paths(rng, n, s, count):
    return np.array([rng.permutation(n)[:s] for _ in range(count)])


def test_all_hit_rate_example_n64():
    rng = np.random.default_rng(0)
    hit = sum(hits_all(sample_hitting_set(64, 8, seed=t).vertices, _random_paths(rng, 64, 8, 64), 64)
              for t in range(100))
    assert hit >= 99


def test_all_hit_rate_with_a_proper_subset():
    # at n=64 or n=256 the formula already exceeds n; here |S| is about a tenth of V
    n, s = 4096, 256
    rng = np.random.default_rng(1)
    sizes, hit = set(), 0
    for t in range(100):
        S = sample_hitting_set(n, s, seed=t)
        sizes.add(S.size)
        hit += hits_all(S.vertices, _random_paths(rng, n, s, 256), n)
    assert sizes == {400} and hit >= 99


def test_verify_and_repair_examples():
    S = sample_hitting_set(30, 10, seed=0, c_h=0.01)
    assert verify_and_repair_hitting(S, np.zeros((0, 3), dtype=int)).verified
    one = sample_hitting_set(30, 30, c_h=0.01)
    mid = int(one.vertices[0])
    R = verify_and_repair_hitting(one, [[mid - 1 if mid else 2, mid, 29]])
    assert R.verified and R.rounds == 0


@pytest.mark.parametrize("seed", range(5))
def test_repair_against_disjoint_paths(seed):
    n = 1000
    paths = np.random.default_rng(seed).permutation(n).reshape(100, 10)
    S = sample_hitting_set(n, 10, seed=seed, c_h=0.01)
    R = verify_and_repair_hitting(S, paths, seed=seed)
    member = set(R.vertices.tolist())
    assert R.verified and all(any(v in member for v in p) for p in paths.tolist())
    assert set(S.vertices.tolist()) <= member or R.rounds > 0


@given(st.integers(2, 60), st.integers(0, 10 ** 6), st.data())
def test_repair_always_terminates_verified(n, seed, data):
    s = data.draw(st.integers(1, n))
    count = data.draw(st.integers(0, 30))
    rng = np.random.default_rng(seed)
    paths = [rng.permutation(n)[: int(rng.integers(1, s + 1))].tolist() for _ in range(count)]
    R = verify_and_repair_hitting(sample_hitting_set(n, s, seed=seed, c_h=0.05), paths)
    assert R.verified and hits_all(R.vertices, paths, n)


def test_ragged_paths_and_bad_input():
    assert hits_all([3], [[1, 3], [3, -1, -1]], 5)
    assert not hits_all([3], [[1, 2]], 5)
    with pytest.raises(ValueError):
        hits_all([0], [[]], 3)


# --- parameter selection --------------------------------------------------------


EXPECTED = {
    "thm1_k1": 2.4577, "thm1_k3": 2.4819, "thm2_k1": 2.4788, "thm2_k3": 2.4909,
    "node_weighted": 2.4859, "thm4_k1": 2.4577, "thm7_factor": 2.4788, "thm8": 2.4865,
}


def test_exponents_to_four_decimals():
    got = paper_exponents(2.373)
    assert {k: round(v, 4) for k, v in got.items()} == EXPECTED


def test_closed_forms(quiet):
    w = 2.373
    assert select_parameters("thm1", 64, kappa=1).predicted_exponent == pytest.approx((5 + w) / 3)
    assert select_parameters("thm2", 64, kappa=3).predicted_exponent == pytest.approx((32.5 + w) / 14)
    assert select_parameters("node_weighted", 64).predicted_exponent == pytest.approx((20 + w) / 9)
    assert select_parameters("thm7", 64, L=2).predicted_exponent == pytest.approx(2.5 - (2.5 - w) / 6)


def test_stated_three_decimal_bounds():
    got = paper_exponents(2.373)
    for key, bound in {"thm1_k1": 2.458, "thm2_k3": 2.491, "node_weighted": 2.486, "thm8": 2.487}.items():
        assert got[key] <= bound and bound - got[key] < 1e-3


@given(st.sampled_from(TASKS), st.integers(2, 5000), st.integers(1, 3), st.floats(2.01, 2.49))
def test_values_are_clamped_ceilings(task, n, kappa, omega):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DegenerateParameterWarning)
        plan = select_parameters(task, n, kappa=kappa, L=2, omega_model=omega)
    for name, val in plan.values.items():
        assert 1 <= val <= n
        if not (task == "thm7" and name == "s") and name not in plan.clamped:
            assert val == math.ceil(n ** plan.exponents[name])


def test_thm8_s_is_one_or_two_at_desk_scale():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DegenerateParameterWarning)
        assert select_parameters("thm8", 1)["s"] == 1
        assert {select_parameters("thm8", n)["s"] for n in range(2, 1025)} == {2}


def test_degenerate_warnings_and_overrides():
    with pytest.warns(DegenerateParameterWarning):
        plan = select_parameters("thm1", 32, overrides={"r": 1})
    assert plan["r"] == 1
    with pytest.warns(DegenerateParameterWarning):
        plan = select_parameters("thm2", 16, overrides={"ell": 999})
    assert plan["ell"] == 16 and "ell" in plan.clamped
    with pytest.warns(DegenerateParameterWarning):
        select_parameters("thm1", 64, omega_model=2.7)
    with pytest.raises(ValueError):
        select_parameters("thm9", 8)
    with pytest.raises(ValueError):
        select_parameters("thm1", 8, overrides={"q": 2})


def test_plan_serialises():
    plan = select_parameters("node_weighted", 128)
    d = plan.to_dict()
    assert d["values"] == {"d": plan["d"], "s": plan["s"]} and d["task"] == "node_weighted"
