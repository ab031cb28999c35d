"""Parameter selection for every pipeline.

Each derived parameter is ``ceil(n^e)`` for a closed-form exponent e that
balances the two cost terms of its algorithm, clamped to ``[1, n]``. The
exponents depend on a *model* matrix-multiplication exponent ``omega_model``,
not on the kernel actually executed.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Optional

from .products import MINLE_EXPONENT

DEFAULT_OMEGA = 2.373
# short-path length exponent of the nondecreasing-paths pipeline
APNP_S_EXPONENT = 0.0135

TASKS = ("node_weighted", "thm1", "thm2", "thm4", "thm7", "thm8")


class DegenerateParameterWarning(UserWarning):
    """A derived parameter was clamped, or forced to its trivial value 1."""


@dataclass
class ParameterPlan:
    task: str
    n: int
    kappa: int = 1
    L: Optional[int] = None
    c: Optional[float] = None
    omega_model: float = DEFAULT_OMEGA
    values: dict = field(default_factory=dict)  # r, d, s, ell as used
    exponents: dict = field(default_factory=dict)  # e with value = ceil(n^e)
    predicted_exponent: float = math.nan
    clamped: list = field(default_factory=list)

    def __getitem__(self, key: str) -> int:
        return self.values[key]

    def get(self, key: str, default=None):
        return self.values.get(key, default)

    def to_dict(self) -> dict:
        return {
            "task": self.task, "n": self.n, "kappa": self.kappa, "L": self.L, "c": self.c,
            "omega_model": self.omega_model, "values": dict(sorted(self.values.items())),
            "exponents": dict(sorted(self.exponents.items())),
            "predicted_exponent": self.predicted_exponent, "clamped": list(self.clamped),
        }


def derived_value(n: int, e: float) -> tuple:
    """``(ceil(n^e) clamped to [1, n], clamped?)``."""
    raw = math.ceil(n ** e) if n > 1 else 1
    val = min(max(raw, 1), max(n, 1))
    return val, val != raw


def product_exponent(kappa: int, omega: float) -> float:
    """Exponent of the geometric distance product: (5k + w) / (2k + 1)."""
    return (5 * kappa + omega) / (2 * kappa + 1)


def partition_exponent(kappa: int, omega: float) -> float:
    """Exponent of the cell count r that balances n^w r against n^2.5 / r^(1/2k)."""
    return (2.5 - omega) * 2 * kappa / (2 * kappa + 1)


def _formulas(task: str, kappa: int, L, omega: float) -> tuple:
    """Return ({name: exponent}, predicted total exponent) for a task."""
    prod = product_exponent(1, omega)
    if task == "node_weighted":
        s_e = (2.0 / 3.0) * (2.5 - prod)
        return {"d": (2 * omega - 2) / 3, "s": s_e}, 2.5 - s_e / 2
    if task == "thm1":
        return {"r": partition_exponent(kappa, omega)}, product_exponent(kappa, omega)
    if task == "thm2":
        ell_e = (2.5 - omega) / (4 * kappa + 2)
        return ({"r": partition_exponent(kappa, omega), "ell": ell_e},
                product_exponent(kappa, omega) + ell_e)
    if task == "thm4":
        return ({"r": partition_exponent(kappa, omega), "ell": (5 - 2 * omega) / 3},
                product_exponent(kappa, omega))
    if task == "thm7":
        # s = (n^(2.5 - prod) / L)^(1/2); the L part enters through the value, not the exponent
        s_e = (2.5 - prod) / 2
        return ({"r": partition_exponent(1, omega), "d": (2 * omega - 2) / 3, "s": s_e},
                2.5 - (2.5 - omega) / 6)
    if task == "thm8":
        s_e = APNP_S_EXPONENT
        return {"s": s_e}, max(MINLE_EXPONENT + s_e, 2.5 - s_e)
    raise ValueError(f"unknown task {task!r}; expected one of {TASKS}")


def select_parameters(task: str, n: int, kappa: int = 1, L: Optional[int] = None,
                      c: Optional[float] = None, omega_model: float = DEFAULT_OMEGA,
                      overrides: Optional[dict] = None) -> ParameterPlan:
    """Derive r, d, s, ell for ``task`` on an n-vertex input.

    ``overrides`` replaces individual values (still clamped to [1, n]); a
    value of 1, forced or derived by clamping, raises a warning.
    """
    if task not in TASKS:
        raise ValueError(f"unknown task {task!r}; expected one of {TASKS}")
    if n < 1:
        raise ValueError("n must be >= 1")
    if kappa < 1:
        raise ValueError("kappa must be >= 1")
    omega = float(omega_model)
    if not 2.0 < omega < 2.5:
        clamped_omega = min(max(omega, 2.0 + 1e-9), 2.5 - 1e-9)
        warnings.warn(f"omega_model={omega} outside (2, 2.5); using {clamped_omega}",
                      DegenerateParameterWarning, stacklevel=2)
        omega = clamped_omega
    exps, predicted = _formulas(task, kappa, L, omega)
    plan = ParameterPlan(task, n, kappa, L, c, omega, exponents=exps, predicted_exponent=predicted)
    for name, e in exps.items():
        val, clamped = derived_value(n, e)
        if task == "thm7" and name == "s" and L:
            raw = math.ceil(math.sqrt(n ** (2 * e) / L)) if n > 1 else 1
            val = min(max(raw, 1), n)
            clamped = val != raw
        if clamped:
            plan.clamped.append(name)
        plan.values[name] = val
    for name, val in (overrides or {}).items():
        if val is None:
            continue
        if name not in ("r", "d", "s", "ell"):
            raise ValueError(f"unknown parameter override {name!r}")
        v = min(max(int(val), 1), n)
        if v != int(val):
            plan.clamped.append(name)
        plan.values[name] = v
    trivial = sorted(k for k, v in plan.values.items() if v == 1 and n > 1)
    if plan.clamped or trivial:
        warnings.warn(f"{task}: degenerate parameters at n={n}: "
                      f"clamped={sorted(set(plan.clamped))} trivial={trivial}",
                      DegenerateParameterWarning, stacklevel=2)
    return plan


def paper_exponents(omega: float = DEFAULT_OMEGA) -> dict:
    """The eight headline exponents, keyed by a short id."""
    return {
        "thm1_k1": _formulas("thm1", 1, None, omega)[1],
        "thm1_k3": _formulas("thm1", 3, None, omega)[1],
        "thm2_k1": _formulas("thm2", 1, None, omega)[1],
        "thm2_k3": _formulas("thm2", 3, None, omega)[1],
        "node_weighted": _formulas("node_weighted", 1, None, omega)[1],
        "thm4_k1": _formulas("thm4", 1, None, omega)[1],
        "thm7_factor": _formulas("thm7", 1, None, omega)[1],
        "thm8": _formulas("thm8", 1, None, omega)[1],
    }
