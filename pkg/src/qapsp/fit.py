"""Log-log power-law fits of ledger counters against n."""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np
from scipy import stats

MIN_POINTS = 4


class InsufficientPointsError(ValueError):
    pass


@dataclass
class FitResult:
    slope: float
    intercept: float  # natural-log intercept: counter ~ exp(intercept) * n^slope
    residual: float  # root-mean-square residual in log space
    ci_low: float
    ci_high: float
    ns: list
    values: list
    counter: str = "quantum_queries"

    def to_dict(self) -> dict:
        return asdict(self)

    def within(self, target: float, tol: float) -> bool:
        return abs(self.slope - target) <= tol

    def summary(self) -> str:
        return (f"{self.counter}: slope {self.slope:.4f} "
                f"(95% CI [{self.ci_low:.4f}, {self.ci_high:.4f}]), rms residual {self.residual:.2e}, "
                f"n = {self.ns}")


def fit_power_law(ns, values, counter: str = "quantum_queries") -> FitResult:
    """Least-squares slope of ln(value) on ln(n) with a t-based 95% interval."""
    ns = np.asarray(ns, dtype=float)
    values = np.asarray(values, dtype=float)
    if ns.shape != values.shape:
        raise ValueError("ns and values differ in length")
    if len(ns) < MIN_POINTS:
        raise InsufficientPointsError(f"need at least {MIN_POINTS} points, got {len(ns)}")
    if np.any(ns <= 0) or np.any(values <= 0):
        raise ValueError("power-law fits need positive n and counter values")
    x, y = np.log(ns), np.log(values)
    res = stats.linregress(x, y)
    resid = y - (res.intercept + res.slope * x)
    half = stats.t.ppf(0.975, len(x) - 2) * res.stderr
    return FitResult(float(res.slope), float(res.intercept), float(np.sqrt(np.mean(resid ** 2))),
                     float(res.slope - half), float(res.slope + half),
                     [int(v) if float(v).is_integer() else float(v) for v in ns],
                     values.tolist(), counter)
