"""Gate-count formulas evaluated on concrete instances.

All polylog factors are dropped (model constants = 1), so these numbers are
for comparing trends across instances, not for predicting absolute gate
counts. Infinite results are returned as ``math.inf``; the ledger records a
flag whenever that happens or when a substitution was made.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

__all__ = [
    "CostLedger",
    "state_prep_cost",
    "eq1_total",
    "lgz_costs",
    "simulated_gate_tally",
    "build_ledger",
]


def state_prep_cost(n: int, k: int, s_k: int) -> float:
    """k n^2 + n k sqrt(C(n,k)/s_k): Pascal table once, plus combinadic Grover rounds."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    universe = math.comb(n, k)
    if s_k == 0:
        return math.inf
    if not 1 <= s_k <= universe:
        raise ValueError(f"s_k must be in [1, C(n,k)={universe}], got {s_k}")
    return k * n * n + n * k * math.sqrt(universe / s_k)


def eq1_total(n: int, k: int, s_k: int, beta: int, lambda_min: float) -> float:
    """sqrt(beta s_k) [n k sqrt(C(n,k)/s_k) + n^2 k / lambda_min].

    ``beta = 0`` is evaluated as beta = 1 (one verification pass); callers
    that care should record that substitution, as :func:`build_ledger` does.
    """
    if not lambda_min > 0:
        raise ValueError(f"lambda_min must be positive, got {lambda_min}")
    if beta < 0:
        raise ValueError(f"beta must be nonnegative, got {beta}")
    if s_k < 1:
        return math.inf
    b = max(beta, 1)
    universe = math.comb(n, k)
    return math.sqrt(b * s_k) * (n * k * math.sqrt(universe / s_k) + n * n * k / lambda_min)


def lgz_costs(n: int, k: int, s_k: int, beta: int, delta: float) -> tuple[float, float, float]:
    """(sampling, betti, exact) forms of the earlier algorithm's stated costs."""
    if not delta > 0:
        raise ValueError(f"delta must be positive, got {delta}")
    universe = math.comb(n, k)
    n5 = float(n) ** 5
    sampling = n5 / delta * math.sqrt(universe / s_k) if s_k >= 1 else math.inf
    if beta >= 1:
        betti = n5 / delta * math.sqrt(universe / beta)
        exact = n5 * math.sqrt(beta * universe)
    else:
        betti = exact = math.inf
    return sampling, betti, exact


def simulated_gate_tally(
    n: int,
    k: int,
    prep_queries: int,
    approx_count_queries: int,
    count_rounds: int,
    fixed_prep_iterations: int,
    t: int,
) -> float:
    """Gate tally implied by the simulated query counts.

    One-time: the Pascal table (k n^2), the BBHT preparation and the
    approximate count, each oracle query costing one combinadic conversion
    (n k gates). Per counting round: the fixed-count Grover preparation
    (its iterations plus the initial state, n k each) and a phase
    estimation of 2^t applications of e^{iB} at n^2 gates each.
    """
    one_time = k * n * n + (prep_queries + approx_count_queries) * n * k
    per_round = (fixed_prep_iterations + 1) * n * k + (2**t) * n * n
    return one_time + count_rounds * per_round


@dataclass
class CostLedger:
    n: int
    k: int
    s_k: int
    beta: int
    lambda_min: float | None
    delta: float
    entries: dict[str, float] = field(default_factory=dict)
    queries: dict[str, int] = field(default_factory=dict)
    simulated_gates: float | None = None
    flags: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        def finite(x):
            return None if x is None or math.isinf(x) else x

        return {
            "n": self.n,
            "k": self.k,
            "S_k": self.s_k,
            "beta": self.beta,
            "lambda_min": self.lambda_min,
            "delta": self.delta,
            "entries": {name: finite(v) for name, v in self.entries.items()},
            "queries": dict(self.queries),
            "simulated_gates": finite(self.simulated_gates),
            "flags": list(self.flags),
        }


def build_ledger(
    n: int,
    k: int,
    s_k: int,
    beta: int,
    lambda_min: float | None,
    delta: float | None = None,
) -> CostLedger:
    """Evaluate every formula for one instance. ``delta`` defaults to 1/beta, the exact-count regime."""
    if delta is None:
        delta = 1.0 / beta if beta >= 1 else 1.0
    led = CostLedger(n, k, s_k, beta, lambda_min, delta)
    led.entries["state_prep"] = state_prep_cost(n, k, s_k)
    if s_k == 0:
        led.flags.append("empty_complex")
    if lambda_min is None:
        led.entries["eq1_total"] = math.inf
        led.flags.append("no_nonzero_eigenvalue")
    else:
        led.entries["eq1_total"] = eq1_total(n, k, s_k, beta, lambda_min)
        if beta == 0:
            led.flags.append("eq1_beta_evaluated_as_1")
    sampling, betti, exact = lgz_costs(n, k, s_k, beta, delta)
    led.entries["lgz_sampling"] = sampling
    led.entries["lgz_betti"] = betti
    led.entries["lgz_exact"] = exact
    for name, v in led.entries.items():
        if math.isinf(v):
            led.flags.append(f"{name}_infinite")
    return led
