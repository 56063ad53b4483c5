"""Closed-form high-probability excess-risk bounds and their components."""

from __future__ import annotations

import math
from dataclasses import dataclass, field


@dataclass(frozen=True)
class BoundReport:
    """A bound value with its itemized components.

    ``feasible`` is None for bounds without a side condition; for the
    general-distance bound it records whether the condition
    2*RC + sqrt((2/n) log(1/t)) <= delta/2 holds (reported as data, never an
    error).
    """

    bound_total: float
    components: dict = field(default_factory=dict)
    t: float = 0.0
    confidence_label: str = ""
    feasible: bool | None = None


def rc_bound_euclid(s: float, M: float, K: int, n: int) -> float:
    """Closed-form Rademacher-complexity bound for the weighted centroid
    class: sqrt(2/n) * s * M^2 * (sqrt(K) + 5K)."""
    if s <= 0 or M <= 0 or K < 1 or n < 1:
        raise ValueError("arguments must be positive")
    return math.sqrt(2.0 / n) * s * M * M * (math.sqrt(K) + 5.0 * K)


def risk_gap_bound_euclid(s: float, M: float | None, K: int, n: int, p: int, t: float) -> BoundReport:
    """Excess-risk bound for the Euclidean form, holding with probability at
    least 1 - 3t: 4*RC + 8sM^2 sqrt(2 log(1/t)/n) + 2sM^2 log(p/t)/n."""
    if M is None:
        raise ValueError("coordinate bound M is unknown; supply a truncation level")
    if not 0.0 < t < 1.0 / 3.0:
        raise ValueError("t must lie in (0, 1/3)")
    if p < 1:
        raise ValueError("p must be at least 1")
    rc = 4.0 * rc_bound_euclid(s, M, K, n)
    hoeffding = 8.0 * s * M * M * math.sqrt(2.0 * math.log(1.0 / t) / n)
    log_term = 2.0 * s * M * M * math.log(p / t) / n
    return BoundReport(
        bound_total=rc + hoeffding + log_term,
        components={"rc": rc, "hoeffding": hoeffding, "log": log_term},
        t=t,
        confidence_label="1-3t",
    )


def risk_gap_bound_general(
    s: float, M: float, K: int, delta: float, t: float, n: int, RC: float, RCj_max: float
) -> BoundReport:
    """Excess-risk bound for the general-distance form, holding with
    probability at least 1 - 4pt, with its feasibility side condition."""
    if min(s, M, delta) <= 0 or K < 1 or n < 1:
        raise ValueError("arguments must be positive")
    if not 0.0 < t < 1.0:
        raise ValueError("t must lie in (0, 1)")
    if RC < 0 or RCj_max < 0:
        raise ValueError("complexity estimates must be nonnegative")
    dev = math.sqrt(2.0 / n * math.log(1.0 / t))
    pair_mean = 2.0 * s * M * dev
    cell_mass = 4.0 * s * K * M / (delta * delta) * (2.0 * RC + dev)
    cell_pair = 2.0 * s * K / delta * (2.0 * RCj_max + M * dev)
    return BoundReport(
        bound_total=pair_mean + cell_mass + cell_pair,
        components={"pair_mean": pair_mean, "cell_mass": cell_mass, "cell_pair": cell_pair},
        t=t,
        confidence_label="1-4pt",
        feasible=bool(2.0 * RC + dev <= delta / 2.0),
    )
