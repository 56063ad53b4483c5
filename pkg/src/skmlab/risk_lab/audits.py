"""Randomized audits of the inequalities the risk analysis leans on.

Each audit samples admissible cases under a seeded stream and counts
violations, which must be zero.  A relative slack of 1e-12 keeps exact
boundary cases (where the inequalities hold with equality) from being
miscounted due to floating-point rounding.
"""

from __future__ import annotations

import numpy as np

from skmlab.rng import stream

_REL_SLACK = 1e-12
_ABS_SLACK = 1e-15


def _violates(lhs: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    return lhs > rhs * (1.0 + _REL_SLACK) + _ABS_SLACK


def peter_paul_check(n_triples: int, eps_grid, seed: int) -> int:
    """Audit d^2(x,y) <= (1+eps) d^2(x,z) + (1 + 1/eps) d^2(z,y) on random
    point triples under random weighted Euclidean metrics."""
    eps_grid = np.asarray(eps_grid, dtype=float).reshape(-1)
    if eps_grid.min(initial=np.inf) <= 0:
        raise ValueError("eps values must be positive")
    rng = stream(seed, "peter-paul")
    violations = 0
    chunk = 4096
    left = n_triples
    while left > 0:
        m = min(left, chunk)
        p = int(rng.integers(1, 6))
        x, z, y = (rng.uniform(-5, 5, size=(m, p)) for _ in range(3))
        w = rng.uniform(0.0, 1.0, size=(m, p))
        dxy = ((x - y) ** 2 * w).sum(axis=1)
        dxz = ((x - z) ** 2 * w).sum(axis=1)
        dzy = ((z - y) ** 2 * w).sum(axis=1)
        for eps in eps_grid:
            rhs = (1.0 + eps) * dxz + (1.0 + 1.0 / eps) * dzy
            violations += int(_violates(dxy, rhs).sum())
        left -= m
    return violations


def set_peter_paul_check(n_cases: int, eps_grid, seed: int) -> int:
    """Audit d^2(x,A) <= (1+eps) d^2(x,B) + (1 + 1/eps) dH->(B,A)^2 for
    random finite sets, where dH-> is the directed Hausdorff distance from B
    to A under the same weighted metric."""
    eps_grid = np.asarray(eps_grid, dtype=float).reshape(-1)
    if eps_grid.min(initial=np.inf) <= 0:
        raise ValueError("eps values must be positive")
    rng = stream(seed, "set-peter-paul")
    violations = 0
    for _ in range(n_cases):
        p = int(rng.integers(1, 5))
        na, nb = int(rng.integers(1, 5)), int(rng.integers(1, 5))
        A = rng.uniform(-5, 5, size=(na, p))
        B = rng.uniform(-5, 5, size=(nb, p))
        x = rng.uniform(-5, 5, size=p)
        w = rng.uniform(0.0, 1.0, size=p)
        sq_xa = (((A - x) ** 2) * w).sum(axis=1).min()
        sq_xb = (((B - x) ** 2) * w).sum(axis=1).min()
        cross = ((B[:, None, :] - A[None, :, :]) ** 2 * w).sum(axis=2)
        directed_sq = cross.min(axis=1).max()
        for eps in eps_grid:
            rhs = (1.0 + eps) * sq_xb + (1.0 + 1.0 / eps) * directed_sq
            if _violates(np.asarray(sq_xa), np.asarray(rhs)):
                violations += 1
    return violations


def reciprocal_bound_check(n_cases: int, seed: int) -> int:
    """Audit |1/Pn - 1/P| <= 2 eps / delta^2 for admissible draws: P >= delta,
    |Pn - P| <= eps, and delta >= 2 eps."""
    rng = stream(seed, "reciprocal-bound")
    delta = rng.uniform(0.05, 1.0, size=n_cases)
    eps = delta * rng.uniform(0.0, 0.5, size=n_cases)
    pf = delta + rng.uniform(0.0, 1.0, size=n_cases)
    pnf = pf + eps * rng.uniform(-1.0, 1.0, size=n_cases)
    lhs = np.abs(1.0 / pnf - 1.0 / pf)
    rhs = 2.0 * eps / (delta * delta)
    return int(_violates(lhs, rhs).sum())
