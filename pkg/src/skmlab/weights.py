"""Solver for the linear weight subproblem.

Maximizes sum_j w_j b_j over the feasible set
{w >= 0, ||w||_2^2 <= 1, ||w||_1 <= s}.  The KKT conditions give a
soft-threshold structure: w = ST(b+, delta) / ||ST(b+, delta)||_2, with
delta = 0 when the L1 constraint is slack and otherwise chosen by bisection
so that ||w||_1 = s.

When s is below the smallest L1 norm the normalized soft-threshold path can
reach (that limit is sqrt(m), m = number of maximal gains), the L1 ball is
the only binding constraint and the optimum is the symmetric split
w = (s/m) on the maximal coordinates.  That corner is handled explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from skmlab.core import WeightVector

#: Bisection stops once the bracket is this narrow.
BISECT_WIDTH = 1e-12
#: Hard cap on bisection iterations (double precision is exhausted long before).
BISECT_MAX_ITER = 200


@dataclass(frozen=True)
class BisectionTrace:
    """Threshold diagnostics for one solve: the final threshold, the
    iteration count, and the (delta, ||w||_1) pairs visited."""

    delta: float
    iterations: int
    path: list = field(default_factory=list)


def _soft_threshold(b_pos: np.ndarray, delta: float) -> np.ndarray:
    return np.maximum(b_pos - delta, 0.0)


def _normalized(b_pos: np.ndarray, delta: float, sqrt_m: float) -> tuple[np.ndarray, float]:
    """w(delta) on the soft-threshold path and its L1 norm.

    Past the collapse point (all entries thresholded away) the path limit is
    the equal split over the maximal coordinates, whose L1 norm is sqrt(m).
    """
    st = _soft_threshold(b_pos, delta)
    norm = np.linalg.norm(st)
    if norm == 0.0:
        return np.zeros_like(b_pos), sqrt_m
    w = st / norm
    return w, float(np.abs(w).sum())


def _solve(b: np.ndarray, s: float) -> tuple[np.ndarray, BisectionTrace]:
    b = np.asarray(b, dtype=float).reshape(-1)
    if not np.all(np.isfinite(b)):
        raise ValueError("gain vector must be finite")
    if s < 0:
        raise ValueError("sparsity budget s must be nonnegative")

    b_pos = np.maximum(b, 0.0)
    if s == 0.0 or b_pos.max(initial=0.0) == 0.0:
        # No informative feature (or no budget): the zero vector is optimal.
        return np.zeros_like(b_pos), BisectionTrace(0.0, 0, [])

    b_max = float(b_pos.max())
    argmax = b_pos == b_max
    m = int(argmax.sum())
    sqrt_m = float(np.sqrt(m))

    w0, l1_0 = _normalized(b_pos, 0.0, sqrt_m)
    if l1_0 <= s:
        return w0, BisectionTrace(0.0, 0, [(0.0, l1_0)])

    if s < sqrt_m:
        # The normalized path cannot reach ||w||_1 = s; only the L1 ball
        # binds and the symmetric split over the maximal gains is optimal.
        w = np.where(argmax, s / m, 0.0)
        return w, BisectionTrace(b_max, 0, [(0.0, l1_0), (b_max, sqrt_m)])

    lo, hi = 0.0, b_max
    path = [(0.0, l1_0)]
    iters = 0
    while hi - lo > BISECT_WIDTH and iters < BISECT_MAX_ITER:
        mid = 0.5 * (lo + hi)
        _, l1_mid = _normalized(b_pos, mid, sqrt_m)
        path.append((mid, l1_mid))
        if l1_mid > s:
            lo = mid
        else:
            hi = mid
        iters += 1
    w, _ = _normalized(b_pos, hi, sqrt_m)
    return w, BisectionTrace(hi, iters, path)


def solve_weights(b, s: float) -> WeightVector:
    """Maximize the linear gain over the feasible weight set."""
    w, _ = _solve(np.asarray(b, dtype=float), float(s))
    return WeightVector(w=w, s=float(s))


def bisection_trace(b, s: float) -> BisectionTrace:
    """Threshold and iteration diagnostics for :func:`solve_weights`."""
    _, trace = _solve(np.asarray(b, dtype=float), float(s))
    return trace


def _feasibility_map(rows: np.ndarray, s: float) -> np.ndarray:
    """Send arbitrary vectors into the feasible set: clip negatives, then
    scale onto the L2 ball and then the L1 ball (scaling preserves both)."""
    w = np.maximum(rows, 0.0)
    n2 = np.linalg.norm(w, axis=1, keepdims=True)
    w = np.where(n2 > 1.0, w / np.maximum(n2, 1e-300), w)
    l1 = w.sum(axis=1, keepdims=True)
    return np.where(l1 > s, w * (s / np.maximum(l1, 1e-300)), w)


def project_feasible(w_raw, s: float) -> WeightVector:
    """Send an arbitrary vector into the feasible set (clip negatives, then
    shrink onto the L2 and L1 balls)."""
    w = _feasibility_map(np.asarray(w_raw, dtype=float).reshape(1, -1), float(s))[0]
    return WeightVector(w=w, s=float(s))


def random_feasible_w(p: int, s: float, rng: np.random.Generator) -> WeightVector:
    """A random point of the feasible set, biased toward its boundary (where
    the linear objective attains its extremes)."""
    v = np.abs(rng.standard_normal(p))
    return project_feasible(v / max(np.linalg.norm(v), 1e-12), s)


def grid_oracle(b, s: float, coarse_step: float = 1e-2, polish_samples: int = 400):
    """Brute-force maximizer over the feasible set for p <= 3.

    A dense feasible grid at ``coarse_step`` seeds a projected random polish:
    perturbations around the incumbent are mapped back onto the feasible set
    and kept when they improve, with the perturbation scale halving whenever
    a round finds no gain.  Axis-aligned refinement alone stalls against the
    curved L2 boundary; the projection step moves along it.  Independent of
    the soft-threshold solver; used as its test oracle.
    """
    b = np.asarray(b, dtype=float).reshape(-1)
    p = b.shape[0]
    if p > 3:
        raise ValueError("grid oracle supports p <= 3 only")
    s = float(s)

    hi = min(1.0, s)
    axes = [np.arange(0.0, hi + coarse_step, coarse_step) for _ in range(p)]
    grids = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=1)
    feas = ((pts * pts).sum(axis=1) <= 1.0) & (pts.sum(axis=1) <= s)
    pts = pts[feas]
    if pts.shape[0] == 0:
        return np.zeros(p), 0.0
    vals = pts @ b
    i = int(np.argmax(vals))
    w_best, val_best = pts[i], float(vals[i])

    rng = np.random.default_rng(0x5EED)
    scale = coarse_step
    while scale > 1e-10:
        cands = _feasibility_map(w_best + rng.standard_normal((polish_samples, p)) * scale, s)
        vals = cands @ b
        i = int(np.argmax(vals))
        if vals[i] > val_best:
            w_best, val_best = cands[i], float(vals[i])
        else:
            scale /= 2.0
    return w_best, val_best
