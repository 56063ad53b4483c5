"""Monte Carlo estimators: population risks, Rademacher complexities, and
the sample-mean concentration experiment.

Every estimator is deterministic given its seed; draws come from streams
keyed by (seed, purpose, index), so estimates do not depend on execution
order.  Risk comparisons are offered in paired form (both parameter values
evaluated on the same draws), which is what makes small gaps resolvable at
desk-scale draw counts.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from skmlab.core import CentroidSet, Dataset, DissimilarityTensor, Partition, Theta, WeightVector
from skmlab.euclid import initial_weights
from skmlab.models import Model, draw, population_mean
from skmlab.rng import stream
from skmlab.weights import solve_weights

#: Draw block size for chunked Monte Carlo loops.
MC_CHUNK = 1 << 19


@dataclass(frozen=True)
class MCEstimate:
    value: float
    std_error: float
    n_draws: int
    seed: int

    def within(self, other: float, k: float = 3.0) -> bool:
        """Is ``other`` inside k standard errors of the estimate?"""
        return abs(self.value - other) <= k * self.std_error


class _RunningMoments:
    """Streaming mean and standard error over chunks."""

    def __init__(self):
        self.n = 0
        self.total = 0.0
        self.total_sq = 0.0

    def add(self, values: np.ndarray):
        self.n += values.size
        self.total += float(values.sum())
        self.total_sq += float((values * values).sum())

    def estimate(self, n_draws: int, seed: int) -> MCEstimate:
        mean = self.total / self.n
        var = max(self.total_sq - self.n * mean * mean, 0.0) / max(self.n - 1, 1)
        return MCEstimate(value=mean, std_error=float(np.sqrt(var / self.n)), n_draws=n_draws, seed=seed)


def objective_integrand(xs: np.ndarray, mu: np.ndarray, centers: np.ndarray, wvec: np.ndarray) -> np.ndarray:
    """||x - mu||_w^2 - min_a ||x - a||_w^2 per row (the objective form;
    negate for the risk)."""
    tot = ((xs - mu) ** 2) @ wvec
    nearest = np.full(xs.shape[0], np.inf)
    for k in range(centers.shape[0]):
        diff = xs - centers[k]
        np.minimum(nearest, (diff * diff) @ wvec, out=nearest)
    return tot - nearest


def population_risk_mc(model: Model, w: WeightVector, A: CentroidSet, n_draws: int, seed: int) -> MCEstimate:
    """Monte Carlo estimate of the clustering risk (negated population
    objective) at (w, A)."""
    if n_draws < 2:
        raise ValueError("need at least two draws")
    mu = population_mean(model)
    rng = stream(seed, "population-risk")
    acc = _RunningMoments()
    left = n_draws
    while left > 0:
        m = min(left, MC_CHUNK)
        xs = draw(model, m, rng)
        acc.add(-objective_integrand(xs, mu, A.centers, w.w))
        left -= m
    return acc.estimate(n_draws, seed)


def paired_risk_diff(model: Model, theta_a: Theta, theta_b: Theta, n_draws: int, seed: int) -> MCEstimate:
    """Estimate of R(theta_a) - R(theta_b) with both thetas evaluated on the
    same draws (common random numbers)."""
    if n_draws < 2:
        raise ValueError("need at least two draws")
    mu = population_mean(model)
    rng = stream(seed, "paired-risk")
    acc = _RunningMoments()
    left = n_draws
    while left > 0:
        m = min(left, MC_CHUNK)
        xs = draw(model, m, rng)
        fa = objective_integrand(xs, mu, theta_a.structure.centers, theta_a.weights.w)
        fb = objective_integrand(xs, mu, theta_b.structure.centers, theta_b.weights.w)
        acc.add(fb - fa)
        left -= m
    return acc.estimate(n_draws, seed)


def population_risk_general(probs, tables, w: WeightVector, atom_labels, K: int) -> float:
    """Exact population risk of a K-partition of a finite discrete model.

    ``probs`` are the m atom probabilities, ``tables`` the (m, m, p)
    per-feature dissimilarities between atoms, ``atom_labels`` the cell of
    each atom.  Every cell must carry positive mass.
    """
    probs = np.asarray(probs, dtype=float).reshape(-1)
    tables = np.asarray(tables, dtype=float)
    atom_labels = np.asarray(atom_labels, dtype=np.int64).reshape(-1)
    m = probs.shape[0]
    if tables.shape[:2] != (m, m):
        raise ValueError("tables shape does not match the atom count")
    if abs(probs.sum() - 1.0) > 1e-9 or probs.min() < 0:
        raise ValueError("atom probabilities must be nonnegative and sum to 1")
    value = 0.0
    pp = np.outer(probs, probs)
    members = [np.flatnonzero(atom_labels == k) for k in range(K)]
    for k, idx in enumerate(members):
        if probs[idx].sum() <= 0.0:
            raise ValueError(f"cell {k} has zero mass")
    for j in range(tables.shape[2]):
        tj = tables[:, :, j]
        term1 = float((pp * tj).sum())
        term2 = 0.0
        for k, idx in enumerate(members):
            block = np.ix_(idx, idx)
            term2 += float((pp[block] * tj[block]).sum()) / float(probs[idx].sum())
        value += w.w[j] * (term1 - term2)
    return -float(value)


# ---------------------------------------------------------------------------
# Rademacher complexity estimators


def rc_mc_euclid(
    data: Dataset,
    mu,
    s: float,
    M_box: float,
    K: int,
    n_draws: int,
    seed: int,
    *,
    n_starts: int = 3,
    max_iter: int = 40,
) -> MCEstimate:
    """Monte Carlo lower estimate of the Rademacher complexity of the
    weighted centroid class on the given sample.

    The inner supremum over (w, A) is approximated per sign draw by
    alternating ascent: the weight step is solved exactly, centers move by
    projected gradient steps inside the [-M_box, M_box] box, and steps are
    kept only when the true objective improves.  The zero weight vector is
    admissible, so each per-draw value is floored at zero and the reported
    estimate is a lower bound on the true complexity.
    """
    X = data.values
    n, p = X.shape
    mu = np.asarray(mu, dtype=float).reshape(-1)
    eps_matrix = stream(seed, "rc-eps").integers(0, 2, size=(n_draws, n)) * 2.0 - 1.0
    base = (X - mu) ** 2

    def value(eps, wvec, centers):
        tot = base @ wvec
        nearest = np.full(n, np.inf)
        for k in range(centers.shape[0]):
            diff = X - centers[k]
            np.minimum(nearest, (diff * diff) @ wvec, out=nearest)
        return float((eps * (tot - nearest)).mean())

    sups = np.empty(n_draws)
    for d in range(n_draws):
        eps = eps_matrix[d]
        rng = stream(seed, "rc-start", d)
        best = 0.0  # w = 0 gives the zero function
        for _ in range(n_starts):
            rows = rng.choice(n, size=min(K, n), replace=False)
            centers = X[np.sort(rows)].copy()
            if centers.shape[0] < K:
                centers = np.vstack([centers] * K)[:K]
            w = initial_weights(p, s)
            cur = value(eps, w.w, centers)
            for _ in range(max_iter):
                improved = False
                # exact weight step at the current assignment, kept only on gain
                labels = np.argmin(
                    np.stack([((X - c) ** 2) @ w.w for c in centers]), axis=0
                )
                gains = (eps[:, None] * (base - (X - centers[labels]) ** 2)).mean(axis=0)
                w_try = solve_weights(gains, s)
                cand = value(eps, w_try.w, centers)
                if cand > cur:
                    w, cur, improved = w_try, cand, True
                # projected gradient step on the centers
                labels = np.argmin(
                    np.stack([((X - c) ** 2) @ w.w for c in centers]), axis=0
                )
                grad = np.zeros_like(centers)
                for k in range(K):
                    mask = labels == k
                    if mask.any():
                        grad[k] = 2.0 * (eps[mask, None] * (X[mask] - centers[k])).mean(axis=0) * w.w * (
                            mask.sum() / n
                        )
                step = M_box
                while step > 1e-4 * M_box:
                    trial = np.clip(centers + step * grad, -M_box, M_box)
                    cand = value(eps, w.w, trial)
                    if cand > cur:
                        centers, cur, improved = trial, cand, True
                        break
                    step *= 0.5
                if not improved:
                    break
            best = max(best, cur)
        sups[d] = best
    mean = float(sups.mean())
    se = float(sups.std(ddof=1) / np.sqrt(n_draws)) if n_draws > 1 else 0.0
    return MCEstimate(value=mean, std_error=se, n_draws=n_draws, seed=seed)


def rc_mc_euclid_model(model: Model, s: float, K: int, n: int, n_draws: int, seed: int, **kw) -> MCEstimate:
    """Convenience wrapper: sample n points from the model, then estimate."""
    rng = stream(seed, "rc-data")
    data = Dataset(values=draw(model, n, rng), bound_M=getattr(model, "bound", None))
    if data.bound_M is None:
        raise ValueError("model has unbounded support; supply data and a box bound directly")
    return rc_mc_euclid(data, population_mean(model), s, data.bound_M, K, n_draws, seed, **kw)


def _cell_matrix(family: list[Partition], n: int) -> np.ndarray:
    cells = []
    for part in family:
        if part.n != n:
            raise ValueError("partition size mismatch in family")
        for k in range(part.K):
            cells.append(part.labels == k)
    return np.asarray(cells, dtype=float)


def rc_mc_partition(X: Dataset, family: list[Partition], n_draws: int, seed: int) -> MCEstimate:
    """Monte Carlo estimate of the partition-indicator Rademacher complexity:
    E sup over cells of |(1/n) sum_i eps_i 1(i in C)|, with the sup taken
    exactly over every cell of every partition in the family."""
    if not family:
        raise ValueError("family must be nonempty")
    n = X.n
    cells = _cell_matrix(family, n)
    eps = stream(seed, "rc-partition-eps").integers(0, 2, size=(n_draws, n)) * 2.0 - 1.0
    sups = np.abs(eps @ cells.T).max(axis=1) / n
    mean = float(sups.mean())
    se = float(sups.std(ddof=1) / np.sqrt(n_draws)) if n_draws > 1 else 0.0
    return MCEstimate(value=mean, std_error=se, n_draws=n_draws, seed=seed)


def rc_mc_feature_pairs(D: DissimilarityTensor, j: int, family: list[Partition], n_draws: int, seed: int) -> MCEstimate:
    """Monte Carlo estimate of the per-feature paired-dissimilarity
    complexity: items i and i + floor(n/2) are paired, and the sup runs
    exactly over the family's cells."""
    n = D.n
    if n < 2:
        raise ValueError("need at least two items")
    if not family:
        raise ValueError("family must be nonempty")
    half = n // 2
    idx = np.arange(half)
    dvals = D.d[idx, idx + half, j]
    cells = _cell_matrix(family, n)
    pair_in_cell = cells[:, idx] * cells[:, idx + half]  # (n_cells, half)
    weighted = pair_in_cell * dvals[None, :]
    eps = stream(seed, "rc-pairs-eps").integers(0, 2, size=(n_draws, half)) * 2.0 - 1.0
    sups = np.abs(eps @ weighted.T).max(axis=1) / half
    mean = float(sups.mean())
    se = float(sups.std(ddof=1) / np.sqrt(n_draws)) if n_draws > 1 else 0.0
    return MCEstimate(value=mean, std_error=se, n_draws=n_draws, seed=seed)


# ---------------------------------------------------------------------------
# concentration of the weighted sample mean


@dataclass(frozen=True)
class CoverageReport:
    coverage: float
    target: float
    bound: float
    reps: int
    allowance: float

    @property
    def passed(self) -> bool:
        return self.coverage >= self.target - self.allowance


def hoeffding_coverage(model: Model, w: WeightVector, n: int, t: float, reps: int, seed: int) -> CoverageReport:
    """Fraction of replications where the weighted squared deviation of the
    sample mean stays under the closed-form concentration level
    2 s M^2 log(p/t) / n."""
    M = getattr(model, "bound", None)
    if M is None:
        raise ValueError("model has unbounded support; coverage level needs a finite M")
    if not 0.0 < t < 1.0:
        raise ValueError("t must lie in (0, 1)")
    mu = population_mean(model)
    bound = 2.0 * w.s * M * M * np.log(model.p / t) / n
    hits = 0
    for rep in range(reps):
        xs = draw(model, n, stream(seed, "hoeffding-rep", rep))
        dev = xs.mean(axis=0) - mu
        if float(w.w @ (dev * dev)) <= bound:
            hits += 1
    coverage = hits / reps
    allowance = 3.0 * float(np.sqrt(t * (1.0 - t) / reps))
    return CoverageReport(coverage=coverage, target=1.0 - t, bound=float(bound), reps=reps, allowance=allowance)
