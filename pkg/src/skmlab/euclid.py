"""Sparse K-means for squared Euclidean distance.

The objective is the feature-weighted between-cluster sum of squares in its
pairwise form; the centroid form (total minus within dispersion around
cluster means) carries exactly half its value, and both are exposed so the
identity can be checked rather than assumed.  Risks are negated objectives.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from skmlab import _kernels
from skmlab.core import CentroidSet, Dataset, Partition, Theta, WeightVector
from skmlab.partitions import enumerate_partitions, stirling2
from skmlab.rng import stream
from skmlab.weights import solve_weights

#: Exhaustive checks refuse instances with more partitions than this.
EXHAUSTIVE_LIMIT = 10**6


def bcss_per_feature(X: Dataset, part: Partition) -> np.ndarray:
    """Per-feature pairwise dispersion gain of a partition (all entries >= 0)."""
    if part.n != X.n:
        raise ValueError("partition size does not match dataset")
    return _kernels.pairwise_feature_gains(X.values, part.labels, part.K)


def assign(X: Dataset, A: CentroidSet, w: WeightVector) -> np.ndarray:
    """Label of the weighted-nearest center per row, ties to the lowest index.

    Returns raw labels; clusters may come back empty (the fitter repairs
    them), so the result is an array rather than a Partition.
    """
    if A.p != X.p or w.p != X.p:
        raise ValueError("dimension mismatch")
    return _kernels.assign_labels(X.values, A.centers, w.w)


def update_centroids(X: Dataset, part: Partition) -> CentroidSet:
    """Coordinatewise cluster means (the weighted minimizer on every
    coordinate with positive weight; zero-weight coordinates use the mean too)."""
    if part.n != X.n:
        raise ValueError("partition size does not match dataset")
    centers = np.empty((part.K, X.p))
    for k in range(part.K):
        centers[k] = X.values[part.labels == k].mean(axis=0)
    return CentroidSet(centers=centers)


def objective_pairwise(X: Dataset, part: Partition, w: WeightVector) -> float:
    """Weighted pairwise between-cluster dispersion (the primal objective)."""
    return float(w.w @ bcss_per_feature(X, part))


def centroid_form_value(X: Dataset, part: Partition, w: WeightVector) -> float:
    """Total minus within-cluster dispersion around cluster means, weighted.

    Exactly half of :func:`objective_pairwise`; computed independently from
    cluster means so the identity can be tested.
    """
    vals = X.values
    xbar = vals.mean(axis=0)
    total = ((vals - xbar) ** 2).sum(axis=0)
    within = np.zeros(X.p)
    for k in range(part.K):
        block = vals[part.labels == k]
        within += ((block - block.mean(axis=0)) ** 2).sum(axis=0)
    return float(w.w @ (total - within))


def objective_centroid(X: Dataset, A: CentroidSet, w: WeightVector) -> float:
    """(1/n) sum_i (||x_i - xbar||_w^2 - min_a ||x_i - a||_w^2)."""
    vals = X.values
    xbar = vals.mean(axis=0)
    tot = ((vals - xbar) ** 2) @ w.w
    nearest = _min_sqdist(vals, A.centers, w.w)
    return float((tot - nearest).mean())


def empirical_risk(X: Dataset, w: WeightVector, A: CentroidSet, mu) -> float:
    """Negated sample objective with the true model mean in place of xbar."""
    mu = np.asarray(mu, dtype=float).reshape(-1)
    vals = X.values
    tot = ((vals - mu) ** 2) @ w.w
    nearest = _min_sqdist(vals, A.centers, w.w)
    return float(-(tot - nearest).mean())


def empirical_risk_centered(X: Dataset, w: WeightVector, A: CentroidSet) -> float:
    """Negated sample objective centered at the sample mean."""
    return -objective_centroid(X, A, w)


def _min_sqdist(vals: np.ndarray, centers: np.ndarray, w: np.ndarray) -> np.ndarray:
    out = np.full(vals.shape[0], np.inf)
    for k in range(centers.shape[0]):
        diff = vals - centers[k]
        np.minimum(out, (diff * diff) @ w, out=out)
    return out


# ---------------------------------------------------------------------------
# equivalence of the two objective forms


@dataclass(frozen=True)
class EquivalenceReport:
    """Result of checking the pairwise/centroid-form relation on one instance."""

    pairwise_value: float
    centroid_value: float
    identity_rel_error: float
    exhaustive: bool
    argmax_agree: bool | None = None
    best_labels_pairwise: np.ndarray | None = None
    best_labels_centroid: np.ndarray | None = None
    optimum_ratio: float | None = None
    both_optima_zero: bool | None = None


def check_equivalence(
    X: Dataset, part: Partition, w: WeightVector, exhaustive: bool | None = None
) -> EquivalenceReport:
    """Check that the pairwise objective equals twice the centroid-form value,
    and (on small instances) that both forms pick the same optimal partition.

    ``exhaustive=None`` enables the argmax scan whenever the instance is
    small enough; ``exhaustive=True`` insists and raises if it is not.
    """
    pv = objective_pairwise(X, part, w)
    cv = centroid_form_value(X, part, w)
    denom = max(abs(pv), abs(2.0 * cv))
    rel = abs(pv - 2.0 * cv) / denom if denom > 0 else 0.0

    n_parts = stirling2(X.n, part.K)
    small = n_parts <= EXHAUSTIVE_LIMIT and X.n <= 12
    if exhaustive is None:
        exhaustive = small
    elif exhaustive and not small:
        raise ValueError("instance too large for exhaustive mode")
    if not exhaustive:
        return EquivalenceReport(pv, cv, rel, False)

    best_p = best_c = -np.inf
    lab_p = lab_c = None
    for labels in enumerate_partitions(X.n, part.K):
        cand = Partition(labels=labels, K=part.K)
        vp = objective_pairwise(X, cand, w)
        vc = centroid_form_value(X, cand, w)
        if vp > best_p:
            best_p, lab_p = vp, labels
        if vc > best_c:
            best_c, lab_c = vc, labels
    both_zero = best_p == 0.0 and best_c == 0.0
    ratio = best_p / best_c if best_c != 0.0 else None
    return EquivalenceReport(
        pv,
        cv,
        rel,
        True,
        argmax_agree=bool(np.array_equal(lab_p, lab_c)),
        best_labels_pairwise=lab_p,
        best_labels_centroid=lab_c,
        optimum_ratio=ratio,
        both_optima_zero=both_zero,
    )


# ---------------------------------------------------------------------------
# fitting


@dataclass(frozen=True)
class FitResult:
    theta: Theta
    partition: Partition
    trace: list[float] = field(default_factory=list)
    objective: float = 0.0
    start_index: int = 0
    n_outer: int = 0
    degenerate: bool = False

    @property
    def weights(self) -> WeightVector:
        return self.theta.weights

    @property
    def centers(self) -> CentroidSet:
        return self.theta.structure


def initial_weights(p: int, s: float) -> WeightVector:
    """Symmetric feasible start: 1/sqrt(p) per coordinate when the budget
    allows, otherwise the solver's projection of a flat gain."""
    if np.sqrt(p) <= s:
        return WeightVector(w=np.full(p, 1.0 / np.sqrt(p)), s=s)
    return solve_weights(np.ones(p), s)


def centroid_gains(X: Dataset, labels: np.ndarray, K: int) -> np.ndarray:
    """Pairwise-scale gains via the centroid shortcut (O(np)).

    Equals :func:`bcss_per_feature` by the dispersion identity; used inside
    the fitter where the literal double sum would be quadratic in n.
    """
    vals = X.values
    xbar = vals.mean(axis=0)
    total = ((vals - xbar) ** 2).sum(axis=0)
    within = np.zeros(X.p)
    for k in range(K):
        block = vals[labels == k]
        if block.shape[0]:
            within += ((block - block.mean(axis=0)) ** 2).sum(axis=0)
    return 2.0 * (total - within)


def _repair_empty(vals: np.ndarray, labels: np.ndarray, centers: np.ndarray, w: np.ndarray, K: int) -> np.ndarray:
    """Move the farthest point (from its own center, weighted) into each empty
    cluster; donors must keep at least one member."""
    labels = labels.copy()
    counts = np.bincount(labels, minlength=K)
    if counts.min() >= 1:
        return labels
    diff = vals - centers[labels]
    dist = (diff * diff) @ w
    for k in range(K):
        if counts[k] >= 1:
            continue
        movable = counts[labels] >= 2
        cand = np.where(movable, dist, -np.inf)
        i = int(np.argmax(cand))
        counts[labels[i]] -= 1
        labels[i] = k
        counts[k] += 1
        dist[i] = -np.inf
    return labels


def lloyd(X: Dataset, centers: CentroidSet, w: WeightVector, max_sweeps: int = 100) -> tuple[Partition, CentroidSet]:
    """Weighted Lloyd iteration to a fixed point (or the sweep cap)."""
    vals = X.values
    K = centers.K
    cur = centers.centers
    labels = None
    for _ in range(max_sweeps):
        new_labels = _kernels.assign_labels(vals, cur, w.w)
        new_labels = _repair_empty(vals, new_labels, cur, w.w, K)
        if labels is not None and np.array_equal(new_labels, labels):
            break
        labels = new_labels
        cur = np.stack([vals[labels == k].mean(axis=0) for k in range(K)])
    part = Partition(labels=labels, K=K)
    return part, CentroidSet(centers=cur)


def fit(
    X: Dataset,
    K: int,
    s: float,
    *,
    n_starts: int = 10,
    max_outer: int = 50,
    lloyd_max_sweeps: int = 100,
    tol: float = 1e-8,
    seed: int = 0,
) -> FitResult:
    """Alternating sparse K-means fit.

    Each start seeds centers from distinct data rows, then alternates a
    weighted Lloyd pass (partition step) with the exact linear weight solve
    until the pairwise objective stalls.  The best start by (objective,
    start index) wins, which makes multi-start runs order-independent.
    """
    if K > X.n:
        raise ValueError("K exceeds sample size")
    if K < 1:
        raise ValueError("K must be at least 1")
    if s < 0:
        raise ValueError("sparsity budget s must be nonnegative")

    if np.all(X.values == X.values[0]):
        labels = np.minimum(np.arange(X.n), K - 1)
        part = Partition(labels=labels, K=K)
        theta = Theta(
            weights=WeightVector(w=np.zeros(X.p), s=s),
            structure=update_centroids(X, part),
        )
        return FitResult(theta=theta, partition=part, trace=[0.0], objective=0.0, degenerate=True)

    best: FitResult | None = None
    for start in range(n_starts):
        rng = stream(seed, "fit-start", start)
        rows = rng.choice(X.n, size=K, replace=False)
        centers = CentroidSet(centers=X.values[np.sort(rows)])
        w = initial_weights(X.p, s)

        trace: list[float] = []
        prev = -np.inf
        part = None
        for _ in range(max_outer):
            part, centers = lloyd(X, centers, w, max_sweeps=lloyd_max_sweeps)
            gains = centroid_gains(X, part.labels, K)
            w = solve_weights(gains, s)
            obj = float(w.w @ gains)
            trace.append(obj)
            if obj - prev < tol * max(1.0, abs(obj)):
                break
            prev = obj

        result = FitResult(
            theta=Theta(weights=w, structure=centers),
            partition=part,
            trace=trace,
            objective=trace[-1],
            start_index=start,
            n_outer=len(trace),
        )
        if best is None or result.objective > best.objective:
            best = result
    return best
