"""Partition-based sparse K-means over an arbitrary per-feature
dissimilarity tensor.

No centroid shortcut exists here, so the partition step is a
best-improvement single-point relocation local search, and a brute-force
enumeration oracle provides ground truth at desk scale.  Risk is the negated
objective, scaled by 1/(n-1) so the pair averages match their population
counterparts.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from skmlab import _kernels
from skmlab.core import Dataset, DissimilarityTensor, Partition, Theta, WeightVector
from skmlab.euclid import initial_weights
from skmlab.partitions import canonical_labels, enumerate_partitions, stirling2
from skmlab.rng import stream
from skmlab.weights import random_feasible_w, solve_weights

ORACLE_LIMIT = 10**6


def squared_diff_tensor(X: Dataset) -> DissimilarityTensor:
    """Per-feature squared coordinate differences of a dataset."""
    vals = X.values
    d = (vals[:, None, :] - vals[None, :, :]) ** 2
    return DissimilarityTensor(d=d, bound_M=float(d.max(initial=0.0)))


def gains_general(D: DissimilarityTensor, part: Partition) -> np.ndarray:
    """Per-feature pairwise dispersion gains of a partition of the tensor."""
    if part.n != D.n:
        raise ValueError("partition size does not match tensor")
    return _kernels.tensor_gains(D.d, part.labels, part.K)


def objective_general(D: DissimilarityTensor, part: Partition, w: WeightVector) -> float:
    """Weighted pairwise between-cluster dispersion from the tensor."""
    if w.p != D.p:
        raise ValueError("weight dimension does not match tensor")
    return float(w.w @ gains_general(D, part))


def empirical_risk_general(D: DissimilarityTensor, part: Partition, w: WeightVector) -> float:
    """Scaled empirical risk: the negated objective divided by (n - 1),
    computed from the off-diagonal double sums directly."""
    n = D.n
    if n < 2:
        raise ValueError("need at least two items")
    if part.n != n:
        raise ValueError("partition size does not match tensor")
    counts = part.counts
    total = 0.0
    for j in range(D.p):
        sq = D.d[:, :, j]
        offdiag = sq.sum() - np.trace(sq)
        within = 0.0
        for k in range(part.K):
            idx = part.members(k)
            within += sq[np.ix_(idx, idx)].sum() / counts[k]
        total += w.w[j] * (offdiag / n - within)
    return -total / (n - 1)


# ---------------------------------------------------------------------------
# exhaustive oracles


def exhaustive_partition_oracle(D: DissimilarityTensor, w: WeightVector, K: int) -> tuple[Partition, float]:
    """Globally optimal partition at fixed weights, by full enumeration.

    Deterministic: the first optimum in canonical enumeration order wins.
    """
    n = D.n
    if stirling2(n, K) > ORACLE_LIMIT:
        raise ValueError("instance too large for exhaustive enumeration")
    dw = D.d @ w.w
    grand = dw.sum() / n
    best_val = -np.inf
    best_labels = None
    for labels in enumerate_partitions(n, K):
        within = 0.0
        for k in range(K):
            idx = labels == k
            within += dw[np.ix_(idx, idx)].sum() / idx.sum()
        val = grand - within
        if val > best_val:
            best_val = val
            best_labels = labels
    return Partition(labels=best_labels, K=K), float(best_val)


def exhaustive_joint_oracle(D: DissimilarityTensor, s: float, K: int) -> tuple[Partition, WeightVector, float]:
    """Global optimum over partitions with the weight step solved exactly for
    each candidate partition."""
    n = D.n
    if stirling2(n, K) > ORACLE_LIMIT:
        raise ValueError("instance too large for exhaustive enumeration")
    best_val = -np.inf
    best_labels = None
    best_w = None
    for labels in enumerate_partitions(n, K):
        part = Partition(labels=labels, K=K)
        gains = gains_general(D, part)
        w = solve_weights(gains, s)
        val = float(w.w @ gains)
        if val > best_val:
            best_val, best_labels, best_w = val, labels, w
    return Partition(labels=best_labels, K=K), best_w, float(best_val)


# ---------------------------------------------------------------------------
# local search


def _local_search(dw: np.ndarray, labels: np.ndarray, K: int, max_moves: int = 100000) -> np.ndarray:
    """Best-improvement single-point relocation on the within-cluster term.

    dw is the weight-collapsed dissimilarity matrix.  Moves that would empty
    a cluster are forbidden; only strict improvements are accepted, so the
    search terminates.
    """
    n = dw.shape[0]
    labels = labels.copy()
    counts = np.bincount(labels, minlength=K).astype(np.int64)
    onehot = np.zeros((n, K))
    onehot[np.arange(n), labels] = 1.0
    rowsum = dw @ onehot  # rowsum[i, k] = sum of dw[i, C_k]
    S = np.array([rowsum[labels == k, k].sum() for k in range(K)])
    scale = max(1.0, float(np.abs(dw).sum()))
    eps = 1e-12 * scale

    for _ in range(max_moves):
        src = labels
        src_count = counts[src]
        old_src = S[src] / src_count
        with np.errstate(divide="ignore", invalid="ignore"):
            new_src = (S[src] - 2.0 * rowsum[np.arange(n), src]) / (src_count - 1)
        new_src = np.where(src_count > 1, new_src, np.inf)
        delta_src = new_src - old_src

        old_dst = S / counts
        new_dst = (S[None, :] + 2.0 * rowsum) / (counts[None, :] + 1)
        delta = delta_src[:, None] + (new_dst - old_dst[None, :])
        delta[np.arange(n), src] = np.inf

        flat = int(np.argmin(delta))
        i, dst = divmod(flat, K)
        if not delta[i, dst] < -eps:
            break
        s_lab = labels[i]
        S[s_lab] -= 2.0 * rowsum[i, s_lab]
        S[dst] += 2.0 * rowsum[i, dst]
        counts[s_lab] -= 1
        counts[dst] += 1
        labels[i] = dst
        rowsum[:, s_lab] -= dw[:, i]
        rowsum[:, dst] += dw[:, i]
    return labels


@dataclass(frozen=True)
class GeneralFitResult:
    theta: Theta
    trace: list[float] = field(default_factory=list)
    objective: float = 0.0
    start_index: int = 0

    @property
    def partition(self) -> Partition:
        return self.theta.structure

    @property
    def weights(self) -> WeightVector:
        return self.theta.weights


def _seed_partition(n: int, K: int, rng: np.random.Generator) -> np.ndarray:
    perm = rng.permutation(n)
    labels = np.empty(n, dtype=np.int64)
    labels[perm[:K]] = np.arange(K)
    labels[perm[K:]] = rng.integers(0, K, size=n - K)
    return labels


def fit_general(
    D: DissimilarityTensor,
    K: int,
    s: float,
    *,
    n_starts: int = 20,
    max_iter: int = 50,
    tol: float = 1e-8,
    seed: int = 0,
) -> GeneralFitResult:
    """Alternating fit over the tensor: exact weight solve, then relocation
    local search on the partition, until the objective stalls.  Best of
    ``n_starts`` seeded starts by (objective, start index)."""
    n = D.n
    if K > n:
        raise ValueError("K exceeds sample size")
    if K < 1:
        raise ValueError("K must be at least 1")

    best: GeneralFitResult | None = None
    for start in range(n_starts):
        rng = stream(seed, "fit-general-start", start)
        labels = _seed_partition(n, K, rng)
        # odd starts draw a random feasible weight so the joint trajectories
        # explore different basins; even starts keep the symmetric one
        w = initial_weights(D.p, s) if start % 2 == 0 else random_feasible_w(D.p, s, rng)

        trace: list[float] = []
        prev = -np.inf
        for _ in range(max_iter):
            dw = D.d @ w.w
            labels = _local_search(dw, labels, K)
            part = Partition(labels=labels, K=K)
            gains = gains_general(D, part)
            w = solve_weights(gains, s)
            obj = float(w.w @ gains)
            trace.append(obj)
            if obj - prev < tol * max(1.0, abs(obj)):
                break
            prev = obj

        result = GeneralFitResult(
            theta=Theta(weights=w, structure=Partition(labels=labels, K=K)),
            trace=trace,
            objective=trace[-1],
            start_index=start,
        )
        if best is None or result.objective > best.objective:
            best = result
    return best


def voronoi_partition_family(X: Dataset, K: int, n_candidates: int, seed: int) -> list[Partition]:
    """Distinct partitions induced by nearest-center assignment for seeded
    draws of K data rows as centers (plain Euclidean metric)."""
    rng = stream(seed, "voronoi-family")
    ones = np.ones(X.p)
    seen: set[bytes] = set()
    family: list[Partition] = []
    for _ in range(n_candidates):
        rows = rng.choice(X.n, size=K, replace=False)
        labels = _kernels.assign_labels(X.values, X.values[np.sort(rows)], ones)
        counts = np.bincount(labels, minlength=K)
        if counts.min() < 1:
            continue
        labels = canonical_labels(labels)
        key = labels.tobytes()
        if key in seen:
            continue
        seen.add(key)
        family.append(Partition(labels=labels, K=K))
    return family
