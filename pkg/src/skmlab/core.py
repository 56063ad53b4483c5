"""Domain types and the metrics used throughout the package.

All containers are plain dataclasses around NumPy arrays.  They validate
their invariants on construction and are never mutated afterwards, so values
can be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial.distance import cdist

#: Slack allowed when checking weight-vector feasibility.  Bisection output
#: cannot hit the constraint surface exactly in floating point.
TOL_FEAS = 1e-9


def _as_float_matrix(values) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D array, got shape {arr.shape}")
    return arr


@dataclass(frozen=True)
class Dataset:
    """An n-by-p data matrix with an optional declared coordinate bound.

    ``bound_M=None`` means the bound is unknown (e.g. Gaussian draws); the
    closed-form bound evaluators refuse such datasets.
    """

    values: np.ndarray
    bound_M: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "values", _as_float_matrix(self.values))
        if not np.all(np.isfinite(self.values)):
            raise ValueError("dataset contains non-finite entries")
        if self.bound_M is not None:
            m = float(self.bound_M)
            if m < 0:
                raise ValueError("bound_M must be nonnegative")
            if np.abs(self.values).max(initial=0.0) > m + 1e-12:
                raise ValueError("dataset entries exceed the declared bound_M")
            object.__setattr__(self, "bound_M", m)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def p(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True)
class WeightVector:
    """A feature-weight vector inside the feasible set
    {w >= 0, ||w||_2^2 <= 1, ||w||_1 <= s}."""

    w: np.ndarray
    s: float

    def __post_init__(self):
        w = np.asarray(self.w, dtype=float).reshape(-1)
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "s", float(self.s))
        if self.s < 0:
            raise ValueError("sparsity budget s must be nonnegative")
        if not np.all(np.isfinite(w)):
            raise ValueError("weights must be finite")
        if w.min(initial=0.0) < -TOL_FEAS:
            raise ValueError("weights must be nonnegative")
        if w @ w > 1.0 + TOL_FEAS:
            raise ValueError("||w||_2^2 exceeds 1")
        if np.abs(w).sum() > self.s + TOL_FEAS:
            raise ValueError("||w||_1 exceeds the budget s")

    @property
    def p(self) -> int:
        return self.w.shape[0]

    def support(self, atol: float = 0.0) -> np.ndarray:
        return np.flatnonzero(self.w > atol)


@dataclass(frozen=True)
class CentroidSet:
    """An ordered list of K cluster centers in R^p.

    The ordering is kept for deterministic iteration; set semantics apply
    only when computing Hausdorff distances or reporting.  Exact duplicate
    centers are legal during iteration and flagged via ``degenerate``.
    """

    centers: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "centers", _as_float_matrix(self.centers))
        if self.centers.shape[0] < 1:
            raise ValueError("need at least one center")
        if not np.all(np.isfinite(self.centers)):
            raise ValueError("centers must be finite")

    @property
    def K(self) -> int:
        return self.centers.shape[0]

    @property
    def p(self) -> int:
        return self.centers.shape[1]

    @property
    def degenerate(self) -> bool:
        """True when two stored centers coincide exactly."""
        uniq = np.unique(self.centers, axis=0)
        return uniq.shape[0] < self.centers.shape[0]


@dataclass(frozen=True)
class Partition:
    """An assignment of n items to K nonempty clusters.

    Labels are 0-based (0..K-1) in memory; file formats use 1-based ids.
    """

    labels: np.ndarray
    K: int

    def __post_init__(self):
        labels = np.asarray(self.labels, dtype=np.int64).reshape(-1)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "K", int(self.K))
        if self.K < 1:
            raise ValueError("K must be at least 1")
        if labels.size == 0:
            raise ValueError("partition of an empty index set")
        if labels.min() < 0 or labels.max() >= self.K:
            raise ValueError("cluster label out of range")
        counts = np.bincount(labels, minlength=self.K)
        if counts.min() < 1:
            raise ValueError("every cluster must be nonempty")

    @property
    def n(self) -> int:
        return self.labels.shape[0]

    @property
    def counts(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.K)

    def members(self, k: int) -> np.ndarray:
        return np.flatnonzero(self.labels == k)


@dataclass(frozen=True)
class DissimilarityTensor:
    """Per-feature pairwise dissimilarities d[i, i', j].

    Symmetric in (i, i'), zero on the diagonal, entries in [0, bound_M].
    Stored dense; intended for desk-scale n.
    """

    d: np.ndarray
    bound_M: float

    def __post_init__(self):
        d = np.asarray(self.d, dtype=float)
        if d.ndim != 3 or d.shape[0] != d.shape[1]:
            raise ValueError(f"expected an (n, n, p) tensor, got shape {d.shape}")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "bound_M", float(self.bound_M))
        if self.bound_M < 0:
            raise ValueError("bound_M must be nonnegative")
        if not np.all(np.isfinite(d)):
            raise ValueError("tensor contains non-finite entries")
        diag = np.einsum("iij->ij", d)
        if np.abs(diag).max(initial=0.0) > 0.0:
            raise ValueError("tensor diagonal must be exactly zero")
        if not np.array_equal(d, d.transpose(1, 0, 2)):
            raise ValueError("tensor must be symmetric in (i, i')")
        if d.min(initial=0.0) < 0.0 or d.max(initial=0.0) > self.bound_M + 1e-12:
            raise ValueError("tensor entries must lie in [0, bound_M]")

    @property
    def n(self) -> int:
        return self.d.shape[0]

    @property
    def p(self) -> int:
        return self.d.shape[2]


@dataclass(frozen=True)
class Theta:
    """A weight vector paired with either a centroid set (Euclidean mode)
    or a partition (general-distance mode)."""

    weights: WeightVector
    structure: CentroidSet | Partition = field()

    @property
    def mode(self) -> str:
        return "euclidean" if isinstance(self.structure, CentroidSet) else "general"


# ---------------------------------------------------------------------------
# metrics


def weighted_sqdist(x, y, w: WeightVector | np.ndarray) -> float:
    """sum_j w_j (x_j - y_j)^2."""
    x = np.asarray(x, dtype=float).reshape(-1)
    y = np.asarray(y, dtype=float).reshape(-1)
    wv = w.w if isinstance(w, WeightVector) else np.asarray(w, dtype=float).reshape(-1)
    if x.shape != y.shape or x.shape != wv.shape:
        raise ValueError("dimension mismatch between points and weights")
    diff = x - y
    return float(wv @ (diff * diff))


def _scaled_points(pts: np.ndarray, w) -> np.ndarray:
    """Map points so plain Euclidean distance equals the w-weighted metric."""
    pts = _as_float_matrix(pts)
    if w is None:
        return pts
    wv = w.w if isinstance(w, WeightVector) else np.asarray(w, dtype=float).reshape(-1)
    if wv.shape[0] != pts.shape[1]:
        raise ValueError("weight dimension does not match point dimension")
    return pts * np.sqrt(wv)


def hausdorff_directed(A, B, w=None) -> float:
    """sup over a in A of the distance from a to the set B."""
    A = _scaled_points(A, w)
    B = _scaled_points(B, w)
    if A.shape[0] == 0 or B.shape[0] == 0:
        raise ValueError("Hausdorff distance needs nonempty sets")
    return float(cdist(A, B).min(axis=1).max())


def hausdorff(A, B, w=None) -> float:
    """Hausdorff distance between two finite point sets.

    Unweighted Euclidean by default; pass ``w`` for the weighted variant
    (diagnostics only).
    """
    A = _scaled_points(A, w)
    B = _scaled_points(B, w)
    if A.shape[0] == 0 or B.shape[0] == 0:
        raise ValueError("Hausdorff distance needs nonempty sets")
    dm = cdist(A, B)
    return float(max(dm.min(axis=1).max(), dm.min(axis=0).max()))


def theta_distance(t1: Theta, t2: Theta) -> float:
    """max of the Euclidean weight distance and the (unweighted) Hausdorff
    distance between the two centroid sets."""
    if t1.mode != "euclidean" or t2.mode != "euclidean":
        raise ValueError("theta_distance requires Euclidean-mode thetas")
    if t1.weights.p != t2.weights.p:
        raise ValueError("dimension mismatch")
    dw = float(np.linalg.norm(t1.weights.w - t2.weights.w))
    dh = hausdorff(t1.structure.centers, t2.structure.centers)
    return max(dw, dh)
