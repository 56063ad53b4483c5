"""NumPy implementations of the hot kernels.

Used whenever the compiled extension is unavailable (or when
SKMLAB_PURE_PYTHON is set).  Semantics match `_speedups` exactly; only speed
differs.
"""

import numpy as np


def assign_labels(X, centers, w):
    """Index of the weighted-nearest center per row; ties to the lowest index."""
    n = X.shape[0]
    best_dist = np.full(n, np.inf)
    labels = np.zeros(n, dtype=np.int64)
    for k in range(centers.shape[0]):
        diff = X - centers[k]
        dist = (diff * diff) @ w
        better = dist < best_dist
        labels[better] = k
        np.minimum(best_dist, dist, out=best_dist)
    return labels


def pairwise_feature_gains(X, labels, K):
    """Per-feature pairwise dispersion gain of a partition.

    gain_j = (1/n) sum_{i,i'} (x_ij - x_i'j)^2
             - sum_k (1/n_k) sum_{i,i' in C_k} (x_ij - x_i'j)^2
    computed from the literal double sums.
    """
    n, p = X.shape
    counts = np.bincount(labels, minlength=K)
    gains = np.zeros(p)
    members = [np.flatnonzero(labels == k) for k in range(K)]
    for j in range(p):
        col = X[:, j]
        sq = (col[:, None] - col[None, :]) ** 2
        total = sq.sum()
        within = 0.0
        for k in range(K):
            if counts[k] == 0:
                continue
            idx = members[k]
            within += sq[np.ix_(idx, idx)].sum() / counts[k]
        gains[j] = total / n - within
    return gains


def tensor_gains(D, labels, K):
    """Same gain as `pairwise_feature_gains`, from a dissimilarity tensor."""
    n = D.shape[0]
    counts = np.bincount(labels, minlength=K)
    members = [np.flatnonzero(labels == k) for k in range(K)]
    gains = np.zeros(D.shape[2])
    for j in range(D.shape[2]):
        sq = D[:, :, j]
        total = sq.sum()
        within = 0.0
        for k in range(K):
            if counts[k] == 0:
                continue
            idx = members[k]
            within += sq[np.ix_(idx, idx)].sum() / counts[k]
        gains[j] = total / n - within
    return gains
