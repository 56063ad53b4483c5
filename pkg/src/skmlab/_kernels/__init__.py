"""Kernel backend selection.

The compiled extension is preferred when it imports; otherwise the NumPy
fallback is used.  Set SKMLAB_PURE_PYTHON=1 to force the fallback (useful
for benchmarking and debugging).
"""

import os

import numpy as np

from skmlab._kernels import pure as _pure

if os.environ.get("SKMLAB_PURE_PYTHON"):
    _backend = _pure
    BACKEND = "pure"
else:
    try:
        from skmlab._kernels import _speedups as _backend

        BACKEND = "compiled"
    except ImportError:
        _backend = _pure
        BACKEND = "pure"


def _c2d(a):
    return np.ascontiguousarray(a, dtype=np.float64)


def assign_labels(X, centers, w) -> np.ndarray:
    """Weighted nearest-center label per row (ties to the lowest index)."""
    return _backend.assign_labels(_c2d(X), _c2d(centers), np.ascontiguousarray(w, dtype=np.float64).reshape(-1))


def pairwise_feature_gains(X, labels, K: int) -> np.ndarray:
    """Per-feature pairwise dispersion gains from raw points."""
    return _backend.pairwise_feature_gains(_c2d(X), np.ascontiguousarray(labels, dtype=np.int64), int(K))


def tensor_gains(D, labels, K: int) -> np.ndarray:
    """Per-feature pairwise dispersion gains from a dissimilarity tensor."""
    return _backend.tensor_gains(
        np.ascontiguousarray(D, dtype=np.float64), np.ascontiguousarray(labels, dtype=np.int64), int(K)
    )
