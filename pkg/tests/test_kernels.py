"""Backend parity: the compiled kernels and the NumPy fallback must agree."""

import numpy as np
import pytest

from skmlab import _kernels
from skmlab._kernels import pure
from skmlab.rng import stream

try:
    from skmlab._kernels import _speedups as compiled
except ImportError:
    compiled = None

needs_compiled = pytest.mark.skipif(compiled is None, reason="compiled extension not built")


def _case(seed, n=60, p=4, K=3):
    rng = stream(seed, "kernel-case")
    X = np.ascontiguousarray(rng.uniform(-2, 2, size=(n, p)))
    centers = np.ascontiguousarray(rng.uniform(-2, 2, size=(K, p)))
    w = np.abs(rng.standard_normal(p))
    w /= np.linalg.norm(w)
    labels = rng.integers(0, K, size=n).astype(np.int64)
    labels[:K] = np.arange(K)
    return X, centers, w, labels


@needs_compiled
def test_assign_labels_parity():
    for seed in range(5):
        X, centers, w, _ = _case(seed)
        assert np.array_equal(compiled.assign_labels(X, centers, w), pure.assign_labels(X, centers, w))


@needs_compiled
def test_gain_kernels_parity():
    for seed in range(5):
        X, _, _, labels = _case(seed)
        K = int(labels.max()) + 1
        a = compiled.pairwise_feature_gains(X, labels, K)
        b = pure.pairwise_feature_gains(X, labels, K)
        assert np.allclose(a, b, rtol=1e-12, atol=1e-12)
        D = np.ascontiguousarray((X[:, None, :] - X[None, :, :]) ** 2)
        ta = compiled.tensor_gains(D, labels, K)
        tb = pure.tensor_gains(D, labels, K)
        assert np.allclose(ta, tb, rtol=1e-12, atol=1e-12)


def test_assign_tie_breaks_to_lowest_index():
    X = np.array([[0.5, 0.0]])
    centers = np.array([[0.0, 0.0], [1.0, 0.0]])
    w = np.array([1.0, 1.0])
    assert _kernels.assign_labels(X, centers, w)[0] == 0


def test_assign_zero_weights_all_first_cluster():
    rng = stream(3, "zero-w")
    X = rng.uniform(size=(20, 3))
    centers = X[:4].copy()
    labels = _kernels.assign_labels(X, centers, np.zeros(3))
    assert np.array_equal(labels, np.zeros(20, dtype=np.int64))


def test_pairwise_gains_against_double_loop():
    rng = stream(7, "gains-oracle")
    X = rng.uniform(-1, 1, size=(12, 3))
    labels = np.array([0, 1, 0, 1, 1, 0, 0, 1, 0, 1, 1, 0], dtype=np.int64)
    n, p = X.shape
    expected = np.zeros(p)
    for j in range(p):
        total = sum((X[i, j] - X[i2, j]) ** 2 for i in range(n) for i2 in range(n))
        within = 0.0
        for k in range(2):
            members = [i for i in range(n) if labels[i] == k]
            within += sum((X[i, j] - X[i2, j]) ** 2 for i in members for i2 in members) / len(members)
        expected[j] = total / n - within
    got = _kernels.pairwise_feature_gains(X, labels, 2)
    assert np.allclose(got, expected, rtol=1e-12)


def test_backend_name_exposed():
    assert _kernels.BACKEND in ("compiled", "pure")
