import numpy as np
import pytest

from skmlab.core import Dataset, Partition, WeightVector
from skmlab.rng import stream


@pytest.fixture
def rng():
    return stream(20240817, "tests")


def random_instance(rng, n_hi=20, p_hi=5, K_hi=3):
    """Random (Dataset, Partition, WeightVector) triple with nonempty clusters."""
    K = int(rng.integers(1, K_hi + 1))
    n = int(rng.integers(max(K, 2), n_hi + 1))
    p = int(rng.integers(1, p_hi + 1))
    X = Dataset(values=rng.uniform(-1.0, 1.0, size=(n, p)))
    perm = rng.permutation(n)
    labels = np.empty(n, dtype=np.int64)
    labels[perm[:K]] = np.arange(K)
    labels[perm[K:]] = rng.integers(0, K, size=n - K)
    s = float(rng.uniform(0.8, 2.0))
    v = np.abs(rng.standard_normal(p))
    w = v / np.linalg.norm(v)
    if w.sum() > s:
        w = w * (s / w.sum())
    return X, Partition(labels=labels, K=K), WeightVector(w=w, s=s)
