#!/usr/bin/env python3
"""Benchmark the compiled kernels against the NumPy fallback.

Run from the repo root:

    python3 benchmarks/bench_kernels.py

The compiled extension must be built (pip install -e . does it); the pure
path is always available.
"""

import time

import numpy as np

from skmlab._kernels import pure

try:
    from skmlab._kernels import _speedups as compiled
except ImportError:
    compiled = None


def timeit(fn, *args, repeats=5):
    best = np.inf
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def bench(name, pure_fn, fast_fn, args, check=np.allclose):
    t_pure, out_pure = timeit(pure_fn, *args)
    line = f"{name:28s} pure {t_pure * 1e3:9.2f} ms"
    if fast_fn is not None:
        t_fast, out_fast = timeit(fast_fn, *args)
        ok = check(out_pure, out_fast)
        line += f"   compiled {t_fast * 1e3:9.2f} ms   speedup {t_pure / t_fast:6.1f}x   agree={ok}"
    print(line)


def main():
    rng = np.random.default_rng(0)
    print(f"compiled extension available: {compiled is not None}\n")

    # Lloyd assignment sweep at large n
    n, p, K = 1_000_000, 5, 2
    X = np.ascontiguousarray(rng.uniform(-1, 1, size=(n, p)))
    centers = np.ascontiguousarray(rng.uniform(-1, 1, size=(K, p)))
    w = np.full(p, 1.0 / np.sqrt(p))
    bench(
        f"assign n={n} p={p} K={K}",
        pure.assign_labels,
        compiled.assign_labels if compiled else None,
        (X, centers, w),
        check=np.array_equal,
    )

    # pairwise gains at desk scale
    n2 = 400
    X2 = np.ascontiguousarray(rng.uniform(-1, 1, size=(n2, p)))
    labels = rng.integers(0, K, size=n2).astype(np.int64)
    bench(
        f"pairwise gains n={n2} p={p}",
        pure.pairwise_feature_gains,
        compiled.pairwise_feature_gains if compiled else None,
        (X2, labels, K),
    )

    # tensor gains at desk scale
    d = (X2[:, None, :] - X2[None, :, :]) ** 2
    d = np.ascontiguousarray(d)
    bench(
        f"tensor gains n={n2} p={p}",
        pure.tensor_gains,
        compiled.tensor_gains if compiled else None,
        (d, labels, K),
    )


if __name__ == "__main__":
    main()
