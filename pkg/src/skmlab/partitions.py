"""Enumeration helpers for set partitions into exactly K nonempty clusters."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

import numpy as np


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    """Number of partitions of n items into exactly k nonempty clusters."""
    if k < 0 or k > n:
        return 0
    if n == 0:
        return 1 if k == 0 else 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def enumerate_partitions(n: int, K: int) -> Iterator[np.ndarray]:
    """Yield every partition of range(n) into exactly K nonempty clusters.

    Labels come out in restricted-growth form (item 0 has label 0, each new
    label is the smallest unused one), which is the canonical representative
    of the partition, and enumeration order is lexicographic in that form.
    """
    if K < 1 or K > n:
        return
    labels = np.zeros(n, dtype=np.int64)

    def rec(i: int, used: int):
        if i == n:
            if used == K:
                yield labels.copy()
            return
        # pruning: remaining items must be able to open the missing labels
        if used + (n - i) < K:
            return
        for lab in range(min(used + 1, K)):
            labels[i] = lab
            yield from rec(i + 1, used + (1 if lab == used else 0))

    yield from rec(1, 1)


def canonical_labels(labels: np.ndarray) -> np.ndarray:
    """Relabel clusters in order of first appearance (restricted-growth form)."""
    labels = np.asarray(labels, dtype=np.int64)
    mapping: dict[int, int] = {}
    out = np.empty_like(labels)
    for i, lab in enumerate(labels):
        lab = int(lab)
        if lab not in mapping:
            mapping[lab] = len(mapping)
        out[i] = mapping[lab]
    return out
