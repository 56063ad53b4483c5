# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: weighted nearest-center assignment and the per-feature
pairwise dispersion gains (point form and tensor form)."""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def assign_labels(double[:, ::1] X, double[:, ::1] centers, double[::1] w):
    cdef Py_ssize_t n = X.shape[0]
    cdef Py_ssize_t p = X.shape[1]
    cdef Py_ssize_t K = centers.shape[0]
    out = np.zeros(n, dtype=np.int64)
    cdef cnp.int64_t[::1] labels = out
    cdef Py_ssize_t i, j, k, best
    cdef double dist, diff, best_dist
    with nogil:
        for i in range(n):
            best = 0
            best_dist = 0.0
            for k in range(K):
                dist = 0.0
                for j in range(p):
                    diff = X[i, j] - centers[k, j]
                    dist += w[j] * diff * diff
                if k == 0 or dist < best_dist:
                    best_dist = dist
                    best = k
            labels[i] = best
    return out


def pairwise_feature_gains(double[:, ::1] X, cnp.int64_t[::1] labels, Py_ssize_t K):
    cdef Py_ssize_t n = X.shape[0]
    cdef Py_ssize_t p = X.shape[1]
    counts_arr = np.zeros(K, dtype=np.int64)
    gains_arr = np.zeros(p, dtype=np.float64)
    within_arr = np.zeros(K, dtype=np.float64)
    cdef cnp.int64_t[::1] counts = counts_arr
    cdef double[::1] gains = gains_arr
    cdef double[::1] within = within_arr
    cdef Py_ssize_t i, i2, j, k
    cdef double total, diff, sq, acc
    with nogil:
        for i in range(n):
            counts[labels[i]] += 1
        for j in range(p):
            total = 0.0
            for k in range(K):
                within[k] = 0.0
            for i in range(n):
                for i2 in range(n):
                    diff = X[i, j] - X[i2, j]
                    sq = diff * diff
                    total += sq
                    if labels[i] == labels[i2]:
                        within[labels[i]] += sq
            acc = 0.0
            for k in range(K):
                if counts[k] > 0:
                    acc += within[k] / counts[k]
            gains[j] = total / n - acc
    return gains_arr


def tensor_gains(double[:, :, ::1] D, cnp.int64_t[::1] labels, Py_ssize_t K):
    cdef Py_ssize_t n = D.shape[0]
    cdef Py_ssize_t p = D.shape[2]
    counts_arr = np.zeros(K, dtype=np.int64)
    gains_arr = np.zeros(p, dtype=np.float64)
    within_arr = np.zeros(K, dtype=np.float64)
    cdef cnp.int64_t[::1] counts = counts_arr
    cdef double[::1] gains = gains_arr
    cdef double[::1] within = within_arr
    cdef Py_ssize_t i, i2, j, k
    cdef double total, sq, acc
    with nogil:
        for i in range(n):
            counts[labels[i]] += 1
        for j in range(p):
            total = 0.0
            for k in range(K):
                within[k] = 0.0
            for i in range(n):
                for i2 in range(n):
                    sq = D[i, i2, j]
                    total += sq
                    if labels[i] == labels[i2]:
                        within[labels[i]] += sq
            acc = 0.0
            for k in range(K):
                if counts[k] > 0:
                    acc += within[k] / counts[k]
            gains[j] = total / n - acc
    return gains_arr
