"""The four KNN distance metrics.

Single-pair distance() routes through the batched pairwise kernel. For
euclidean/cityblock the floats are identical however callers batch; for
cosine/correlation the dot products go through BLAS, whose summation
order depends on operand shape, so values can differ by an ulp between
batch shapes. Rankings therefore always come from one pairwise call.
"""

from __future__ import annotations

import numpy as np

from ..errors import DegenerateInputError

METRICS = ("euclidean", "cityblock", "cosine", "correlation")


def _as_matrix(a) -> np.ndarray:
    arr = np.asarray(a, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.ndim != 2 or arr.shape[1] < 1:
        raise ValueError("expected vectors of dimension >= 1")
    return arr


def pairwise_distances(a, b, metric: str) -> np.ndarray:
    """Distance matrix of shape (len(a), len(b))."""
    A = _as_matrix(a)
    B = _as_matrix(b)
    if A.shape[1] != B.shape[1]:
        raise ValueError(f"dimension mismatch: {A.shape[1]} vs {B.shape[1]}")

    if metric == "euclidean":
        diff = A[:, None, :] - B[None, :, :]
        return np.sqrt((diff**2).sum(axis=-1))
    if metric == "cityblock":
        diff = A[:, None, :] - B[None, :, :]
        return np.abs(diff).sum(axis=-1)
    if metric == "cosine":
        return _cosine_like(A, B, center=False)
    if metric == "correlation":
        if A.shape[1] < 2:
            raise ValueError("correlation distance needs dimension >= 2")
        return _cosine_like(A, B, center=True)
    raise ValueError(f"unknown metric {metric!r} (expected one of {METRICS})")


def _cosine_like(A: np.ndarray, B: np.ndarray, center: bool) -> np.ndarray:
    if center:
        A = A - A.mean(axis=1, keepdims=True)
        B = B - B.mean(axis=1, keepdims=True)
        what = "constant vector (correlation undefined)"
    else:
        what = "zero vector (cosine undefined)"
    na = np.sqrt((A**2).sum(axis=1))
    nb = np.sqrt((B**2).sum(axis=1))
    if np.any(na == 0.0) or np.any(nb == 0.0):
        raise DegenerateInputError(what)
    sim = (A @ B.T) / np.outer(na, nb)
    return np.clip(1.0 - sim, 0.0, 2.0)


def distance(x, y, metric: str) -> float:
    """Distance between two vectors under the named metric."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.ndim != 1 or y.ndim != 1:
        raise ValueError("distance expects 1-D vectors")
    return float(pairwise_distances(x[None, :], y[None, :], metric)[0, 0])
