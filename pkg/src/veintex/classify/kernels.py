"""SVM kernels: Gaussian RBF and inhomogeneous polynomial."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

DEFAULT_DEGREE = 3
DEFAULT_COEF = 1.0


@dataclass(frozen=True)
class KernelSpec:
    """kind 'rbf' needs sigma > 0; kind 'polynomial' needs degree >= 1, coef >= 0."""

    kind: str
    sigma: Optional[float] = None
    degree: Optional[int] = None
    coef: Optional[float] = None

    def __post_init__(self):
        if self.kind == "rbf":
            if self.sigma is None or not self.sigma > 0:
                raise ValueError("rbf kernel requires sigma > 0")
        elif self.kind == "polynomial":
            degree = DEFAULT_DEGREE if self.degree is None else self.degree
            coef = DEFAULT_COEF if self.coef is None else float(self.coef)
            if not isinstance(degree, (int, np.integer)) or degree < 1:
                raise ValueError("polynomial kernel requires integer degree >= 1")
            if coef < 0:
                raise ValueError("polynomial offset must be >= 0")
            object.__setattr__(self, "degree", int(degree))
            object.__setattr__(self, "coef", coef)
        else:
            raise ValueError(f"unknown kernel kind {self.kind!r}")


def gram_matrix(a, b, spec: KernelSpec) -> np.ndarray:
    """Kernel matrix K[i,j] = k(a_i, b_j)."""
    A = np.asarray(a, dtype=np.float64)
    B = np.asarray(b, dtype=np.float64)
    if A.ndim == 1:
        A = A[None, :]
    if B.ndim == 1:
        B = B[None, :]
    if A.shape[1] != B.shape[1]:
        raise ValueError(f"dimension mismatch: {A.shape[1]} vs {B.shape[1]}")
    if spec.kind == "rbf":
        diff = A[:, None, :] - B[None, :, :]
        sq = (diff**2).sum(axis=-1)
        return np.exp(-sq / (2.0 * spec.sigma**2))
    return (A @ B.T + spec.coef) ** spec.degree


def kernel_eval(x, y, spec: KernelSpec) -> float:
    """k(x, y) for a single pair."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.ndim != 1 or y.ndim != 1:
        raise ValueError("kernel_eval expects 1-D vectors")
    return float(gram_matrix(x[None, :], y[None, :], spec)[0, 0])
