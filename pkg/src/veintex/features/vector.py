"""The feature-vector currency passed between descriptors, fusion, classifiers."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DESCRIPTOR_TAGS = ("LBP", "LPQ", "LOGGABOR", "HAAR", "DB8", "FUSED")


@dataclass(frozen=True)
class FeatureVector:
    descriptor: str
    values: np.ndarray

    def __post_init__(self):
        if self.descriptor not in DESCRIPTOR_TAGS:
            raise ValueError(f"unknown descriptor tag {self.descriptor!r}")
        arr = np.asarray(self.values, dtype=np.float64)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("feature values must be a nonempty 1-D vector")
        if not np.all(np.isfinite(arr)):
            raise ValueError("feature values must be finite")
        object.__setattr__(self, "values", arr)

    @property
    def dim(self) -> int:
        return self.values.size
