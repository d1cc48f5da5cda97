"""Feature-level fusion: per-descriptor z-score normalization, then concatenation.

Normalization statistics are always fit on training vectors only and then
applied unchanged to both sides of the split; fitting on test data would
leak protocol information.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .canonjson import read_json, write_canonical
from .features.vector import FeatureVector


@dataclass(frozen=True)
class ZScoreParams:
    """Per-dimension mean/std (divisor N-1); dropped marks sigma == 0 dims."""

    mu: np.ndarray
    sigma: np.ndarray
    dropped: tuple[int, ...]

    def __post_init__(self):
        mu = np.asarray(self.mu, dtype=np.float64)
        sigma = np.asarray(self.sigma, dtype=np.float64)
        if mu.shape != sigma.shape or mu.ndim != 1:
            raise ValueError("mu and sigma must be 1-D with equal length")
        if np.any(sigma < 0):
            raise ValueError("sigma entries must be >= 0")
        if tuple(np.flatnonzero(sigma == 0.0)) != tuple(self.dropped):
            raise ValueError("dropped must list exactly the zero-sigma indices")
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "dropped", tuple(int(i) for i in self.dropped))

    @property
    def dim(self) -> int:
        return self.mu.size


def _rows(train) -> np.ndarray:
    if len(train) and isinstance(train[0], FeatureVector):
        train = [fv.values for fv in train]
    X = np.asarray(train, dtype=np.float64)
    if X.ndim != 2:
        raise ValueError("expected a list of equal-length vectors")
    return X


def fit_zscore(train) -> ZScoreParams:
    """Fit per-dimension statistics on >= 2 training vectors."""
    X = _rows(train)
    if len(X) < 2:
        raise ValueError("z-score fit needs at least 2 training vectors")
    mu = X.mean(axis=0)
    sigma = X.std(axis=0, ddof=1)
    dropped = tuple(int(i) for i in np.flatnonzero(sigma == 0.0))
    if len(dropped) == X.shape[1]:
        warnings.warn("all dimensions have zero variance; normalized vectors are all-zero")
    return ZScoreParams(mu, sigma, dropped)


def apply_zscore(x, params: ZScoreParams) -> np.ndarray:
    """(x - mu) / sigma per dimension; dropped dimensions map to 0."""
    vec = x.values if isinstance(x, FeatureVector) else np.asarray(x, dtype=np.float64)
    if vec.shape != params.mu.shape:
        raise ValueError(f"vector dim {vec.shape} != params dim {params.mu.shape}")
    safe = np.where(params.sigma == 0.0, 1.0, params.sigma)
    out = (vec - params.mu) / safe
    if params.dropped:
        out[list(params.dropped)] = 0.0
    return out


def fuse_concat(parts: list[tuple]) -> FeatureVector:
    """Normalize each (vector, params) part and concatenate in order; tag FUSED."""
    if len(parts) < 2:
        raise ValueError("fusion needs at least 2 parts")
    return FeatureVector("FUSED", np.concatenate([apply_zscore(x, p) for x, p in parts]))


@dataclass(frozen=True)
class FusedSchema:
    """Ordered (descriptor tag, dim, params) parts defining a fused layout."""

    parts: tuple[tuple[str, int, ZScoreParams], ...]

    def __post_init__(self):
        for tag, dim, params in self.parts:
            if params.dim != dim:
                raise ValueError(f"part {tag}: declared dim {dim} != params dim {params.dim}")

    @property
    def total_dim(self) -> int:
        return sum(dim for _, dim, _ in self.parts)


def save_schema(schema: FusedSchema, path) -> None:
    doc = {
        "parts": [
            {
                "descriptor": tag,
                "dim": dim,
                "mu": [float(v) for v in params.mu],
                "sigma": [float(v) for v in params.sigma],
            }
            for tag, dim, params in schema.parts
        ]
    }
    write_canonical(path, doc)


def load_schema(path) -> FusedSchema:
    doc = read_json(path)
    parts = []
    for item in doc["parts"]:
        mu = np.array(item["mu"], dtype=np.float64)
        sigma = np.array(item["sigma"], dtype=np.float64)
        dropped = tuple(int(i) for i in np.flatnonzero(sigma == 0.0))
        parts.append((item["descriptor"], int(item["dim"]), ZScoreParams(mu, sigma, dropped)))
    return FusedSchema(tuple(parts))
