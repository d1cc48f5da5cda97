"""K-nearest-neighbor classification with fully specified tie handling."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distances import METRICS, pairwise_distances

DEFAULT_K = 5


@dataclass
class KnnModel:
    k: int
    metric: str
    train_x: np.ndarray
    train_y: list[str]
    class_set: list[str]

    def __post_init__(self):
        self.train_x = np.asarray(self.train_x, dtype=np.float64)
        if self.train_x.ndim != 2 or len(self.train_x) == 0:
            raise ValueError("training vectors must form a nonempty 2-D array")
        if len(self.train_y) != len(self.train_x):
            raise ValueError("labels must parallel training vectors")
        if not 1 <= self.k <= len(self.train_x):
            raise ValueError(f"k={self.k} outside [1, {len(self.train_x)}]")
        if self.metric not in METRICS:
            raise ValueError(f"unknown metric {self.metric!r}")
        known = set(self.class_set)
        if any(label not in known for label in self.train_y):
            raise ValueError("training label outside class_set")


def _vote(model: KnnModel, dists: np.ndarray) -> str:
    # neighbors ranked by (distance, training index); both exact values
    order = np.lexsort((np.arange(len(dists)), dists))
    top = order[: model.k]
    counts: dict[str, int] = {}
    summed: dict[str, float] = {}
    for idx in top:
        label = model.train_y[idx]
        counts[label] = counts.get(label, 0) + 1
        summed[label] = summed.get(label, 0.0) + float(dists[idx])
    best = max(counts.values())
    tied = [c for c in counts if counts[c] == best]
    if len(tied) > 1:
        low = min(summed[c] for c in tied)
        tied = [c for c in tied if summed[c] == low]
    if len(tied) > 1:
        rank = {c: i for i, c in enumerate(model.class_set)}
        tied.sort(key=lambda c: rank[c])
    return tied[0]


def knn_predict(model: KnnModel, query) -> str:
    """Label of the plurality among the k nearest training vectors."""
    query = np.asarray(query, dtype=np.float64)
    if query.ndim != 1:
        raise ValueError("query must be a 1-D vector")
    dists = pairwise_distances(query[None, :], model.train_x, model.metric)[0]
    return _vote(model, dists)


def knn_predict_batch(model: KnnModel, queries) -> list[str]:
    queries = np.asarray(queries, dtype=np.float64)
    dmat = pairwise_distances(queries, model.train_x, model.metric)
    return [_vote(model, row) for row in dmat]
