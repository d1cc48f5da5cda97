"""Classifiers: KNN over four distance metrics and one-vs-one kernel SVM."""

from .distances import METRICS, distance, pairwise_distances
from .kernels import KernelSpec, gram_matrix, kernel_eval
from .knn import DEFAULT_K, KnnModel, knn_predict, knn_predict_batch
from .svm import (
    DEFAULT_C,
    DEFAULT_MAX_PASSES,
    DEFAULT_TOL,
    PairMachine,
    TrainedSvm,
    load_svm,
    save_svm,
    sigma_median_heuristic,
    svm_predict,
    svm_predict_batch,
    svm_train,
)

__all__ = [
    "DEFAULT_C",
    "DEFAULT_K",
    "DEFAULT_MAX_PASSES",
    "DEFAULT_TOL",
    "METRICS",
    "KernelSpec",
    "KnnModel",
    "PairMachine",
    "TrainedSvm",
    "distance",
    "gram_matrix",
    "kernel_eval",
    "knn_predict",
    "knn_predict_batch",
    "load_svm",
    "pairwise_distances",
    "save_svm",
    "sigma_median_heuristic",
    "svm_predict",
    "svm_predict_batch",
    "svm_train",
]
