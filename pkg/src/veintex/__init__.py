"""Hand-vein texture recognition toolkit.

Five texture descriptors (LBP, LPQ, log-Gabor, Haar and Daubechies-8
wavelet statistics), KNN and one-vs-one SVM classifiers, z-score
feature-level fusion, and a batch experiment harness producing
recognition-rate / precision / recall / F-measure tables.
"""

from .classify import (
    METRICS,
    KernelSpec,
    KnnModel,
    TrainedSvm,
    distance,
    gram_matrix,
    kernel_eval,
    knn_predict,
    knn_predict_batch,
    load_svm,
    pairwise_distances,
    save_svm,
    sigma_median_heuristic,
    svm_predict,
    svm_predict_batch,
    svm_train,
)
from .dataset_io import (
    GrayImage,
    LabeledDataset,
    SampleRecord,
    SplitSpec,
    equalize_histogram,
    load_image,
    preprocess,
    resize_bilinear,
    scan_dataset,
    split_dataset,
    write_pgm,
)
from .errors import (
    ConfigError,
    ConvergenceError,
    DataError,
    DatasetError,
    DegenerateInputError,
    FormatError,
    RecordError,
    ReportError,
    SplitError,
)
from .eval import (
    ConfusionMatrix,
    EvalReport,
    PrfResult,
    build_report,
    confusion_matrix,
    f_measure,
    precision_recall_f,
    recognition_rate,
    render_report,
    report_doc,
)
from .experiment import (
    ExperimentConfig,
    cmd_extract,
    cmd_report,
    cmd_run,
    config_hash,
    load_config,
    parse_config,
    run_grid,
)
from .features import (
    FeatureVector,
    LogGaborBank,
    SubbandPyramid,
    WaveletFilter,
    build_log_gabor_bank,
    db8_filter,
    dwt2,
    dwt_descriptor,
    dwt_step,
    get_filter,
    haar_filter,
    idwt2,
    lbp_codes,
    lbp_descriptor,
    log_gabor_descriptor,
    log_gabor_transfer,
    lpq_codes,
    lpq_descriptor,
    read_feature_dump,
    write_feature_dump,
)
from .fusion import (
    FusedSchema,
    ZScoreParams,
    apply_zscore,
    fit_zscore,
    fuse_concat,
    load_schema,
    save_schema,
)
from .synthetic import make_corpus, texture_suite, write_corpus

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "ConfusionMatrix",
    "ConvergenceError",
    "DataError",
    "DatasetError",
    "DegenerateInputError",
    "EvalReport",
    "ExperimentConfig",
    "FeatureVector",
    "FormatError",
    "FusedSchema",
    "GrayImage",
    "KernelSpec",
    "KnnModel",
    "LabeledDataset",
    "LogGaborBank",
    "METRICS",
    "PrfResult",
    "RecordError",
    "ReportError",
    "SampleRecord",
    "SplitError",
    "SplitSpec",
    "SubbandPyramid",
    "TrainedSvm",
    "WaveletFilter",
    "ZScoreParams",
    "apply_zscore",
    "build_log_gabor_bank",
    "build_report",
    "cmd_extract",
    "cmd_report",
    "cmd_run",
    "config_hash",
    "confusion_matrix",
    "db8_filter",
    "distance",
    "dwt2",
    "dwt_descriptor",
    "dwt_step",
    "f_measure",
    "equalize_histogram",
    "fit_zscore",
    "fuse_concat",
    "get_filter",
    "gram_matrix",
    "haar_filter",
    "idwt2",
    "kernel_eval",
    "knn_predict",
    "knn_predict_batch",
    "lbp_codes",
    "lbp_descriptor",
    "load_config",
    "load_image",
    "load_schema",
    "load_svm",
    "log_gabor_descriptor",
    "log_gabor_transfer",
    "lpq_codes",
    "lpq_descriptor",
    "make_corpus",
    "pairwise_distances",
    "parse_config",
    "precision_recall_f",
    "preprocess",
    "read_feature_dump",
    "recognition_rate",
    "render_report",
    "report_doc",
    "resize_bilinear",
    "run_grid",
    "save_schema",
    "save_svm",
    "scan_dataset",
    "sigma_median_heuristic",
    "split_dataset",
    "svm_predict",
    "svm_predict_batch",
    "svm_train",
    "texture_suite",
    "write_corpus",
    "write_feature_dump",
    "write_pgm",
]
