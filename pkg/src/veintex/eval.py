"""Recognition rate, precision/recall/F-measure, and table-shaped reports."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError, ReportError


@dataclass(frozen=True)
class ConfusionMatrix:
    """counts[i][j] = samples of true class i predicted as class j."""

    class_set: tuple[str, ...]
    counts: np.ndarray

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=np.int64)
        n = len(self.class_set)
        if counts.shape != (n, n):
            raise ValueError(f"counts shape {counts.shape} != ({n}, {n})")
        if np.any(counts < 0):
            raise ValueError("counts must be nonnegative")
        object.__setattr__(self, "class_set", tuple(self.class_set))
        object.__setattr__(self, "counts", counts)

    @property
    def total(self) -> int:
        return int(self.counts.sum())


def confusion_matrix(truth: list[str], pred: list[str], class_set) -> ConfusionMatrix:
    if len(truth) != len(pred):
        raise ValueError(f"truth/pred length mismatch: {len(truth)} vs {len(pred)}")
    if len(truth) == 0:
        raise ValueError("need at least one evaluated sample")
    index = {c: i for i, c in enumerate(class_set)}
    counts = np.zeros((len(index), len(index)), dtype=np.int64)
    for t, p in zip(truth, pred):
        if t not in index or p not in index:
            raise DataError(f"label outside class_set: {t if t not in index else p!r}")
        counts[index[t], index[p]] += 1
    return ConfusionMatrix(tuple(class_set), counts)


def recognition_rate(cm: ConfusionMatrix) -> float:
    """Percent of evaluated samples on the confusion-matrix diagonal."""
    total = cm.total
    if total < 1:
        raise ValueError("empty confusion matrix")
    return 100.0 * float(np.trace(cm.counts)) / total


@dataclass(frozen=True)
class PrfResult:
    per_class: dict  # label -> {"precision": p, "recall": r, "f": f}
    macro_precision: float
    macro_recall: float
    macro_f: float
    zero_division: dict  # {"precision": [labels], "recall": [labels]}


def f_measure(precision: float, recall: float) -> float:
    """Harmonic mean of precision and recall; 0 when both are 0."""
    if precision + recall == 0.0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


def precision_recall_f(cm: ConfusionMatrix) -> PrfResult:
    """Per-class and macro precision/recall/F; empty rows or columns score 0."""
    if cm.total < 1:
        raise ValueError("empty confusion matrix")
    diag = np.diag(cm.counts).astype(np.float64)
    row_sums = cm.counts.sum(axis=1).astype(np.float64)
    col_sums = cm.counts.sum(axis=0).astype(np.float64)
    per_class = {}
    flags = {"precision": [], "recall": []}
    precisions, recalls, fs = [], [], []
    for i, label in enumerate(cm.class_set):
        if row_sums[i] == 0:
            recall = 0.0
            flags["recall"].append(label)
        else:
            recall = diag[i] / row_sums[i]
        if col_sums[i] == 0:
            precision = 0.0
            flags["precision"].append(label)
        else:
            precision = diag[i] / col_sums[i]
        f = f_measure(precision, recall)
        per_class[label] = {"precision": precision, "recall": recall, "f": f}
        precisions.append(precision)
        recalls.append(recall)
        fs.append(f)
    return PrfResult(
        per_class,
        float(np.mean(precisions)),
        float(np.mean(recalls)),
        float(np.mean(fs)),
        flags,
    )


@dataclass(frozen=True)
class EvalReport:
    """One run's metrics plus an echo of what produced them."""

    config: dict  # descriptor, classifier, metric or kernel, parameters
    confusion: ConfusionMatrix
    rate: float
    prf: PrfResult

    @property
    def recognition_rate(self) -> float:
        return self.rate


def build_report(truth: list[str], pred: list[str], class_set, config: dict) -> EvalReport:
    cm = confusion_matrix(truth, pred, class_set)
    return EvalReport(dict(config), cm, recognition_rate(cm), precision_recall_f(cm))


def report_doc(report: EvalReport) -> dict:
    """Machine-readable JSON form: {config, confusion, metrics}."""
    return {
        "config": report.config,
        "confusion": {
            "class_set": list(report.confusion.class_set),
            "counts": [[int(v) for v in row] for row in report.confusion.counts],
        },
        "metrics": {
            "recognition_rate": report.rate,
            "per_class": report.prf.per_class,
            "macro": {
                "precision": report.prf.macro_precision,
                "recall": report.prf.macro_recall,
                "f": report.prf.macro_f,
            },
            "zero_division": report.prf.zero_division,
        },
    }


# ---------------------------------------------------------------------------
# table rendering

LAYOUTS = ("table1", "table2", "table3", "table4")

_TITLES = {
    "table1": "KNN recognition rate (%) by distance and descriptor",
    "table2": "SVM recognition rate (%) by kernel and descriptor",
    "table3": "KNN fused-descriptor performance by distance",
    "table4": "SVM fused-descriptor performance by kernel",
}


def _row_key(report: EvalReport) -> str:
    cfg = report.config
    key = cfg.get("metric") or cfg.get("kernel")
    if not key:
        raise ReportError(f"report config lacks a metric/kernel row label: {cfg}")
    return str(key)


def _ordered_unique(items: list[str]) -> list[str]:
    seen = []
    for item in items:
        if item not in seen:
            seen.append(item)
    return seen


def _format_table(headers: list[str], rows: list[list[str]], title: str) -> str:
    widths = [max(len(h), *(len(r[i]) for r in rows)) for i, h in enumerate(headers)]
    lines = [title]
    lines.append("  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)).rstrip())
    lines.append("  ".join("-" * w for w in widths))
    for row in rows:
        lines.append("  ".join(row[i].ljust(widths[i]) for i in range(len(row))).rstrip())
    return "\n".join(lines) + "\n"


def render_report(reports: list[EvalReport], layout: str) -> str:
    """Render reports as a text table: table1/table2 are rate grids, table3/table4 add P/R/F."""
    if layout not in LAYOUTS:
        raise ReportError(f"unknown layout {layout!r} (expected one of {LAYOUTS})")
    if not reports:
        raise ReportError("no reports to render")

    if layout in ("table1", "table2"):
        rows = _ordered_unique([_row_key(r) for r in reports])
        cols = _ordered_unique([str(r.config.get("descriptor")) for r in reports])
        cell = {(_row_key(r), str(r.config.get("descriptor"))): r for r in reports}
        body = []
        for row_label in rows:
            line = [row_label]
            for col in cols:
                report = cell.get((row_label, col))
                if report is None:
                    raise ReportError(f"missing grid cell ({row_label}, {col})")
                line.append(f"{report.rate:.2f}")
            body.append(line)
        header = ["distance" if layout == "table1" else "kernel"] + cols
        return _format_table(header, body, _TITLES[layout])

    descriptors = _ordered_unique([str(r.config.get("descriptor")) for r in reports])
    if len(descriptors) != 1:
        raise ReportError(f"layout {layout} expects a single descriptor, got {descriptors}")
    rows = _ordered_unique([_row_key(r) for r in reports])
    cell = {_row_key(r): r for r in reports}
    body = []
    for row_label in rows:
        report = cell.get(row_label)
        if report is None:
            raise ReportError(f"missing grid cell ({row_label}, {descriptors[0]})")
        body.append(
            [
                row_label,
                f"{report.rate:.2f}",
                f"{report.prf.macro_recall:.3f}",
                f"{report.prf.macro_precision:.3f}",
                f"{report.prf.macro_f:.3f}",
            ]
        )
    header = [
        "distance" if layout == "table3" else "kernel",
        f"{descriptors[0]} rate (%)",
        "recall",
        "precision",
        "f-measure",
    ]
    return _format_table(header, body, _TITLES[layout])
