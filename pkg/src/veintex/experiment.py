"""Declarative experiment grids: feature extraction, classifier cells, reports.

A config names a dataset, a split, descriptors, classifiers, and fusion
pairs. The grid runs every (descriptor x knn metric), (descriptor x svm
kernel), and the same for each fused pair. Cells are independent: one
failing cell is recorded as failed without aborting the rest. Everything
written except timings.json is byte-deterministic given (dataset, config,
seed).
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import eval as evalmod
from .canonjson import dumps_canonical, read_json, write_canonical
from .classify import (
    METRICS,
    KernelSpec,
    KnnModel,
    knn_predict_batch,
    save_svm,
    sigma_median_heuristic,
    svm_predict_batch,
    svm_train,
)
from .dataset_io import LabeledDataset, SplitSpec, preprocess, scan_dataset, split_dataset
from .errors import ConfigError, ConvergenceError, DataError, RecordError, ReportError
from .features import (
    build_log_gabor_bank,
    dwt_descriptor,
    get_filter,
    lbp_descriptor,
    log_gabor_descriptor,
    lpq_descriptor,
    read_feature_dump,
    write_feature_dump,
)
from .fusion import FusedSchema, apply_zscore, fit_zscore, save_schema

DESCRIPTOR_NAMES = ("LBP", "LPQ", "LOGGABOR", "HAAR", "DB8")

_DESCRIPTOR_PARAM_KEYS = {
    "LBP": set(),
    "LPQ": {"window"},
    "LOGGABOR": {"scales", "orientations", "min_wavelength", "mult", "ratio", "angular_sigma"},
    "HAAR": {"levels"},
    "DB8": {"levels"},
}


@dataclass
class ExperimentConfig:
    dataset_root: str
    out_dir: str
    seed: int
    width: int
    height: int
    equalize: bool
    split: SplitSpec
    descriptors: list[dict]  # [{"name": ..., **params}]
    knn: dict | None  # {"k": int, "metrics": [str]}
    svm: dict | None  # {"kernels": [doc], "C": float, "tol": float, "max_passes": int}
    fusion: list[list[str]]


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ConfigError(message)


def parse_config(doc: dict, seed_override: int | None = None, out_override: str | None = None) -> ExperimentConfig:
    _require(isinstance(doc, dict), "config must be a JSON object")
    known = {
        "dataset_root", "out_dir", "seed", "preprocess", "split",
        "descriptors", "classifiers", "fusion",
    }
    unknown = set(doc) - known
    _require(not unknown, f"unknown config keys: {sorted(unknown)}")
    root = doc.get("dataset_root")
    _require(isinstance(root, str) and root, "dataset_root must be a nonempty string")

    seed = doc.get("seed", 0) if seed_override is None else seed_override
    _require(isinstance(seed, int), "seed must be an integer")
    out_dir = out_override if out_override is not None else doc.get("out_dir", "runs")
    _require(isinstance(out_dir, str) and out_dir, "out_dir must be a nonempty string")

    pre = doc.get("preprocess", {})
    _require(isinstance(pre, dict), "preprocess must be an object")
    width = pre.get("width", 128)
    height = pre.get("height", 128)
    equalize = pre.get("equalize", True)
    _require(
        isinstance(width, int) and width >= 1 and isinstance(height, int) and height >= 1,
        "preprocess width/height must be positive integers",
    )
    _require(isinstance(equalize, bool), "preprocess.equalize must be a boolean")

    sp = doc.get("split", {})
    _require(isinstance(sp, dict), "split must be an object")
    mode = sp.get("mode", "per-subject-fraction")
    amount = sp.get("train_amount", 0.5)
    shuffle = sp.get("shuffle", False)
    shuffle_seed = sp.get("shuffle_seed")
    _require(isinstance(shuffle, bool), "split.shuffle must be a boolean")
    if shuffle and shuffle_seed is None:
        shuffle_seed = seed
    try:
        split = SplitSpec(mode, amount, shuffle_seed)
    except ValueError as exc:
        raise ConfigError(f"bad split spec: {exc}") from exc

    raw_descs = doc.get("descriptors")
    _require(isinstance(raw_descs, list) and raw_descs, "descriptors must be a nonempty list")
    descriptors = []
    seen_names = set()
    for item in raw_descs:
        if isinstance(item, str):
            item = {"name": item}
        _require(isinstance(item, dict) and "name" in item, "each descriptor needs a name")
        name = item["name"]
        _require(name in DESCRIPTOR_NAMES, f"unknown descriptor {name!r}")
        _require(name not in seen_names, f"descriptor {name!r} listed twice")
        seen_names.add(name)
        params = {k: v for k, v in item.items() if k != "name"}
        bad = set(params) - _DESCRIPTOR_PARAM_KEYS[name]
        _require(not bad, f"descriptor {name}: unknown parameters {sorted(bad)}")
        descriptors.append({"name": name, **params})

    clf = doc.get("classifiers")
    _require(isinstance(clf, dict) and clf, "classifiers must be a nonempty object")
    _require(set(clf) <= {"knn", "svm"}, "classifiers accepts only 'knn' and 'svm'")

    knn = None
    if "knn" in clf:
        kdoc = clf["knn"]
        _require(isinstance(kdoc, dict), "classifiers.knn must be an object")
        k = kdoc.get("k", 5)
        metrics = kdoc.get("metrics", list(METRICS))
        _require(isinstance(k, int) and k >= 1, "knn.k must be an integer >= 1")
        _require(
            isinstance(metrics, list) and metrics and all(m in METRICS for m in metrics),
            f"knn.metrics must be a nonempty subset of {METRICS}",
        )
        _require(len(set(metrics)) == len(metrics), "knn.metrics has duplicates")
        knn = {"k": k, "metrics": list(metrics)}

    svm = None
    if "svm" in clf:
        sdoc = clf["svm"]
        _require(isinstance(sdoc, dict), "classifiers.svm must be an object")
        kernels = sdoc.get("kernels", [{"kind": "rbf"}, {"kind": "polynomial"}])
        _require(isinstance(kernels, list) and kernels, "svm.kernels must be a nonempty list")
        kinds = []
        for kdoc in kernels:
            _require(
                isinstance(kdoc, dict) and kdoc.get("kind") in ("rbf", "polynomial"),
                f"bad kernel spec {kdoc!r}",
            )
            kinds.append(kdoc["kind"])
        _require(len(set(kinds)) == len(kinds), "svm.kernels has duplicate kinds")
        C = sdoc.get("C", 10.0)
        tol = sdoc.get("tol", 1e-3)
        max_passes = sdoc.get("max_passes", 10)
        _require(isinstance(C, (int, float)) and C > 0, "svm.C must be positive")
        _require(isinstance(tol, (int, float)) and tol > 0, "svm.tol must be positive")
        _require(isinstance(max_passes, int) and max_passes >= 1, "svm.max_passes must be >= 1")
        svm = {"kernels": kernels, "C": float(C), "tol": float(tol), "max_passes": max_passes}

    fusion = doc.get("fusion", [])
    _require(isinstance(fusion, list), "fusion must be a list of descriptor-name lists")
    for pair in fusion:
        _require(
            isinstance(pair, list) and len(pair) >= 2,
            "each fusion entry must list at least 2 descriptors",
        )
        for name in pair:
            _require(name in seen_names, f"fusion references descriptor {name!r} not in the list")
        _require(len(set(pair)) == len(pair), f"fusion entry {pair} repeats a descriptor")

    return ExperimentConfig(
        root, out_dir, seed, width, height, equalize, split,
        descriptors, knn, svm, [list(p) for p in fusion],
    )


def load_config(path, seed_override: int | None = None, out_override: str | None = None) -> ExperimentConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON: {exc}") from exc
    return parse_config(doc, seed_override, out_override)


def resolved_doc(cfg: ExperimentConfig) -> dict:
    """Canonical view of everything that determines results (out_dir excluded)."""
    return {
        "dataset_root": cfg.dataset_root,
        "seed": cfg.seed,
        "preprocess": {"width": cfg.width, "height": cfg.height, "equalize": cfg.equalize},
        "split": {
            "mode": cfg.split.mode,
            "train_amount": cfg.split.train_amount,
            "shuffle_seed": cfg.split.shuffle_seed,
        },
        "descriptors": cfg.descriptors,
        "knn": cfg.knn,
        "svm": cfg.svm,
        "fusion": cfg.fusion,
    }


def config_hash(cfg: ExperimentConfig) -> str:
    return hashlib.sha256(dumps_canonical(resolved_doc(cfg)).encode("utf-8")).hexdigest()


# ---------------------------------------------------------------------------
# feature extraction


def _descriptor_fn(desc: dict, width: int, height: int):
    name = desc["name"]
    params = {k: v for k, v in desc.items() if k != "name"}
    if name == "LBP":
        return lbp_descriptor
    if name == "LPQ":
        window = params.get("window", 7)
        return lambda img: lpq_descriptor(img, window)
    if name == "LOGGABOR":
        bank = build_log_gabor_bank(width, height, **params)
        return lambda img: log_gabor_descriptor(img, bank)
    filt = get_filter(name.lower())
    levels = params.get("levels", 3)
    return lambda img: dwt_descriptor(img, filt, levels)


def _prepared_split(cfg: ExperimentConfig) -> tuple[LabeledDataset, LabeledDataset]:
    ds = scan_dataset(cfg.dataset_root)
    images = [preprocess(img, cfg.width, cfg.height, cfg.equalize) for img in ds.payloads]
    return split_dataset(LabeledDataset(ds.records, images, ds.class_set), cfg.split)


def _dump_path(out: Path, name: str, side: str) -> Path:
    return out / "features" / f"{name}_{side}.tsv"


def _sidecar_path(path: Path) -> Path:
    return path.with_suffix(".meta.json")


def _side_input_hash(ds: LabeledDataset) -> str:
    h = hashlib.sha256()
    for rec, img in zip(ds.records, ds.payloads):
        h.update(f"{rec.subject_id}\t{rec.sample_index}\n".encode("utf-8"))
        h.update(np.ascontiguousarray(img.data).tobytes())
    return h.hexdigest()


def _dump_deps(cfg: ExperimentConfig, desc: dict, input_hash: str) -> str:
    doc = {
        "descriptor": desc,
        "width": cfg.width,
        "height": cfg.height,
        "equalize": cfg.equalize,
        "inputs": input_hash,
    }
    return hashlib.sha256(dumps_canonical(doc).encode("utf-8")).hexdigest()


def _write_sidecar(path: Path, deps: str) -> None:
    doc = {"deps": deps, "dump_sha256": hashlib.sha256(path.read_bytes()).hexdigest()}
    _sidecar_path(path).write_text(dumps_canonical(doc) + "\n", encoding="utf-8")


def _dump_matches(entries, ds: LabeledDataset, name: str) -> bool:
    if len(entries) != len(ds.records):
        return False
    width = len(entries[0][2].values) if entries else 0
    for (subject, idx, vec), rec in zip(entries, ds.records):
        if subject != rec.subject_id or idx != rec.sample_index or vec.descriptor != name:
            return False
        if len(vec.values) != width:
            return False
    return True


def _load_valid_dump(path: Path, deps: str, ds: LabeledDataset, name: str):
    """Return dump vectors only when the sidecar proves they are current."""
    try:
        meta = json.loads(_sidecar_path(path).read_text(encoding="utf-8"))
        raw = path.read_bytes()
    except (OSError, json.JSONDecodeError):
        return None
    if not isinstance(meta, dict) or meta.get("deps") != deps:
        return None
    if meta.get("dump_sha256") != hashlib.sha256(raw).hexdigest():
        return None
    try:
        entries = read_feature_dump(path)
    except (ValueError, OSError):
        return None
    if not _dump_matches(entries, ds, name):
        return None
    return [vec for _, _, vec in entries]


def extract_features(
    cfg: ExperimentConfig, reuse_dumps: bool = False
) -> tuple[LabeledDataset, LabeledDataset, dict]:
    """Compute (or reload) every configured descriptor for both split sides.

    Returns (train, test, features) with features[name] = (train_matrix,
    test_matrix) as 2-D float arrays. Dumps are written under
    <out>/features and reused only when they match the current split.
    """
    train, test = _prepared_split(cfg)
    out = Path(cfg.out_dir)
    (out / "features").mkdir(parents=True, exist_ok=True)
    input_hashes = {"train": _side_input_hash(train), "test": _side_input_hash(test)}
    features: dict[str, tuple[np.ndarray, np.ndarray]] = {}
    for desc in cfg.descriptors:
        name = desc["name"]
        fn = _descriptor_fn(desc, cfg.width, cfg.height)
        sides = {}
        for side, ds in (("train", train), ("test", test)):
            path = _dump_path(out, name, side)
            deps = _dump_deps(cfg, desc, input_hashes[side])
            vectors = None
            if reuse_dumps and path.is_file():
                vectors = _load_valid_dump(path, deps, ds, name)
            if vectors is None:
                vectors = [fn(img) for img in ds.payloads]
                write_feature_dump(path, ds.records, vectors)
                _write_sidecar(path, deps)
            sides[side] = np.array([vec.values for vec in vectors])
        features[name] = (sides["train"], sides["test"])
    return train, test, features


def cmd_extract(cfg: ExperimentConfig) -> list[Path]:
    """Recompute and overwrite all feature dumps; returns the file paths."""
    extract_features(cfg, reuse_dumps=False)
    out = Path(cfg.out_dir)
    return [
        _dump_path(out, desc["name"], side)
        for desc in cfg.descriptors
        for side in ("train", "test")
    ]


# ---------------------------------------------------------------------------
# grid running


def _fused_features(
    cfg: ExperimentConfig, features: dict, out: Path
) -> dict[str, tuple[np.ndarray, np.ndarray]]:
    fused = {}
    for pair in cfg.fusion:
        label = "+".join(pair)
        parts = []
        train_cols = []
        test_cols = []
        for name in pair:
            train_x, test_x = features[name]
            params = fit_zscore(train_x)
            parts.append((name, train_x.shape[1], params))
            train_cols.append(np.array([apply_zscore(row, params) for row in train_x]))
            test_cols.append(np.array([apply_zscore(row, params) for row in test_x]))
        schema = FusedSchema(tuple(parts))
        (out / "schemas").mkdir(parents=True, exist_ok=True)
        save_schema(schema, out / "schemas" / f"{label}.json")
        fused[label] = (np.concatenate(train_cols, axis=1), np.concatenate(test_cols, axis=1))
    return fused


def _cell_id(classifier: str, variant: str, desc_label: str) -> str:
    return f"{classifier}_{variant}_{desc_label}"


def run_grid(cfg: ExperimentConfig) -> dict:
    """Execute the full grid; returns {"records": ..., "tables": str, "exit_code": int}."""
    started = time.monotonic()
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    train, test, features = extract_features(cfg, reuse_dumps=True)
    fused = _fused_features(cfg, features, out)
    chash = config_hash(cfg)

    train_y = train.labels()
    test_y = test.labels()
    class_set = list(train.class_set)

    # (table tag, descriptor label, matrices) in a fixed order
    cells = []
    single_labels = [d["name"] for d in cfg.descriptors]
    for label in single_labels:
        cells.append(("single", label, features[label]))
    for pair in cfg.fusion:
        label = "+".join(pair)
        cells.append(("fused", label, fused[label]))

    records: dict[str, dict] = {}
    timings: dict[str, float] = {}
    any_convergence_failure = False

    for kind, label, (train_x, test_x) in cells:
        if cfg.knn is not None:
            for metric in cfg.knn["metrics"]:
                cell = _cell_id("knn", metric, label)
                table = "table1" if kind == "single" else "table3"
                echo = {
                    "descriptor": label,
                    "classifier": "knn",
                    "metric": metric,
                    "k": cfg.knn["k"],
                }
                t0 = time.monotonic()
                records[cell] = _run_cell(
                    cell, table, chash, echo,
                    lambda: _knn_cell(cfg, metric, train_x, train_y, test_x, class_set),
                    test_y, class_set,
                )
                timings[cell] = time.monotonic() - t0
                if _is_convergence_failure(records[cell]):
                    any_convergence_failure = True
        if cfg.svm is not None:
            for kdoc in cfg.svm["kernels"]:
                cell = _cell_id("svm", kdoc["kind"], label)
                table = "table2" if kind == "single" else "table4"
                echo = {
                    "descriptor": label,
                    "classifier": "svm",
                    "kernel": kdoc["kind"],
                    "C": cfg.svm["C"],
                    "tol": cfg.svm["tol"],
                }
                t0 = time.monotonic()
                records[cell] = _run_cell(
                    cell, table, chash, echo,
                    lambda: _svm_cell(
                        cfg, kdoc, train_x, train_y, test_x, class_set, out, cell, echo
                    ),
                    test_y, class_set,
                )
                timings[cell] = time.monotonic() - t0
                if _is_convergence_failure(records[cell]):
                    any_convergence_failure = True

    (out / "records").mkdir(parents=True, exist_ok=True)
    for cell, record in records.items():
        write_canonical(out / "records" / f"{cell}.json", record)
    write_canonical(out / "report.json", {"config_hash": chash, "cells": records})
    write_canonical(
        out / "timings.json",
        {"cells": timings, "total": time.monotonic() - started},
    )

    tables = _render_tables(records)
    (out / "tables.txt").write_text(tables, encoding="utf-8")
    return {
        "records": records,
        "tables": tables,
        "exit_code": 4 if any_convergence_failure else 0,
    }


def _knn_cell(cfg, metric, train_x, train_y, test_x, class_set):
    model = KnnModel(cfg.knn["k"], metric, train_x, train_y, class_set)
    return knn_predict_batch(model, test_x), {}


def _svm_cell(cfg, kdoc, train_x, train_y, test_x, class_set, out, cell, echo):
    if kdoc["kind"] == "rbf":
        sigma = kdoc.get("sigma")
        if sigma is None:
            sigma = sigma_median_heuristic(train_x, seed=cfg.seed)
        spec = KernelSpec("rbf", sigma=float(sigma))
        echo["sigma"] = float(sigma)
    else:
        spec = KernelSpec(
            "polynomial", degree=kdoc.get("degree", 3), coef=kdoc.get("coef", 1.0)
        )
        echo["degree"] = spec.degree
        echo["coef"] = spec.coef
    model = svm_train(
        train_x, train_y, spec,
        C=cfg.svm["C"], tol=cfg.svm["tol"], max_passes=cfg.svm["max_passes"],
        class_set=class_set,
    )
    (out / "models").mkdir(parents=True, exist_ok=True)
    save_svm(model, out / "models" / f"{cell}.json")
    return svm_predict_batch(model, test_x), {"model": f"models/{cell}.json"}


def _run_cell(cell, table, chash, echo, body, test_y, class_set) -> dict:
    record = {
        "cell": cell,
        "table": table,
        "config_hash": chash,
        "config": echo,
        "status": "ok",
        "error": None,
        "report": None,
        "artifacts": {},
    }
    try:
        predictions, artifacts = body()
        report = evalmod.build_report(test_y, predictions, class_set, echo)
        record["report"] = evalmod.report_doc(report)
        record["artifacts"] = artifacts
    except (ValueError, ConvergenceError) as exc:
        record["status"] = "failed"
        record["error"] = {"type": type(exc).__name__, "message": str(exc)}
    return record


def _is_convergence_failure(record: dict) -> bool:
    return record["status"] == "failed" and record["error"]["type"] == "ConvergenceError"


def _report_from_doc(doc: dict) -> evalmod.EvalReport:
    cm = evalmod.ConfusionMatrix(
        tuple(doc["confusion"]["class_set"]), np.array(doc["confusion"]["counts"])
    )
    metrics = doc["metrics"]
    prf = evalmod.PrfResult(
        metrics["per_class"],
        metrics["macro"]["precision"],
        metrics["macro"]["recall"],
        metrics["macro"]["f"],
        metrics["zero_division"],
    )
    return evalmod.EvalReport(doc["config"], cm, metrics["recognition_rate"], prf)


def _render_tables(records: dict[str, dict]) -> str:
    """Render every table whose cells all succeeded; note the others."""
    groups: dict[tuple[str, str], list[evalmod.EvalReport]] = {}
    failed: dict[tuple[str, str], list[str]] = {}
    for cell in sorted(records):
        record = records[cell]
        table = record["table"]
        # fused tables render one grid per fused descriptor
        desc = record["config"]["descriptor"] if table in ("table3", "table4") else ""
        key = (table, desc)
        if record["status"] == "ok":
            groups.setdefault(key, []).append(_report_from_doc(record["report"]))
        else:
            failed.setdefault(key, []).append(cell)
    chunks = []
    for key in sorted(groups | failed):
        table, desc = key
        title = table + (f" [{desc}]" if desc else "")
        if key in failed:
            cells = ", ".join(failed[key])
            chunks.append(f"{title}: not rendered; failed cells: {cells}\n")
            continue
        try:
            chunks.append(evalmod.render_report(groups[key], table))
        except ReportError as exc:
            chunks.append(f"{title}: not rendered ({exc})\n")
    return "\n".join(chunks) if chunks else "no cells ran\n"


def cmd_run(cfg: ExperimentConfig) -> tuple[str, int]:
    """Run the grid; returns (rendered tables, exit code)."""
    result = run_grid(cfg)
    return result["tables"], result["exit_code"]


def cmd_report(run_dir) -> str:
    """Re-render tables from stored records without recomputing anything."""
    run_dir = Path(run_dir)
    records_dir = run_dir / "records"
    if not records_dir.is_dir():
        raise ReportError(f"{run_dir}: no records directory")
    files = sorted(records_dir.glob("*.json"))
    if not files:
        raise ReportError(f"{records_dir}: no run records found")
    records = {}
    for path in files:
        try:
            record = read_json(path)
        except (json.JSONDecodeError, OSError) as exc:
            raise RecordError(f"{path}: unreadable record: {exc}") from exc
        for field in ("cell", "table", "status", "config"):
            if field not in record:
                raise RecordError(f"{path}: record missing field {field!r}")
        if record["table"] not in evalmod.LAYOUTS:
            raise RecordError(f"{path}: unknown layout tag {record['table']!r}")
        records[record["cell"]] = record
    return _render_tables(records)
