"""Image loading, preprocessing, and deterministic dataset splits.

Images are 8-bit grayscale PGM (P2/P5) or 8-bit PNG; color PNG is reduced
with luma weights 0.299/0.587/0.114. All pixel data lives in [0,1] as
float64, shape (height, width), row-major.
"""

from __future__ import annotations

import hashlib
import json
import re
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

import numpy as np

from .errors import DatasetError, FormatError, SplitError

DEFAULT_SIZE = 128


@dataclass(frozen=True)
class GrayImage:
    """A grayscale image: data[r, c] in [0,1], shape (height, width)."""

    data: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.data, dtype=np.float64)
        if arr.ndim != 2 or arr.size == 0:
            raise ValueError(f"image data must be a nonempty 2-D grid, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("image data contains non-finite values")
        if arr.min() < 0.0 or arr.max() > 1.0:
            raise ValueError("image intensities must lie in [0,1]")
        object.__setattr__(self, "data", np.ascontiguousarray(arr))

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]


@dataclass(frozen=True)
class SampleRecord:
    subject_id: str
    sample_index: int
    source_path: str


@dataclass
class LabeledDataset:
    """Parallel records/payloads plus the ordered label universe.

    Payloads are GrayImages after loading and may be replaced by feature
    vectors downstream; records stay aligned by position.
    """

    records: list[SampleRecord]
    payloads: list
    class_set: list[str]

    def __post_init__(self):
        if len(self.records) != len(self.payloads):
            raise ValueError("records and payloads must be parallel")
        if sorted(set(self.class_set)) != list(self.class_set):
            raise ValueError("class_set must be sorted and duplicate-free")
        known = set(self.class_set)
        for rec in self.records:
            if rec.subject_id not in known:
                raise ValueError(f"record subject {rec.subject_id!r} not in class_set")
        seen = set()
        for rec in self.records:
            key = (rec.subject_id, rec.sample_index)
            if key in seen:
                raise ValueError(f"duplicate (subject, sample_index) {key}")
            seen.add(key)

    def __len__(self) -> int:
        return len(self.records)

    def labels(self) -> list[str]:
        return [rec.subject_id for rec in self.records]


@dataclass(frozen=True)
class SplitSpec:
    """Per-subject train/test split rule.

    mode 'per-subject-count': train_amount samples (an integer >= 1) per
    subject go to train. mode 'per-subject-fraction': a fraction in (0,1)
    of each subject's samples, rounded, clamped so both sides get >= 1.
    Without shuffle_seed the lowest sample_index values go to train.
    """

    mode: str
    train_amount: Union[int, float]
    shuffle_seed: Optional[int] = None

    def __post_init__(self):
        if self.mode == "per-subject-count":
            if not isinstance(self.train_amount, (int, np.integer)) or self.train_amount < 1:
                raise ValueError("per-subject-count requires integer train_amount >= 1")
        elif self.mode == "per-subject-fraction":
            if not 0.0 < float(self.train_amount) < 1.0:
                raise ValueError("per-subject-fraction requires train_amount in (0,1)")
        else:
            raise ValueError(f"unknown split mode {self.mode!r}")


# ---------------------------------------------------------------------------
# image file IO

_PGM_TOKEN = re.compile(rb"\s*(?:#[^\n\r]*[\n\r]\s*)*(\S+)")


def _pgm_tokens(buf: bytes, count: int, start: int) -> tuple[list[bytes], int]:
    """Read whitespace/comment-separated header tokens starting at `start`."""
    tokens = []
    pos = start
    while len(tokens) < count:
        m = _PGM_TOKEN.match(buf, pos)
        if not m:
            raise FormatError("truncated PGM header")
        tokens.append(m.group(1))
        pos = m.end()
    return tokens, pos


def _load_pgm(buf: bytes, path: str) -> GrayImage:
    magic = buf[:2]
    (w_tok, h_tok, max_tok), pos = _pgm_tokens(buf, 3, 2)
    try:
        width, height, maxval = int(w_tok), int(h_tok), int(max_tok)
    except ValueError as exc:
        raise FormatError(f"{path}: bad PGM header") from exc
    if width <= 0 or height <= 0:
        raise FormatError(f"{path}: zero-dimension image")
    if maxval != 255:
        raise FormatError(f"{path}: only 8-bit PGM (maxval 255) is supported, got {maxval}")
    n = width * height
    if magic == b"P5":
        # exactly one whitespace byte separates the header from raster data
        raster = buf[pos + 1 : pos + 1 + n]
        if len(raster) < n:
            raise FormatError(f"{path}: truncated PGM raster")
        values = np.frombuffer(raster, dtype=np.uint8).astype(np.float64)
    else:
        fields = buf[pos:].split()
        if len(fields) < n:
            raise FormatError(f"{path}: truncated PGM raster")
        try:
            values = np.array([int(t) for t in fields[:n]], dtype=np.float64)
        except ValueError as exc:
            raise FormatError(f"{path}: non-numeric PGM sample") from exc
        if values.min() < 0 or values.max() > 255:
            raise FormatError(f"{path}: PGM sample out of range")
    return GrayImage(values.reshape(height, width) / 255.0)


def _load_png(path: str) -> GrayImage:
    from PIL import Image

    with Image.open(path) as im:
        if im.mode == "P":
            im = im.convert("RGB")
        elif im.mode == "LA":
            im = im.convert("L")
        if im.mode == "RGBA":
            im = im.convert("RGB")
        if im.mode == "L":
            arr = np.asarray(im, dtype=np.float64)
            if arr.size == 0:
                raise FormatError(f"{path}: zero-dimension image")
            return GrayImage(arr / 255.0)
        if im.mode == "RGB":
            arr = np.asarray(im, dtype=np.float64)
            if arr.size == 0:
                raise FormatError(f"{path}: zero-dimension image")
            r, g, b = arr[..., 0] / 255.0, arr[..., 1] / 255.0, arr[..., 2] / 255.0
            return GrayImage(0.299 * r + 0.587 * g + 0.114 * b)
        raise FormatError(f"{path}: unsupported PNG mode {im.mode!r} (8-bit gray or RGB only)")


def load_image(path) -> GrayImage:
    """Load a PGM (P2/P5) or PNG file as a GrayImage scaled into [0,1]."""
    path = str(path)
    with open(path, "rb") as fh:
        head = fh.read(8)
        if head[:2] in (b"P2", b"P5"):
            buf = head + fh.read()
            return _load_pgm(buf, path)
    if head.startswith(b"\x89PNG"):
        return _load_png(path)
    raise FormatError(f"{path}: unsupported image format (PGM P2/P5 or PNG expected)")


def write_pgm(img: GrayImage, path) -> None:
    """Write a GrayImage as binary P5, quantizing to 8 bits."""
    raster = np.rint(img.data * 255.0).astype(np.uint8)
    header = f"P5\n{img.width} {img.height}\n255\n".encode("ascii")
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(raster.tobytes())


# ---------------------------------------------------------------------------
# preprocessing


def equalize_histogram(data: np.ndarray) -> np.ndarray:
    """256-bin histogram equalization onto [0,1]; constant input unchanged."""
    bins = np.clip(np.rint(data * 255.0).astype(np.intp), 0, 255)
    hist = np.bincount(bins.ravel(), minlength=256)
    cdf = np.cumsum(hist)
    total = cdf[-1]
    cdf_min = cdf[np.flatnonzero(hist)[0]]
    if cdf_min == total:
        return data.copy()
    return (cdf[bins] - cdf_min) / float(total - cdf_min)


def _lerp_axis(arr: np.ndarray, out_len: int, axis: int) -> np.ndarray:
    in_len = arr.shape[axis]
    if in_len == out_len:
        return arr
    arr = np.moveaxis(arr, axis, 0)
    if in_len == 1:
        out = np.repeat(arr, out_len, axis=0)
        return np.moveaxis(out, 0, axis)
    if out_len == 1:
        pos = np.array([(in_len - 1) / 2.0])
    else:
        # multiply before dividing so endpoint positions are exact
        pos = np.arange(out_len) * float(in_len - 1) / (out_len - 1)
    i0 = np.minimum(pos.astype(np.intp), in_len - 2)
    t = pos - i0
    lo = arr[i0]
    hi = arr[i0 + 1]
    out = lo + t.reshape((-1,) + (1,) * (arr.ndim - 1)) * (hi - lo)
    return np.moveaxis(out, 0, axis)


def resize_bilinear(data: np.ndarray, out_h: int, out_w: int) -> np.ndarray:
    """Edge-aligned bilinear resize: corners map to corners exactly."""
    if out_h < 1 or out_w < 1:
        raise ValueError("target dimensions must be positive")
    out = _lerp_axis(_lerp_axis(data, out_h, 0), out_w, 1)
    return np.clip(out, 0.0, 1.0)


def preprocess(
    img: GrayImage,
    target_w: int = DEFAULT_SIZE,
    target_h: int = DEFAULT_SIZE,
    equalize: bool = True,
) -> GrayImage:
    """Equalize (optionally), then bilinear-resize to the target size."""
    if target_w < 1 or target_h < 1:
        raise ValueError("target dimensions must be positive")
    data = img.data
    if equalize:
        data = equalize_histogram(data)
    return GrayImage(resize_bilinear(data, target_h, target_w))


# ---------------------------------------------------------------------------
# dataset scanning and splitting

MANIFEST_NAME = "dataset.json"


def _scan_manifest(root: Path, manifest_path: Path) -> LabeledDataset:
    try:
        entries = json.loads(manifest_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DatasetError(f"{manifest_path}: invalid manifest JSON: {exc}") from exc
    if not isinstance(entries, list) or not entries:
        raise DatasetError(f"{manifest_path}: manifest must be a nonempty array")
    records: list[SampleRecord] = []
    payloads: list[GrayImage] = []
    counters: dict[str, int] = {}
    for entry in entries:
        if not isinstance(entry, dict) or "subject" not in entry or "path" not in entry:
            raise DatasetError(f"{manifest_path}: manifest entries need 'subject' and 'path'")
        subject = str(entry["subject"])
        rel = Path(str(entry["path"]))
        full = rel if rel.is_absolute() else root / rel
        img = load_image(full)
        idx = counters.get(subject, 0)
        counters[subject] = idx + 1
        records.append(SampleRecord(subject, idx, str(full)))
        payloads.append(img)
    class_set = sorted(counters)
    return LabeledDataset(records, payloads, class_set)


def scan_dataset(root) -> LabeledDataset:
    """Build a LabeledDataset from <root>/<subject>/<images>.

    A dataset.json manifest at root ([{subject, path}, ...]) overrides
    directory scanning; manifest order defines sample_index per subject.
    Otherwise subject_id is the subdirectory name and sample_index ranks
    readable files lexicographically.
    """
    root = Path(root)
    if not root.is_dir():
        raise DatasetError(f"{root}: dataset root is not a directory")
    manifest = root / MANIFEST_NAME
    if manifest.is_file():
        return _scan_manifest(root, manifest)

    subjects = sorted(p for p in root.iterdir() if p.is_dir())
    if not subjects:
        raise DatasetError(f"{root}: no subject directories found")
    records: list[SampleRecord] = []
    payloads: list[GrayImage] = []
    class_set: list[str] = []
    for subdir in subjects:
        loaded: list[tuple[str, GrayImage]] = []
        for name in sorted(p.name for p in subdir.iterdir() if p.is_file()):
            full = subdir / name
            try:
                loaded.append((str(full), load_image(str(full))))
            except (FormatError, OSError) as exc:
                warnings.warn(f"skipping unreadable image {full}: {exc}")
        if not loaded:
            warnings.warn(f"skipping subject {subdir.name!r}: no readable images")
            continue
        class_set.append(subdir.name)
        for idx, (path, img) in enumerate(loaded):
            records.append(SampleRecord(subdir.name, idx, path))
            payloads.append(img)
    if not records:
        raise DatasetError(f"{root}: every subject was skipped")
    return LabeledDataset(records, payloads, class_set)


def _subject_rng(seed: int, subject: str) -> np.random.Generator:
    digest = hashlib.sha256(subject.encode("utf-8")).digest()
    return np.random.default_rng([seed & 0xFFFFFFFFFFFFFFFF, int.from_bytes(digest[:8], "big")])


def split_dataset(ds: LabeledDataset, spec: SplitSpec) -> tuple[LabeledDataset, LabeledDataset]:
    """Partition per subject; both sides keep the full class_set."""
    by_subject: dict[str, list[int]] = {c: [] for c in ds.class_set}
    for pos, rec in enumerate(ds.records):
        by_subject[rec.subject_id].append(pos)

    train_pos: list[int] = []
    test_pos: list[int] = []
    for subject in ds.class_set:
        positions = sorted(by_subject[subject], key=lambda p: ds.records[p].sample_index)
        n = len(positions)
        if spec.mode == "per-subject-count":
            take = int(spec.train_amount)
            if n < take + 1:
                raise SplitError(
                    f"subject {subject!r} has {n} samples, needs >= {take + 1} "
                    f"for per-subject-count {take}"
                )
        else:
            if n < 2:
                raise SplitError(f"subject {subject!r} has {n} samples, fraction split needs >= 2")
            take = min(n - 1, max(1, round(float(spec.train_amount) * n)))
        if spec.shuffle_seed is not None:
            order = _subject_rng(spec.shuffle_seed, subject).permutation(n)
            positions = [positions[i] for i in order]
        train_pos.extend(positions[:take])
        test_pos.extend(positions[take:])

    def take_rows(rows: list[int]) -> LabeledDataset:
        return LabeledDataset(
            [ds.records[i] for i in rows],
            [ds.payloads[i] for i in rows],
            list(ds.class_set),
        )

    return take_rows(train_pos), take_rows(test_pos)
