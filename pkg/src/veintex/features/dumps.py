"""Line-oriented feature dump files.

One line per sample: subject_id<TAB>sample_index<TAB>descriptor<TAB>v1,v2,...
with values at 17 significant digits, so a dump round-trips float64 exactly
and re-extraction writes byte-identical files.
"""

from __future__ import annotations

import numpy as np

from ..canonjson import format_float
from ..dataset_io import SampleRecord
from .vector import FeatureVector


def write_feature_dump(path, records: list[SampleRecord], vectors: list[FeatureVector]) -> None:
    if len(records) != len(vectors):
        raise ValueError("records and vectors must be parallel")
    lines = []
    for rec, vec in zip(records, vectors):
        if "\t" in rec.subject_id:
            raise ValueError(f"subject id {rec.subject_id!r} contains a tab")
        values = ",".join(format_float(v) for v in vec.values)
        lines.append(f"{rec.subject_id}\t{rec.sample_index}\t{vec.descriptor}\t{values}\n")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.writelines(lines)


def read_feature_dump(path) -> list[tuple[str, int, FeatureVector]]:
    out = []
    with open(path, "r", encoding="utf-8") as fh:
        for ln, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 4:
                raise ValueError(f"{path}:{ln}: expected 4 tab-separated fields")
            subject, idx_str, tag, values_str = parts
            values = np.array([float(v) for v in values_str.split(",")])
            out.append((subject, int(idx_str), FeatureVector(tag, values)))
    return out
