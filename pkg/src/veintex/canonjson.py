"""Canonical JSON serialization for artifacts that must be byte-stable.

Model dumps, fused schemas, and run reports are compared byte-for-byte
across runs, so the encoding is fixed: sorted keys, no whitespace, floats
at 17 significant digits (enough to round-trip any float64 exactly).
"""

import json
import math


def format_float(v: float) -> str:
    """Render a float at 17 significant digits, always as a JSON float."""
    if not math.isfinite(v):
        raise ValueError(f"non-finite value {v!r} cannot be serialized")
    s = "%.17g" % v
    # keep a decimal point so json.load returns float, not int
    if "." not in s and "e" not in s and "n" not in s:
        s += ".0"
    return s


def dumps_canonical(obj) -> str:
    """Serialize dicts/lists/scalars to canonical JSON text."""
    parts: list[str] = []
    _emit(obj, parts)
    return "".join(parts)


def _emit(obj, parts: list[str]) -> None:
    if obj is None or obj is True or obj is False:
        parts.append(json.dumps(obj))
    elif isinstance(obj, str):
        parts.append(json.dumps(obj, ensure_ascii=False))
    elif isinstance(obj, bool):  # pragma: no cover - caught by identity above
        parts.append(json.dumps(obj))
    elif isinstance(obj, int):
        parts.append(str(obj))
    elif isinstance(obj, float):
        parts.append(format_float(obj))
    elif isinstance(obj, dict):
        parts.append("{")
        for i, key in enumerate(sorted(obj)):
            if not isinstance(key, str):
                raise TypeError(f"JSON object keys must be str, got {key!r}")
            if i:
                parts.append(",")
            parts.append(json.dumps(key, ensure_ascii=False))
            parts.append(":")
            _emit(obj[key], parts)
        parts.append("}")
    elif isinstance(obj, (list, tuple)):
        parts.append("[")
        for i, item in enumerate(obj):
            if i:
                parts.append(",")
            _emit(item, parts)
        parts.append("]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__} canonically")


def write_canonical(path, obj) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_canonical(obj))
        fh.write("\n")


def read_json(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)
