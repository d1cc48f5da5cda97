"""Feature dump files: format, precision, and round-trip fidelity."""

import numpy as np
import pytest

from veintex import (
    FeatureVector,
    SampleRecord,
    read_feature_dump,
    write_feature_dump,
)


def _records_and_vectors(rng, n=5, dim=7):
    records = [SampleRecord(f"s{i % 2}", i // 2, f"mem://{i}") for i in range(n)]
    vectors = [FeatureVector("LPQ", rng.random(dim)) for _ in range(n)]
    return records, vectors


def test_roundtrip_exact(rng, tmp_path):
    records, vectors = _records_and_vectors(rng)
    path = tmp_path / "dump.tsv"
    write_feature_dump(path, records, vectors)
    back = read_feature_dump(path)
    assert len(back) == 5
    for (subject, idx, vec), rec, orig in zip(back, records, vectors):
        assert subject == rec.subject_id
        assert idx == rec.sample_index
        assert vec.descriptor == "LPQ"
        # 17-significant-digit reals survive the round trip bit-exactly
        assert np.array_equal(vec.values, orig.values)


def test_line_format(rng, tmp_path):
    records, vectors = _records_and_vectors(rng, n=2, dim=3)
    path = tmp_path / "dump.tsv"
    write_feature_dump(path, records, vectors)
    lines = path.read_text().splitlines()
    assert len(lines) == 2
    fields = lines[0].split("\t")
    assert fields[0] == "s0"
    assert fields[1] == "0"
    assert fields[2] == "LPQ"
    assert len(fields[3].split(",")) == 3


def test_write_is_deterministic(rng, tmp_path):
    records, vectors = _records_and_vectors(rng)
    a = tmp_path / "a.tsv"
    b = tmp_path / "b.tsv"
    write_feature_dump(a, records, vectors)
    write_feature_dump(b, records, vectors)
    assert a.read_bytes() == b.read_bytes()


def test_garbled_line_rejected(tmp_path):
    path = tmp_path / "bad.tsv"
    path.write_text("s0\tnot_an_int\tLPQ\t1.0,2.0\n")
    with pytest.raises(ValueError):
        read_feature_dump(path)


def test_non_numeric_value_rejected(tmp_path):
    path = tmp_path / "bad.tsv"
    path.write_text("s0\t0\tLPQ\t1.0,banana\n")
    with pytest.raises(ValueError):
        read_feature_dump(path)
