"""Z-score normalization and feature-level fusion by concatenation."""

import numpy as np
import pytest

from veintex import (
    FeatureVector,
    FusedSchema,
    ZScoreParams,
    apply_zscore,
    fit_zscore,
    fuse_concat,
    load_schema,
    save_schema,
)


class TestFitZscore:
    def test_unit_spaced_triple(self):
        p = fit_zscore(np.array([[1.0], [2.0], [3.0]]))
        assert p.mu[0] == 2.0
        assert p.sigma[0] == 1.0  # divisor N-1
        assert list(p.dropped) == []

    def test_constant_column_dropped(self):
        p = fit_zscore(np.array([[1.0, 5.0], [2.0, 5.0], [3.0, 5.0]]))
        assert p.sigma[1] == 0.0
        assert list(p.dropped) == [1]

    def test_identical_vectors_all_dropped_with_warning(self):
        with pytest.warns(UserWarning):
            p = fit_zscore(np.array([[4.0, 7.0], [4.0, 7.0]]))
        assert list(p.dropped) == [0, 1]

    def test_single_vector_rejected(self):
        with pytest.raises(ValueError):
            fit_zscore(np.array([[1.0, 2.0]]))


class TestApplyZscore:
    def test_unit_spaced_triple_maps_to_centered(self):
        train = np.array([[1.0], [2.0], [3.0]])
        p = fit_zscore(train)
        got = np.array([apply_zscore(row, p) for row in train])
        assert np.allclose(got.ravel(), [-1.0, 0.0, 1.0])

    def test_mean_input_maps_to_zero(self, rng):
        train = rng.random((10, 4))
        p = fit_zscore(train)
        assert np.abs(apply_zscore(p.mu, p)).max() == 0.0

    def test_dropped_dimensions_output_zero(self):
        train = np.array([[1.0, 5.0], [3.0, 5.0]])
        p = fit_zscore(train)
        out = apply_zscore(np.array([2.0, 99.0]), p)
        assert out[1] == 0.0

    def test_train_matrix_standardized(self, rng):
        train = rng.random((25, 8)) * 3.0
        p = fit_zscore(train)
        z = np.array([apply_zscore(row, p) for row in train])
        assert np.abs(z.mean(axis=0)).max() <= 1e-10
        assert np.abs(z.std(axis=0, ddof=1) - 1.0).max() <= 1e-10

    def test_dimension_mismatch_rejected(self):
        p = fit_zscore(np.array([[1.0], [2.0]]))
        with pytest.raises(ValueError):
            apply_zscore(np.array([1.0, 2.0]), p)


class TestFuseConcat:
    def _parts(self, rng, dims=(6, 3)):
        parts = []
        for d in dims:
            train = rng.random((12, d)) + 0.2
            parts.append((train, fit_zscore(train)))
        return parts

    def test_dimensions_add_up(self, rng):
        parts = self._parts(rng)
        fused = fuse_concat([(parts[0][0][0], parts[0][1]), (parts[1][0][0], parts[1][1])])
        assert isinstance(fused, FeatureVector)
        assert fused.descriptor == "FUSED"
        assert len(fused.values) == 9

    def test_order_is_significant(self, rng):
        parts = self._parts(rng, (4, 4))
        a = fuse_concat([(parts[0][0][0], parts[0][1]), (parts[1][0][0], parts[1][1])])
        b = fuse_concat([(parts[1][0][0], parts[1][1]), (parts[0][0][0], parts[0][1])])
        assert np.allclose(a.values[:4], b.values[4:])
        assert np.allclose(a.values[4:], b.values[:4])

    def test_single_part_rejected(self, rng):
        parts = self._parts(rng, (4,))
        with pytest.raises(ValueError):
            fuse_concat([(parts[0][0][0], parts[0][1])])

    def test_blockwise_distance_decomposition(self, rng):
        # fused squared euclidean distance = sum of the parts' squared distances
        parts = self._parts(rng, (5, 7))
        (xa, pa), (xb, pb) = parts
        f = lambda i: fuse_concat([(xa[i], pa), (xb[i], pb)]).values
        for i, j in [(0, 1), (2, 9), (4, 5)]:
            whole = np.sum((f(i) - f(j)) ** 2)
            pa_d = np.sum((apply_zscore(xa[i], pa) - apply_zscore(xa[j], pa)) ** 2)
            pb_d = np.sum((apply_zscore(xb[i], pb) - apply_zscore(xb[j], pb)) ** 2)
            assert abs(whole - (pa_d + pb_d)) <= 1e-9

    def test_shift_invariance(self, rng):
        # adding a constant to a raw dimension is absorbed by centering
        train = rng.random((10, 4))
        p1 = fit_zscore(train)
        shifted = train.copy()
        shifted[:, 2] += 13.5
        p2 = fit_zscore(shifted)
        for i in range(10):
            a = apply_zscore(train[i], p1)
            b = apply_zscore(shifted[i], p2)
            assert np.abs(a - b).max() <= 1e-9


class TestSchema:
    def test_roundtrip(self, rng, tmp_path):
        train = rng.random((8, 3))
        schema = FusedSchema((("LPQ", 3, fit_zscore(train)),))
        path = tmp_path / "schema.json"
        save_schema(schema, path)
        back = load_schema(path)
        assert back.total_dim == schema.total_dim == 3
        tag, dim, params = back.parts[0]
        assert (tag, dim) == ("LPQ", 3)
        orig = schema.parts[0][2]
        assert np.array_equal(params.mu, orig.mu)
        assert np.array_equal(params.sigma, orig.sigma)
        assert list(params.dropped) == list(orig.dropped)
