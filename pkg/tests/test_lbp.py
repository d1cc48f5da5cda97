"""Local binary pattern codes and histogram descriptor."""

import numpy as np
import pytest

from veintex import GrayImage, lbp_codes, lbp_descriptor


def test_constant_image_all_bits_set():
    # the >= convention makes every neighbor comparison succeed
    fv = lbp_descriptor(GrayImage(np.full((8, 8), 0.5)))
    assert fv.descriptor == "LBP"
    assert fv.values[255] == 1.0
    assert fv.values.sum() == pytest.approx(1.0)


def test_center_above_neighbors_codes_zero():
    patch = np.zeros((3, 3))
    patch[1, 1] = 0.5
    fv = lbp_descriptor(GrayImage(patch))
    assert fv.values[0] == 1.0


def test_alternating_neighbors_pinned_code():
    # clockwise from top-left: [9,0,9,0,9,0,9,0] against center 5,
    # top-left carries the most significant bit -> 0b10101010
    patch = np.array(
        [
            [9.0, 0.0, 9.0],
            [0.0, 5.0, 0.0],
            [9.0, 0.0, 9.0],
        ]
    )
    codes = lbp_codes(patch)
    assert codes.shape == (1, 1)
    assert codes[0, 0] == 0b10101010 == 170


def test_codes_cover_interior_only(rng):
    img = rng.random((10, 14))
    assert lbp_codes(img).shape == (8, 12)


def test_histogram_normalized(random_image):
    fv = lbp_descriptor(random_image)
    assert len(fv.values) == 256
    assert fv.values.min() >= 0.0
    assert fv.values.sum() == pytest.approx(1.0, abs=1e-9)


def test_affine_intensity_invariance(rng, random_image):
    # a*v + b with a in (0.1, 5); base scaled so the map stays inside [0,1]
    small = random_image.data * 0.18
    base = lbp_descriptor(GrayImage(small)).values
    for _ in range(5):
        a = rng.uniform(0.1, 5.0)
        b = rng.uniform(0.0, 1.0 - 0.18 * a)
        shifted = GrayImage(a * small + b)
        assert np.abs(lbp_descriptor(shifted).values - base).max() <= 1e-9


def test_deterministic(random_image):
    a = lbp_descriptor(random_image).values
    b = lbp_descriptor(random_image).values
    assert np.array_equal(a, b)


def test_too_small_image_rejected():
    with pytest.raises(ValueError):
        lbp_descriptor(GrayImage(np.zeros((2, 3))))
