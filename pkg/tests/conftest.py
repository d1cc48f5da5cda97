"""Shared fixtures: tiny on-disk datasets and seeded images."""

import numpy as np
import pytest

from veintex import GrayImage, write_corpus, write_pgm


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def random_image(rng):
    return GrayImage(rng.random((32, 32)))


@pytest.fixture
def tiny_root(tmp_path):
    """3 subjects x 4 samples of 32x32 synthetic textures on disk."""
    root = tmp_path / "data"
    write_corpus(root, classes=3, samples=4, size=32, seed=7)
    return root


def make_pgm(path, data):
    write_pgm(GrayImage(np.asarray(data, dtype=np.float64)), path)
    return path
