"""Classic 3x3 local binary patterns over the whole image."""

from __future__ import annotations

import numpy as np

from ..dataset_io import GrayImage
from .vector import FeatureVector

# 3x3 neighbor offsets clockwise from the top-left corner
_OFFSETS = ((-1, -1), (-1, 0), (-1, 1), (0, 1), (1, 1), (1, 0), (1, -1), (0, -1))


def lbp_codes(data) -> np.ndarray:
    """Per-pixel LBP codes for every interior pixel.

    Bit = 1 when neighbor >= center; top-left neighbor is the most
    significant bit, continuing clockwise.
    """
    data = data.data if isinstance(data, GrayImage) else np.asarray(data, dtype=np.float64)
    center = data[1:-1, 1:-1]
    codes = np.zeros(center.shape, dtype=np.uint8)
    for bit, (dr, dc) in enumerate(_OFFSETS):
        neighbor = data[1 + dr : data.shape[0] - 1 + dr, 1 + dc : data.shape[1] - 1 + dc]
        codes |= (neighbor >= center).astype(np.uint8) << (7 - bit)
    return codes


def lbp_descriptor(img) -> FeatureVector:
    """Normalized 256-bin histogram of 3x3 LBP codes; dim = 256."""
    data = img.data if isinstance(img, GrayImage) else np.asarray(img, dtype=np.float64)
    if data.ndim != 2 or min(data.shape) < 3:
        raise ValueError(f"LBP needs an image of at least 3x3, got {data.shape}")
    codes = lbp_codes(data)
    hist = np.bincount(codes.ravel(), minlength=256).astype(np.float64)
    return FeatureVector("LBP", hist / hist.sum())
