"""Local phase quantization: signs of four local DFT coefficients.

At each pixel with a full M-by-M window, the local 2-D DFT
F(u, x) = sum_y f(x - y) exp(-j 2 pi u.y) is evaluated at
u1=(a,0), u2=(0,a), u3=(a,a), u4=(a,-a), a = 1/M, with the first
component along rows. The window's center value is subtracted before
the transform: the four kernels sum to zero, so F is mathematically
unchanged, while an all-equal window then yields exact +0.0 and the
sign-of-zero rule quantizes every bit to 1 (code 255).
"""

from __future__ import annotations

import numpy as np

from ..dataset_io import GrayImage
from .vector import FeatureVector

DEFAULT_WINDOW = 7


def _kernels(window: int) -> np.ndarray:
    """The four M x M complex kernels exp(+j 2 pi u.t), t in [-r, r]^2."""
    r = (window - 1) // 2
    t = np.arange(-r, r + 1)
    pos = np.exp(2j * np.pi * t / window)
    one = np.ones(window, dtype=complex)
    pairs = ((pos, one), (one, pos), (pos, pos), (pos, pos.conj()))
    return np.stack([np.outer(krow, kcol) for krow, kcol in pairs])


def lpq_codes(data, window: int = DEFAULT_WINDOW) -> np.ndarray:
    """Codes for every pixel whose window fits; shape (H-M+1, W-M+1)."""
    if window < 3 or window % 2 == 0:
        raise ValueError(f"LPQ window must be an odd integer >= 3, got {window}")
    data = data.data if isinstance(data, GrayImage) else np.asarray(data, dtype=np.float64)
    r = (window - 1) // 2
    win = np.lib.stride_tricks.sliding_window_view(data, (window, window))
    centered = win - win[..., r, r][..., None, None]
    coeff = np.tensordot(centered, _kernels(window), axes=([2, 3], [1, 2]))
    values = np.concatenate([coeff.real, coeff.imag], axis=-1)
    bits = values >= 0.0
    weights = (1 << np.arange(8)).astype(np.intp)
    return (bits @ weights).astype(np.intp)


def lpq_descriptor(img, window: int = DEFAULT_WINDOW) -> FeatureVector:
    """Normalized 256-bin histogram of LPQ codes; dim = 256."""
    if window < 3 or window % 2 == 0:
        raise ValueError(f"LPQ window must be an odd integer >= 3, got {window}")
    data = img.data if isinstance(img, GrayImage) else np.asarray(img, dtype=np.float64)
    if data.ndim != 2 or min(data.shape) < window:
        raise ValueError(f"LPQ needs an image of at least {window}x{window}, got {data.shape}")
    codes = lpq_codes(data, window)
    hist = np.bincount(codes.ravel(), minlength=256).astype(np.float64)
    return FeatureVector("LPQ", hist / hist.sum())
