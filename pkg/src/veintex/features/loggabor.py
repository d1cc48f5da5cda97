"""Log-Gabor filter bank in the frequency domain and its pooled descriptor."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..dataset_io import GrayImage
from .vector import FeatureVector

DEFAULT_SCALES = 4
DEFAULT_ORIENTATIONS = 6
DEFAULT_MIN_WAVELENGTH = 4.0
DEFAULT_MULT = 2.0
DEFAULT_RATIO = 0.55


def log_gabor_transfer(w, w0: float, ratio: float):
    """Radial transfer exp(-log^2(w/w0) / (2 log^2(ratio))); 0 at w = 0.

    Accepts a scalar or array of frequencies w >= 0.
    """
    if w0 <= 0:
        raise ValueError("center frequency w0 must be positive")
    if not 0.0 < ratio < 1.0:
        raise ValueError("bandwidth ratio must lie in (0,1) for a bandpass filter")
    w_arr = np.asarray(w, dtype=np.float64)
    scalar = w_arr.ndim == 0
    if scalar:
        w_arr = w_arr[None]
    if np.any(w_arr < 0):
        raise ValueError("frequencies must be nonnegative")
    out = np.zeros_like(w_arr)
    nz = w_arr > 0
    denom = 2.0 * np.log(ratio) ** 2
    out[nz] = np.exp(-np.log(w_arr[nz] / w0) ** 2 / denom)
    return float(out[0]) if scalar else out


@dataclass(frozen=True)
class LogGaborBank:
    """S x O frequency-domain filters laid out to multiply np.fft.fft2 output."""

    width: int
    height: int
    scales: int
    orientations: int
    center_frequencies: tuple[float, ...]
    ratio: float
    angular_sigma: float
    filters: np.ndarray  # shape (S, O, height, width), values in [0,1]


def build_log_gabor_bank(
    width: int,
    height: int,
    scales: int = DEFAULT_SCALES,
    orientations: int = DEFAULT_ORIENTATIONS,
    min_wavelength: float = DEFAULT_MIN_WAVELENGTH,
    mult: float = DEFAULT_MULT,
    ratio: float = DEFAULT_RATIO,
    angular_sigma: float | None = None,
) -> LogGaborBank:
    """Build the S x O bank; scale s has w0 = 1/(min_wavelength * mult**(s-1)).

    angular_sigma defaults to 0.6 * pi / orientations.
    """
    if width < 1 or height < 1:
        raise ValueError("grid dimensions must be positive")
    if scales < 1 or orientations < 1:
        raise ValueError("scales and orientations must be >= 1")
    if min_wavelength < 2:
        raise ValueError("min_wavelength must be >= 2 pixels (Nyquist)")
    if mult <= 0:
        raise ValueError("mult must be positive")
    if angular_sigma is None:
        angular_sigma = 0.6 * np.pi / orientations
    if angular_sigma <= 0:
        raise ValueError("angular_sigma must be positive")

    fy = np.fft.fftfreq(height)[:, None]
    fx = np.fft.fftfreq(width)[None, :]
    radius = np.hypot(fy, fx)
    theta = np.arctan2(fy, fx)

    w0s = tuple(1.0 / (min_wavelength * mult ** (s - 1)) for s in range(1, scales + 1))
    filters = np.zeros((scales, orientations, height, width))
    for si, w0 in enumerate(w0s):
        radial = log_gabor_transfer(radius, w0, ratio)
        for oi in range(orientations):
            angle = oi * np.pi / orientations
            dtheta = np.arctan2(np.sin(theta - angle), np.cos(theta - angle))
            filters[si, oi] = radial * np.exp(-(dtheta**2) / (2.0 * angular_sigma**2))
    return LogGaborBank(
        width, height, scales, orientations, w0s, ratio, float(angular_sigma), filters
    )


def log_gabor_descriptor(img, bank: LogGaborBank) -> FeatureVector:
    """Mean and std of each filter's response magnitude; dim = 2 * S * O.

    Ordering is scale-major, then orientation, mean before std per filter.
    """
    data = img.data if isinstance(img, GrayImage) else np.asarray(img, dtype=np.float64)
    if data.shape != (bank.height, bank.width):
        raise ValueError(f"image shape {data.shape} != bank grid {(bank.height, bank.width)}")
    spectrum = np.fft.fft2(data)
    stats = []
    for si in range(bank.scales):
        for oi in range(bank.orientations):
            magnitude = np.abs(np.fft.ifft2(spectrum * bank.filters[si, oi]))
            stats.append(magnitude.mean())
            stats.append(magnitude.std())
    return FeatureVector("LOGGABOR", np.array(stats))
