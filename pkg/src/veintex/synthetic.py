"""Seeded synthetic texture corpora for benchmarks and property checks.

Each class is an oriented band-pass noise texture: white noise filtered in
the frequency domain by a log-Gaussian radial envelope and a two-sided
angular Gaussian. Classes differ in orientation and wavelength; samples
within a class are fresh noise realizations with jittered parameters and
added pixel noise, so identification is nontrivial but learnable.
"""

from __future__ import annotations

import numpy as np

from .dataset_io import GrayImage, LabeledDataset, SampleRecord, write_pgm
from .features.loggabor import log_gabor_transfer

DEFAULT_SIZE = 128
DEFAULT_CLASSES = 20
DEFAULT_SAMPLES = 10

# corpus geometry: 5 orientations x 4 wavelength bands
_N_ANGLES = 5
_WAVELENGTHS = (4.0, 6.4, 10.24, 16.384)

# per-sample jitter and degradation (tuned so single-descriptor
# recognition is imperfect and fusion has headroom)
_ANGLE_JITTER = 0.05
_WAVELENGTH_JITTER = 0.05
_PIXEL_NOISE = 0.9
_AMPLITUDE = 0.16
_AMPLITUDE_JITTER = 0.25
_RADIAL_RATIO = 0.65
_ANGULAR_SIGMA = 0.35


def class_parameters(class_index: int) -> tuple[float, float]:
    """(orientation radians, wavelength pixels) for one class."""
    angle = (class_index % _N_ANGLES) * np.pi / _N_ANGLES
    wavelength = _WAVELENGTHS[(class_index // _N_ANGLES) % len(_WAVELENGTHS)]
    return angle, wavelength


def oriented_texture(
    rng: np.random.Generator,
    size: int,
    angle: float,
    wavelength: float,
    ratio: float = _RADIAL_RATIO,
    angular_sigma: float = _ANGULAR_SIGMA,
    pixel_noise: float = _PIXEL_NOISE,
    amplitude: float = _AMPLITUDE,
) -> GrayImage:
    """One filtered-noise texture mapped into [0,1]."""
    noise = rng.standard_normal((size, size))
    spectrum = np.fft.fft2(noise)
    fy = np.fft.fftfreq(size)[:, None]
    fx = np.fft.fftfreq(size)[None, :]
    radius = np.hypot(fy, fx)
    radial = log_gabor_transfer(radius, 1.0 / wavelength, ratio)
    # wrap orientation difference modulo pi so the filter is two-sided
    # (keeps the spectrum Hermitian and the field real)
    delta = np.arctan2(fy, fx) - angle
    delta = 0.5 * np.arctan2(np.sin(2.0 * delta), np.cos(2.0 * delta))
    angular = np.exp(-(delta**2) / (2.0 * angular_sigma**2))
    field = np.fft.ifft2(spectrum * radial * angular).real
    field /= field.std() or 1.0
    field += pixel_noise * rng.standard_normal((size, size))
    field /= field.std() or 1.0
    return GrayImage(np.clip(0.5 + amplitude * field, 0.0, 1.0))


def _sample_rng(seed: int, class_index: int, sample_index: int) -> np.random.Generator:
    return np.random.default_rng([seed & 0xFFFFFFFFFFFFFFFF, class_index, sample_index])


def corpus_sample(
    seed: int, class_index: int, sample_index: int, size: int = DEFAULT_SIZE
) -> GrayImage:
    """Deterministic sample: class parameters plus seeded per-sample jitter."""
    rng = _sample_rng(seed, class_index, sample_index)
    angle, wavelength = class_parameters(class_index)
    angle = angle + _ANGLE_JITTER * rng.standard_normal()
    wavelength = wavelength * (1.0 + _WAVELENGTH_JITTER * rng.standard_normal())
    amplitude = _AMPLITUDE * (1.0 + _AMPLITUDE_JITTER * rng.uniform(-1.0, 1.0))
    return oriented_texture(rng, size, angle, wavelength, amplitude=amplitude)


def make_corpus(
    classes: int = DEFAULT_CLASSES,
    samples: int = DEFAULT_SAMPLES,
    size: int = DEFAULT_SIZE,
    seed: int = 0,
) -> LabeledDataset:
    """In-memory labeled corpus of classes x samples textures."""
    if classes < 1 or samples < 1:
        raise ValueError("classes and samples must be >= 1")
    records = []
    payloads = []
    class_set = [f"c{ci:02d}" for ci in range(classes)]
    for ci, subject in enumerate(class_set):
        for si in range(samples):
            records.append(SampleRecord(subject, si, f"synthetic://{subject}/{si}"))
            payloads.append(corpus_sample(seed, ci, si, size))
    return LabeledDataset(records, payloads, class_set)


def write_corpus(root, classes=DEFAULT_CLASSES, samples=DEFAULT_SAMPLES,
                 size=DEFAULT_SIZE, seed: int = 0) -> None:
    """Write the corpus as <root>/<subject>/sNN.pgm for the dataset scanner."""
    from pathlib import Path

    root = Path(root)
    for ci in range(classes):
        subject_dir = root / f"c{ci:02d}"
        subject_dir.mkdir(parents=True, exist_ok=True)
        for si in range(samples):
            write_pgm(corpus_sample(seed, ci, si, size), subject_dir / f"s{si:02d}.pgm")


def texture_suite(count: int = 20, size: int = DEFAULT_SIZE, seed: int = 0) -> list[GrayImage]:
    """`count` textures with distinct parameters, for descriptor property checks."""
    out = []
    for i in range(count):
        rng = _sample_rng(seed, i, 0)
        angle = (i * np.pi / count) % np.pi
        wavelength = 4.0 * (1.0 + (i % 7)) ** 0.5
        out.append(oriented_texture(rng, size, angle, wavelength))
    return out
