"""
Wavelet decomposition and the sub-band energy descriptor
========================================================

Decomposes an image with the Haar and Daubechies-8 filter banks, checks
perfect reconstruction, and prints the energy descriptor built from the
sub-band statistics.

Run with:  python3 demos/02_wavelets.py
"""

import numpy as np

from veintex import dwt2, dwt_descriptor, get_filter, idwt2, texture_suite

img = texture_suite(count=1, size=64, seed=11)[0]

for name in ("haar", "db8"):
    filt = get_filter(name)
    print(f"=== {name}: {filt.lowpass.size} taps ===")

    # three-level decomposition: one approximation + 3 detail bands per level
    pyr = dwt2(img, filt, levels=3)
    print(f"approximation: {pyr.approximation.shape}")
    for lvl, (lh, hl, hh) in enumerate(pyr.details, start=1):
        energy = [float(np.sum(b**2)) for b in (lh, hl, hh)]
        print(
            f"level {lvl}: bands {lh.shape}, "
            f"energy LH={energy[0]:.3f} HL={energy[1]:.3f} HH={energy[2]:.3f}"
        )

    # the transform is orthonormal, so inverting it recovers the image
    back = idwt2(pyr, filt)
    print(f"reconstruction max error: {np.abs(back - img.data).max():.2e}")

    vec = dwt_descriptor(img, filt, levels=3)
    print(f"descriptor {vec.descriptor}: {vec.values.size} values")
    print("  " + " ".join(f"{v:.3f}" for v in vec.values[:10]) + " ...\n")

# vanishing moments are what distinguish db8 from haar: its highpass
# filter annihilates polynomials up to degree 7
h = get_filter("db8").highpass
n = np.arange(h.size, dtype=np.float64)
sums = [abs((h * n**p).sum()) for p in range(8)]
print("db8 highpass moment sums p=0..7:")
print("  " + " ".join(f"{s:.1e}" for s in sums))
