"""Binary edge maps from phase maps, plus a conventional gradient baseline."""

from __future__ import annotations

import numpy as np
from scipy import ndimage

from .core import as_image

__all__ = [
    "derivative_baseline",
    "morphological_clean",
    "threshold_feature_map",
]

_EIGHT_CONNECTED = np.ones((3, 3), dtype=int)


def threshold_feature_map(fm, tmin: float, tmax: float) -> np.ndarray:
    """Boolean map of phase excursions outside [tmin, tmax] (strict bounds).

    tmin <= 0 <= tmax is required; with tmin = tmax = 0 every nonzero phase
    sets a bit.
    """
    if not (tmin <= 0.0 <= tmax):
        raise ValueError(f"thresholds must satisfy tmin <= 0 <= tmax, got [{tmin}, {tmax}]")
    arr = np.asarray(fm, dtype=np.float64)
    return (arr > tmax) | (arr < tmin)


def morphological_clean(em, max_isolated_size: int) -> np.ndarray:
    """Remove 8-connected components of at most max_isolated_size pixels.

    0 disables cleaning. Idempotent: surviving components always exceed the
    size threshold.
    """
    if max_isolated_size < 0:
        raise ValueError(f"max_isolated_size must be >= 0, got {max_isolated_size}")
    bits = np.asarray(em, dtype=bool)
    if max_isolated_size == 0 or not bits.any():
        return bits.copy()
    labels, count = ndimage.label(bits, structure=_EIGHT_CONNECTED)
    sizes = np.bincount(labels.ravel(), minlength=count + 1)
    keep = sizes > max_isolated_size
    keep[0] = False  # background
    return keep[labels]


def derivative_baseline(img) -> np.ndarray:
    """3x3 Sobel gradient magnitude with replicate-edge boundary handling.

    The conventional derivative-based detector used for comparisons; unlike
    the phase readout it is invariant to constant brightness offsets.
    Requires at least a 3x3 image.
    """
    arr = as_image(img)
    if arr.shape[0] < 3 or arr.shape[1] < 3:
        raise ValueError(f"gradient baseline needs at least a 3x3 image, got {arr.shape}")
    gx = ndimage.sobel(arr, axis=1, mode="nearest")
    gy = ndimage.sobel(arr, axis=0, mode="nearest")
    return np.hypot(gx, gy)
