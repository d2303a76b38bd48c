"""The stretch operator and its phase readout in 2-D and 1-D.

The operator filters the input spectrum with the warped phase kernel (and an
optional localization kernel) and returns the complex spatial field; the
feature map is the per-pixel four-quadrant angle of that field, in (-pi, pi].
Boundary semantics are circular, inherited from the DFT. Inputs are never
pre-normalized: the transform's response scales inversely with local
brightness, which is the property under test elsewhere.
"""

from __future__ import annotations

import warnings

import numpy as np

from .core import PstParams, as_image, forward_spectrum, inverse_field, make_frequency_grid
from .kernel import LocalizationKernel, PhaseKernel, build_localization_kernel, build_warped_kernel

__all__ = [
    "ZeroBrightnessWarning",
    "pst",
    "pst_1d",
    "stretch_operator",
]


class ZeroBrightnessWarning(UserWarning):
    """The input image is identically zero; the phase map is all zeros."""


def _wrap_angle(field: np.ndarray) -> np.ndarray:
    """Four-quadrant angle folded into (-pi, pi]; the angle of 0+0j is 0."""
    phase = np.angle(field)
    # np.angle can return exactly -pi (negative real axis with imag == -0.0);
    # fold that endpoint onto +pi so the open interval invariant holds.
    phase[phase == -np.pi] = np.pi
    return phase


def stretch_operator(img, pk: PhaseKernel, lk: LocalizationKernel) -> np.ndarray:
    """Apply the dispersive phase kernel in the spectral domain.

    Returns the complex field inverse_field(kernel * weights * spectrum).
    With strength 0 and an identity localization kernel this is the round
    trip through the DFT, i.e. the input itself up to rounding.
    """
    arr = as_image(img)
    if pk.kernel.shape != arr.shape:
        raise ValueError(f"phase kernel shape {pk.kernel.shape} != image shape {arr.shape}")
    if lk.weights.shape != arr.shape:
        raise ValueError(f"localization kernel shape {lk.weights.shape} != image shape {arr.shape}")
    return inverse_field(pk.kernel * lk.weights * forward_spectrum(arr))


def pst(img, params: PstParams) -> np.ndarray:
    """Phase feature map of a raster: angle of the stretch operator output.

    Accepts (rows, cols) rasters, including single-column or single-row
    traces; every axis of extent > 1 is transformed, and at least one such
    axis must exist. The result has the input shape with values in
    (-pi, pi]. Constant images map to an identically zero phase (the DC bin
    carries no kernel phase), and an all-zero image additionally raises a
    ZeroBrightnessWarning.
    """
    arr = as_image(img)
    if max(arr.shape) < 2:
        raise ValueError("image must have at least 2 samples along a transformed axis")
    if not arr.any():
        warnings.warn(
            "input image is identically zero; phase of 0+0j is defined as 0",
            ZeroBrightnessWarning,
            stacklevel=2,
        )
    grid = make_frequency_grid(*arr.shape)
    pk = build_warped_kernel(grid, params)
    lk = build_localization_kernel(grid, params.localization_sigma)
    return _wrap_angle(stretch_operator(arr, pk, lk))


def pst_1d(signal, params: PstParams) -> np.ndarray:
    """Phase feature map of a 1-D trace (radial frequency reduces to |u|).

    Accepts a flat array or a single-column raster of length >= 2 and
    returns the phase trace in the same layout.
    """
    arr = np.asarray(signal, dtype=np.float64)
    flat = arr.ndim == 1
    if not flat and (arr.ndim != 2 or arr.shape[1] != 1):
        raise ValueError(f"expected a 1-D trace or single-column raster, got shape {arr.shape}")
    if arr.shape[0] < 2:
        raise ValueError("trace must have at least 2 samples")
    phase = pst(arr.reshape(-1, 1), params)
    return phase[:, 0] if flat else phase
