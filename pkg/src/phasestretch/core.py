"""Shared domain types, frequency grids, and the DFT convention.

Conventions used by every other module:

- Rasters are real 2-D float arrays of shape (rows, cols); a 1-D trace is a
  single-column array. Intensities are arbitrary finite reals, never rescaled.
- Frequencies are in cycles/sample with standard DFT bin ordering: bin k maps
  to k/N for k < N/2 and to (k - N)/N above. The axis-0 frequency is u, the
  axis-1 frequency is v, and r = sqrt(u^2 + v^2).
- The forward transform is unnormalized (e^{-j 2 pi u x} sign); the inverse
  carries the 1/(rows*cols) factor.

Everything here is a pure function of its inputs; returned values are safe to
share across threads as long as callers do not mutate them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "DegenerateParameterError",
    "FrequencyGrid",
    "PstParams",
    "as_image",
    "forward_spectrum",
    "inverse_field",
    "make_frequency_grid",
]


class DegenerateParameterError(ValueError):
    """Kernel parameters for which the phase profile is undefined."""


def as_image(pixels) -> np.ndarray:
    """Coerce raster data to a float64 (rows, cols) array and validate it.

    1-D input becomes a single-column trace. Integer rasters are converted
    to floats without rescaling. Empty shapes and non-finite values are
    rejected.
    """
    arr = np.asarray(pixels, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr[:, np.newaxis]
    if arr.ndim != 2:
        raise ValueError(f"expected a 1-D or 2-D raster, got {arr.ndim} dimensions")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"raster has an empty dimension: shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("raster contains non-finite values")
    return arr


def _as_field(values) -> np.ndarray:
    """Like :func:`as_image` but for complex-valued fields/spectra."""
    arr = np.asarray(values)
    if not np.iscomplexobj(arr):
        arr = arr.astype(np.float64)
    if arr.ndim == 1:
        arr = arr[:, np.newaxis]
    if arr.ndim != 2:
        raise ValueError(f"expected a 1-D or 2-D field, got {arr.ndim} dimensions")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"field has an empty dimension: shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("field contains non-finite values")
    return arr


@dataclass(frozen=True)
class FrequencyGrid:
    """DFT-ordered frequency coordinates for a (rows, cols) raster.

    u and v are full per-bin arrays in cycles/sample (u varies along axis 0,
    v along axis 1). r is the per-bin radius and r_max its maximum, which is
    zero only for the degenerate 1x1 grid.

    Layout is conjugate-symmetric: bin (j, k) and bin (-j mod rows,
    -k mod cols) carry negated (u, v), except the self-paired Nyquist
    bins of even-sized axes, which are their own mirror image.
    """

    u: np.ndarray
    v: np.ndarray
    r: np.ndarray
    r_max: float

    @property
    def shape(self) -> tuple[int, int]:
        return self.r.shape

    @property
    def rows(self) -> int:
        return self.r.shape[0]

    @property
    def cols(self) -> int:
        return self.r.shape[1]


@dataclass(frozen=True)
class PstParams:
    """Parameters of the warped-phase transform.

    strength is the peak kernel phase (radians), reached at r_max; warp
    controls how the phase concentrates toward high frequencies.
    localization_sigma is the Gaussian low-pass cutoff in cycles/sample,
    or None for the all-pass identity. threshold_min/threshold_max are the
    phase thresholds (radians) used when binarizing feature maps; the
    defaults are an arbitrary rendering choice. taylor_order is the even
    truncation order used by the closed-form small-phase readout.
    """

    strength: float
    warp: float
    localization_sigma: float | None = None
    taylor_order: int = 4
    threshold_min: float = -0.1
    threshold_max: float = 0.1

    def __post_init__(self):
        if not (self.strength >= 0.0):
            raise ValueError(f"strength must be >= 0, got {self.strength}")
        if not (self.warp >= 0.0):
            raise ValueError(f"warp must be >= 0, got {self.warp}")
        if self.localization_sigma is not None and not (self.localization_sigma > 0.0):
            raise ValueError(
                f"localization_sigma must be positive or None, got {self.localization_sigma}"
            )
        if self.taylor_order < 2 or self.taylor_order % 2 != 0:
            raise ValueError(f"taylor_order must be an even integer >= 2, got {self.taylor_order}")
        if not (self.threshold_min <= 0.0 <= self.threshold_max):
            raise ValueError(
                f"thresholds must straddle zero, got [{self.threshold_min}, {self.threshold_max}]"
            )


def make_frequency_grid(rows: int, cols: int) -> FrequencyGrid:
    """Build the DFT-ordered frequency grid for a rows x cols raster."""
    if rows < 1 or cols < 1:
        raise ValueError(f"grid dimensions must be >= 1, got {rows}x{cols}")
    u = np.broadcast_to(np.fft.fftfreq(rows)[:, np.newaxis], (rows, cols)).copy()
    v = np.broadcast_to(np.fft.fftfreq(cols)[np.newaxis, :], (rows, cols)).copy()
    r = np.hypot(u, v)
    return FrequencyGrid(u=u, v=v, r=r, r_max=float(r.max()))


def forward_spectrum(img) -> np.ndarray:
    """Unnormalized forward DFT of a raster or complex field (complex output)."""
    return np.fft.fft2(_as_field(img))


def inverse_field(spec) -> np.ndarray:
    """Inverse DFT with the 1/(rows*cols) normalization (complex output)."""
    return np.fft.ifft2(_as_field(spec))
