"""Warped phase kernel and localization kernel synthesis.

The transform multiplies the spectrum by a unit-modulus kernel e^{j phi(r)}
whose phase depends only on the frequency radius. The radial profile is the
normalized integral of an arctangent: zero at DC, saturating to the strength
value at the largest radius on the grid, with the warp parameter setting how
fast phase accumulates toward high frequencies. An optional Gaussian low-pass
provides spectral localization; by default it is the all-pass identity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DegenerateParameterError, FrequencyGrid, PstParams

__all__ = [
    "LocalizationKernel",
    "PhaseKernel",
    "build_localization_kernel",
    "build_warped_kernel",
    "phase_profile",
]


def _arctan_integral(x):
    """Antiderivative of atan: x*atan(x) - ln(1 + x^2)/2. Even in x, >= 0."""
    x = np.asarray(x, dtype=np.float64)
    return x * np.arctan(x) - 0.5 * np.log1p(np.square(x))


def phase_profile(r, warp: float, strength: float, r_max: float):
    """Radial kernel phase at radius r, in radians.

    r may be a scalar or an array of radii in [0, r_max]. The profile is
    strength * g(warp * r) / g(warp * r_max) with g the arctangent integral,
    so it is 0 at r = 0, nondecreasing, and exactly `strength` at r_max.
    Linear in strength.
    """
    if warp == 0.0 or r_max == 0.0:
        raise DegenerateParameterError(
            "phase profile is undefined for warp = 0 or r_max = 0 (normalizer vanishes); "
            "use strength = 0 for the identity transform"
        )
    if not (warp > 0.0):
        raise ValueError(f"warp must be positive, got {warp}")
    if not (strength >= 0.0):
        raise ValueError(f"strength must be >= 0, got {strength}")
    if not (r_max > 0.0):
        raise ValueError(f"r_max must be positive, got {r_max}")
    r = np.asarray(r, dtype=np.float64)
    if np.any(r < 0.0) or np.any(r > r_max):
        raise ValueError("radii must lie in [0, r_max]")
    out = strength * _arctan_integral(warp * r) / _arctan_integral(warp * r_max)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class PhaseKernel:
    """Per-bin kernel phase phi and the complex multiplier e^{j phi}.

    phi is radially symmetric on the grid (even symmetry bin for bin),
    lies in [0, strength], vanishes at DC, and reaches strength at the
    bin(s) of largest radius. kernel has unit modulus everywhere.
    """

    phi: np.ndarray
    kernel: np.ndarray
    grid: FrequencyGrid
    params: PstParams


@dataclass(frozen=True)
class LocalizationKernel:
    """Real spectral weights in [0, 1]; sigma None means the identity."""

    weights: np.ndarray
    sigma: float | None


def build_warped_kernel(grid: FrequencyGrid, params: PstParams) -> PhaseKernel:
    """Synthesize the warped phase kernel for a grid.

    Requires warp > 0 (the profile normalizer vanishes at warp = 0);
    strength = 0 gives the identity kernel.
    """
    phi = phase_profile(grid.r, params.warp, params.strength, grid.r_max)
    return PhaseKernel(phi=phi, kernel=np.exp(1j * phi), grid=grid, params=params)


def build_localization_kernel(grid: FrequencyGrid, sigma: float | None = None) -> LocalizationKernel:
    """Gaussian low-pass weights exp(-r^2 / (2 sigma^2)); None gives the identity."""
    if sigma is None:
        return LocalizationKernel(weights=np.ones(grid.shape), sigma=None)
    if not (sigma > 0.0):
        raise ValueError(f"sigma must be positive or None, got {sigma}")
    weights = np.exp(-np.square(grid.r) / (2.0 * float(sigma) ** 2))
    return LocalizationKernel(weights=weights, sigma=float(sigma))
