"""Closed-form small-phase readout used to cross-check the full transform.

For small kernel phase the complex exponential linearizes, and the phase
readout collapses to a weighted sum of even-order spectral derivatives of the
input divided by the input itself. The weights come from the Taylor expansion
of the radial kernel phase at DC; odd orders vanish by the even symmetry of
the phase. The division by the input is what equalizes brightness: a contrast
step of fixed size produces a response inversely proportional to the local
intensity. This module is deliberately independent of the full operator so
the two can validate each other.

Discrete derivatives are realized spectrally: the order-m derivative
multiplies the spectrum by (j 2 pi r)^m, which for even m is the real
iterated-Laplacian multiplier (-1)^(m/2) (2 pi r)^m. This pairing of
cycles/sample frequencies with the 2 pi factor in the weights is pinned by a
consistency test against the linearized operator.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import mpmath as mp
import numpy as np

from .core import (
    DegenerateParameterError,
    FrequencyGrid,
    PstParams,
    as_image,
    forward_spectrum,
    inverse_field,
    make_frequency_grid,
)
from .kernel import LocalizationKernel, PhaseKernel, build_localization_kernel

__all__ = [
    "BRIGHTNESS_FLOOR_SCALE",
    "BrightnessFloorWarning",
    "TaylorWeights",
    "closed_form_pst",
    "linearized_transform",
    "taylor_coefficients",
]

# Division floor for the closed form: pixels with magnitude below
# BRIGHTNESS_FLOOR_SCALE * max|pixels| are clamped, sign preserved.
BRIGHTNESS_FLOOR_SCALE = 1e-6


class BrightnessFloorWarning(UserWarning):
    """Pixels below the brightness floor were clamped before division."""


@dataclass(frozen=True)
class TaylorWeights:
    """Even-order Taylor data of the radial kernel phase at r = 0.

    phi_derivs maps even m in [2, order] to the m-th radial derivative of
    the phase profile at zero; odd orders are identically zero and carry no
    entry. weights maps m to (-1)^(m/2) * phi_derivs[m] / (m! (2 pi)^m),
    i.e. the factor multiplying the m-th discrete derivative of the input
    in the closed-form response.
    """

    order: int
    phi_derivs: dict[int, float]
    weights: dict[int, float]


def _high_order_derivative(strength: float, warp: float, r_max: float, m: int) -> float:
    # Orders beyond 4 are differentiated numerically; double-precision
    # stencils lose too many digits there, so work at 50 digits.
    with mp.workdps(50):
        w = mp.mpf(repr(warp))
        s = mp.mpf(repr(strength))
        rm = mp.mpf(repr(r_max))

        def profile(t):
            x = w * t
            xm = w * rm
            g = lambda y: y * mp.atan(y) - mp.log(1 + y * y) / 2
            return s * g(x) / g(xm)

        return float(mp.diff(profile, mp.mpf(0), m))


def taylor_coefficients(params: PstParams, grid: FrequencyGrid, order: int) -> TaylorWeights:
    """Taylor derivatives and derivative weights for the kernel phase.

    The leading orders follow in closed form from the series of the
    arctangent-integral profile: with D the profile normalizer,
    phi''(0) = strength * warp^2 / D and phi''''(0) = -2 strength * warp^4 / D.
    Orders above 4 fall back to high-precision numerical differentiation.
    """
    if order < 2 or order % 2 != 0:
        raise ValueError(f"order must be an even integer >= 2, got {order}")
    if params.warp <= 0.0 or grid.r_max <= 0.0:
        raise DegenerateParameterError(
            "Taylor coefficients are undefined for warp = 0 or r_max = 0"
        )
    w, s = params.warp, params.strength
    x_max = w * grid.r_max
    denom = float(x_max * np.arctan(x_max) - 0.5 * np.log1p(x_max**2))
    derivs: dict[int, float] = {2: s * w**2 / denom}
    if order >= 4:
        derivs[4] = -2.0 * s * w**4 / denom
    for m in range(6, order + 1, 2):
        derivs[m] = _high_order_derivative(s, w, grid.r_max, m)
    weights = {
        m: (-1.0) ** (m // 2) * d / (math.factorial(m) * (2.0 * math.pi) ** m)
        for m, d in derivs.items()
    }
    return TaylorWeights(order=order, phi_derivs=derivs, weights=weights)


def linearized_transform(img, pk: PhaseKernel, lk: LocalizationKernel) -> np.ndarray:
    """Stretch operator with e^{j phi} replaced by its linearization 1 + j phi.

    No Taylor truncation of the phase is involved; the real part of the
    output is the localization-filtered image and the imaginary part holds
    the feature response. Exact up to phi^2/2 per spectral bin.
    """
    arr = as_image(img)
    if pk.phi.shape != arr.shape:
        raise ValueError(f"phase kernel shape {pk.phi.shape} != image shape {arr.shape}")
    if lk.weights.shape != arr.shape:
        raise ValueError(f"localization kernel shape {lk.weights.shape} != image shape {arr.shape}")
    return inverse_field((1.0 + 1j * pk.phi) * lk.weights * forward_spectrum(arr))


def _clamp_phase(values: np.ndarray) -> np.ndarray:
    out = np.clip(values, -np.pi, np.pi)
    out[out == -np.pi] = np.pi
    return out


def closed_form_pst(img, params: PstParams, order: int | None = None) -> np.ndarray:
    """Small-phase closed-form feature map.

    Computes sum over even m of weights[m] * (m-th spectral derivative of
    the image), divided pixelwise by the image, clamped to (-pi, pi]. With a
    localization kernel configured, both the derivatives and the divisor use
    the filtered image. Pixels with magnitude below the brightness floor
    (BRIGHTNESS_FLOOR_SCALE * max|pixels|) are clamped to the floor with
    their sign preserved, and a BrightnessFloorWarning is issued.

    order defaults to params.taylor_order.
    """
    arr = as_image(img)
    m_order = params.taylor_order if order is None else order
    grid = make_frequency_grid(*arr.shape)
    tw = taylor_coefficients(params, grid, m_order)
    lk = build_localization_kernel(grid, params.localization_sigma)
    spec = forward_spectrum(arr)
    if lk.sigma is None:
        base = arr
    else:
        spec = lk.weights * spec
        base = inverse_field(spec).real

    peak = float(np.max(np.abs(base)))
    if peak == 0.0:
        warnings.warn(
            "input image is identically zero; closed-form phase is defined as 0",
            BrightnessFloorWarning,
            stacklevel=2,
        )
        return np.zeros_like(arr)

    two_pi_r = 2.0 * np.pi * grid.r
    numer = np.zeros_like(arr)
    for m, weight in tw.weights.items():
        multiplier = (-1.0) ** (m // 2) * two_pi_r**m  # (j 2 pi r)^m, m even
        numer += weight * inverse_field(multiplier * spec).real

    floor = BRIGHTNESS_FLOOR_SCALE * peak
    small = np.abs(base) < floor
    if small.any():
        warnings.warn(
            f"{int(small.sum())} pixel(s) below the brightness floor {floor:g}; "
            "clamping before division",
            BrightnessFloorWarning,
            stacklevel=2,
        )
        denom = np.where(small, np.where(base < 0.0, -floor, floor), base)
    else:
        denom = base
    return _clamp_phase(numer / denom)
