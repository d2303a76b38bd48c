"""Synthetic test patterns: staircases, steps, ramps, bumps, band-limited noise.

Pattern generation is deterministic for a given spec (including the seed), so
generated inputs can be reproduced bit for bit from a config file. Staircase
patterns carry their ground truth: the recorded contrast-jump positions plus
every other discontinuity of the trace.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import as_image, make_frequency_grid

__all__ = ["PATTERN_KINDS", "Pattern", "PatternSpec", "generate"]

PATTERN_KINDS = ("staircase", "step", "ramp", "gaussian_bump", "bandlimited_noise")


@dataclass(frozen=True)
class PatternSpec:
    """Declarative description of a synthetic pattern.

    kind selects the generator. Field usage per kind:

    - staircase: levels are the plateau brightness values (strictly
      increasing when contrast is a scalar > 0, the varying-brightness
      ladder); each level contributes a plateau of `plateau` samples
      followed by `plateau` samples raised by the contrast. A single level
      with a tuple contrast instead varies the jump size at fixed
      brightness. width > 1 tiles the trace into that many identical
      columns.
    - step: `shape` samples at `offset`, jumping to offset + contrast at the
      midpoint.
    - ramp: `shape` samples running 0..1 inclusive.
    - gaussian_bump: offset + amplitude * exp(-d^2 / (2 sigma^2)) around the
      raster center; shape may be a length or (rows, cols).
    - bandlimited_noise: seeded white noise with all spectral energy at
      radius > cutoff removed, then scaled by amplitude and shifted by
      offset; shape may be a length or (rows, cols).
    """

    kind: str
    shape: int | tuple[int, int] | None = None
    levels: tuple[float, ...] = ()
    contrast: float | tuple[float, ...] = 0.0
    plateau: int = 64
    width: int = 1
    sigma: float = 8.0
    amplitude: float = 1.0
    offset: float = 0.0
    cutoff: float = 0.1
    seed: int = 0


@dataclass(frozen=True)
class Pattern:
    """Generated raster plus ground truth.

    jump_positions are the recorded contrast jumps (index of the first
    sample after each jump, along axis 0); edge_positions additionally
    include every other discontinuity of piecewise-constant patterns, so
    together they account for every nonzero first difference.
    """

    pixels: np.ndarray
    jump_positions: tuple[int, ...] = ()
    edge_positions: tuple[int, ...] = ()


def _shape_2d(shape) -> tuple[int, int]:
    if isinstance(shape, int):
        return (shape, 1)
    if shape is None:
        raise ValueError("this pattern kind requires an explicit shape")
    rows, cols = shape
    if rows < 1 or cols < 1:
        raise ValueError(f"pattern shape must be positive, got {shape}")
    return (int(rows), int(cols))


def _staircase(spec: PatternSpec) -> Pattern:
    levels = tuple(float(b) for b in spec.levels)
    if not levels:
        raise ValueError("staircase requires at least one brightness level")
    if spec.plateau < 1:
        raise ValueError(f"plateau width must be >= 1, got {spec.plateau}")
    if spec.width < 1:
        raise ValueError(f"width must be >= 1, got {spec.width}")

    if isinstance(spec.contrast, tuple):
        # fixed-brightness variant: one base level, varying jump sizes
        if len(levels) != 1:
            raise ValueError("a contrast tuple requires exactly one brightness level")
        if not all(c > 0 for c in spec.contrast) or not spec.contrast:
            raise ValueError("contrast values must be positive")
        plateaus = []
        for c in spec.contrast:
            plateaus.extend([levels[0], levels[0] + float(c)])
    else:
        if not all(b2 > b1 for b1, b2 in zip(levels, levels[1:])):
            raise ValueError("staircase brightness levels must be strictly increasing")
        if not (spec.contrast > 0):
            raise ValueError(f"staircase contrast must be > 0, got {spec.contrast}")
        plateaus = []
        for b in levels:
            plateaus.extend([b, b + float(spec.contrast)])

    trace = np.repeat(np.asarray(plateaus, dtype=np.float64), spec.plateau)
    boundaries = range(spec.plateau, trace.size, spec.plateau)
    jumps = tuple(boundaries[::2])  # every base -> base+contrast transition
    # plateau-to-plateau moves can cancel (e.g. consecutive levels one
    # contrast apart), so take the true discontinuities from the trace
    edges = tuple(int(i) for i in np.flatnonzero(np.diff(trace)) + 1)
    pixels = np.tile(trace[:, np.newaxis], (1, spec.width))
    return Pattern(pixels=pixels, jump_positions=jumps, edge_positions=edges)


def _step(spec: PatternSpec) -> Pattern:
    rows, cols = _shape_2d(spec.shape)
    if rows < 2:
        raise ValueError("step pattern needs at least 2 samples")
    if isinstance(spec.contrast, tuple):
        raise ValueError("step takes a scalar contrast")
    mid = rows // 2
    trace = np.full(rows, float(spec.offset))
    trace[mid:] += float(spec.contrast)
    pixels = np.tile(trace[:, np.newaxis], (1, cols))
    marks = (mid,) if spec.contrast != 0 else ()
    return Pattern(pixels=pixels, jump_positions=marks, edge_positions=marks)


def _ramp(spec: PatternSpec) -> Pattern:
    rows, cols = _shape_2d(spec.shape)
    if rows < 2:
        raise ValueError("ramp needs at least 2 samples")
    trace = np.arange(rows, dtype=np.float64) / (rows - 1)
    return Pattern(pixels=np.tile(trace[:, np.newaxis], (1, cols)))


def _gaussian_bump(spec: PatternSpec) -> Pattern:
    rows, cols = _shape_2d(spec.shape)
    if not (spec.sigma > 0):
        raise ValueError(f"sigma must be positive, got {spec.sigma}")
    y = np.arange(rows, dtype=np.float64)[:, np.newaxis] - (rows - 1) / 2.0
    x = np.arange(cols, dtype=np.float64)[np.newaxis, :] - (cols - 1) / 2.0
    bump = np.exp(-(y**2 + x**2) / (2.0 * spec.sigma**2))
    return Pattern(pixels=spec.offset + spec.amplitude * bump)


def _bandlimited_noise(spec: PatternSpec) -> Pattern:
    rows, cols = _shape_2d(spec.shape)
    if not (spec.cutoff > 0):
        raise ValueError(f"cutoff must be positive, got {spec.cutoff}")
    rng = np.random.default_rng(spec.seed)
    white = rng.standard_normal((rows, cols))
    grid = make_frequency_grid(rows, cols)
    mask = grid.r <= spec.cutoff
    noise = np.fft.ifft2(np.fft.fft2(white) * mask).real
    return Pattern(pixels=spec.offset + spec.amplitude * noise)


_GENERATORS = {
    "staircase": _staircase,
    "step": _step,
    "ramp": _ramp,
    "gaussian_bump": _gaussian_bump,
    "bandlimited_noise": _bandlimited_noise,
}


def generate(spec: PatternSpec) -> Pattern:
    """Generate the pattern described by spec (deterministic, seed included)."""
    try:
        gen = _GENERATORS[spec.kind]
    except KeyError:
        raise ValueError(f"unknown pattern kind {spec.kind!r}; expected one of {PATTERN_KINDS}")
    pattern = gen(spec)
    as_image(pattern.pixels)  # all generated pixels must be finite
    return pattern
