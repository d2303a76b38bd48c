"""Raster and trace codecs for the batch front end.

Inputs: 8/16-bit grayscale PNG and PGM (color inputs collapse to BT.601
luma), plus headerless CSV traces. Outputs: phase maps as portable float
maps or 32-bit float TIFF carrying radians unscaled, edge maps as 0/255
PNG, and traces as (index, value) CSV. All writers are deterministic, with
no timestamps or environment-dependent metadata.
"""

from __future__ import annotations

import numpy as np
from PIL import Image as PILImage

from .core import as_image

__all__ = [
    "LUMA_WEIGHTS",
    "RasterFormatError",
    "decode_image",
    "decode_trace",
    "read_edge_png",
    "read_pfm",
    "read_phase_tiff",
    "write_edge_png",
    "write_pfm",
    "write_phase_tiff",
    "write_trace_csv",
]

# ITU-R BT.601 luma weights for collapsing color inputs to grayscale.
LUMA_WEIGHTS = (0.299, 0.587, 0.114)

_GRAY_MODES = ("L", "I", "I;16", "I;16B", "I;16L", "F")
_COLOR_MODES = ("RGB", "RGBA", "P", "PA", "LA")


class RasterFormatError(OSError):
    """The file is not a raster format this tool accepts."""


def decode_image(path) -> np.ndarray:
    """Read a grayscale PNG/PGM raster as float64 pixels, without rescaling.

    Color inputs are converted to luma with the BT.601 weights. Raises
    RasterFormatError for formats other than PNG/PGM and OSError (from the
    decoder) for corrupt files.
    """
    with PILImage.open(path) as im:
        if im.format not in ("PNG", "PPM"):
            raise RasterFormatError(f"unsupported raster format {im.format!r}: {path}")
        if im.mode in _GRAY_MODES:
            arr = np.asarray(im, dtype=np.float64)
        elif im.mode in _COLOR_MODES:
            rgb = np.asarray(im.convert("RGB"), dtype=np.float64)
            arr = rgb @ np.asarray(LUMA_WEIGHTS)
        else:
            raise RasterFormatError(f"unsupported pixel mode {im.mode!r}: {path}")
    return as_image(arr)


def decode_trace(path) -> np.ndarray:
    """Read a 1-D trace from CSV (last column if several), as float64."""
    try:
        data = np.loadtxt(path, delimiter=",", ndmin=2, dtype=np.float64)
    except ValueError as exc:
        raise RasterFormatError(f"cannot parse CSV trace {path}: {exc}") from None
    if data.size == 0:
        raise RasterFormatError(f"empty CSV trace: {path}")
    return data[:, -1]


def write_pfm(path, values) -> None:
    """Write a 2-D float array as a grayscale little-endian PFM."""
    arr = np.asarray(values, dtype=np.float32)
    if arr.ndim != 2:
        raise ValueError(f"PFM output requires a 2-D array, got {arr.ndim}-D")
    with open(path, "wb") as fh:
        fh.write(b"Pf\n")
        fh.write(f"{arr.shape[1]} {arr.shape[0]}\n".encode("ascii"))
        fh.write(b"-1.0\n")  # negative scale marks little-endian
        fh.write(np.flipud(arr).astype("<f4").tobytes())  # PFM rows run bottom-up


def read_pfm(path) -> np.ndarray:
    with open(path, "rb") as fh:
        if fh.readline().strip() != b"Pf":
            raise RasterFormatError(f"not a grayscale PFM file: {path}")
        try:
            width, height = map(int, fh.readline().split())
            scale = float(fh.readline())
        except ValueError:
            raise RasterFormatError(f"malformed PFM header: {path}") from None
        dtype = "<f4" if scale < 0 else ">f4"
        data = np.frombuffer(fh.read(4 * width * height), dtype=dtype)
        if data.size != width * height:
            raise RasterFormatError(f"truncated PFM payload: {path}")
    return np.flipud(data.reshape(height, width)).astype(np.float64)


def write_phase_tiff(path, values) -> None:
    """Write a 2-D float array as a 32-bit float grayscale TIFF."""
    arr = np.asarray(values, dtype=np.float32)
    if arr.ndim != 2:
        raise ValueError(f"TIFF output requires a 2-D array, got {arr.ndim}-D")
    PILImage.fromarray(arr, mode="F").save(path, format="TIFF")


def read_phase_tiff(path) -> np.ndarray:
    with PILImage.open(path) as im:
        return np.asarray(im, dtype=np.float64)


def write_edge_png(path, bits) -> None:
    """Write a boolean map as an 8-bit PNG holding 0/255."""
    arr = np.asarray(bits, dtype=bool)
    if arr.ndim != 2:
        raise ValueError(f"edge map output requires a 2-D array, got {arr.ndim}-D")
    PILImage.fromarray(np.where(arr, 255, 0).astype(np.uint8), mode="L").save(path, format="PNG")


def read_edge_png(path) -> np.ndarray:
    with PILImage.open(path) as im:
        return np.asarray(im) > 127


def write_trace_csv(path, values, index=None) -> None:
    """Write a trace as two-column CSV (index, value), full float precision."""
    arr = np.asarray(values, dtype=np.float64).reshape(-1)
    idx = range(arr.size) if index is None else index
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        for i, value in zip(idx, arr):
            fh.write(f"{i},{value!r}\n")
