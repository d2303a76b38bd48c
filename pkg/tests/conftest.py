"""Shared test oracles, independent of the library's FFT pipeline.

The direct transforms below evaluate the DFT sums as explicit matrix
products against hand-built exponential matrices. They are O(N^2) per axis
and exist purely to cross-check the fast path.
"""

import numpy as np


def dft2_direct(values: np.ndarray) -> np.ndarray:
    """Unnormalized forward 2-D DFT by direct summation."""
    arr = np.asarray(values, dtype=np.complex128)
    rows, cols = arr.shape
    jr = np.arange(rows)
    jc = np.arange(cols)
    row_mat = np.exp(-2j * np.pi * np.outer(jr, jr) / rows)
    col_mat = np.exp(-2j * np.pi * np.outer(jc, jc) / cols)
    return row_mat @ arr @ col_mat.T


def idft2_direct(values: np.ndarray) -> np.ndarray:
    """Inverse 2-D DFT by direct summation, 1/(rows*cols) normalized."""
    arr = np.asarray(values, dtype=np.complex128)
    rows, cols = arr.shape
    jr = np.arange(rows)
    jc = np.arange(cols)
    row_mat = np.exp(2j * np.pi * np.outer(jr, jr) / rows)
    col_mat = np.exp(2j * np.pi * np.outer(jc, jc) / cols)
    return row_mat @ arr @ col_mat.T / (rows * cols)


def stretch_direct(img: np.ndarray, kernel: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Spectral filtering pipeline evaluated entirely through the direct DFT."""
    return idft2_direct(kernel * weights * dft2_direct(img))


def rel_linf(actual: np.ndarray, reference: np.ndarray) -> float:
    """Relative L-infinity error of `actual` against `reference`."""
    scale = float(np.max(np.abs(reference)))
    if scale == 0.0:
        return float(np.max(np.abs(actual)))
    return float(np.max(np.abs(np.asarray(actual) - np.asarray(reference))) / scale)
