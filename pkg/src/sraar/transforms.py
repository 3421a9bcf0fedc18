"""Unitary centered 2-D DFT and the orthonormal multi-level Haar transform.

Both directions of the DFT carry 1/N scaling, so round trips are exact and
inner products are preserved.  The image origin and the DC frequency both
sit at index N/2, matching :class:`sraar.core.FrequencyGrid`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import require_square_image

__all__ = ["WaveletCoeffs", "dft2", "idft2", "haar_forward", "haar_inverse", "l1_norm"]

_INV_SQRT2 = 1.0 / np.sqrt(2.0)


def dft2(img):
    """Centered unitary 2-D DFT of a square power-of-two image."""
    img = require_square_image(img, "image").astype(np.complex128, copy=False)
    return np.fft.fftshift(np.fft.fft2(np.fft.ifftshift(img), norm="ortho"))


def idft2(ksp):
    """Inverse of :func:`dft2`."""
    ksp = require_square_image(ksp, "k-space").astype(np.complex128, copy=False)
    return np.fft.fftshift(np.fft.ifft2(np.fft.ifftshift(ksp), norm="ortho"))


def max_haar_levels(n):
    return int(np.log2(n))


def _check_levels(n, levels):
    if levels is None:
        return max_haar_levels(n)
    if not isinstance(levels, (int, np.integer)) or not 1 <= levels <= max_haar_levels(n):
        raise ValueError(f"levels must lie in [1, {max_haar_levels(n)}] for size {n}, got {levels!r}")
    return int(levels)


@dataclass(frozen=True)
class WaveletCoeffs:
    """Multi-level 2-D Haar coefficients, stored in-place Mallat layout.

    ``data`` has the same shape as the source image; the approximation of
    the deepest level occupies the top-left block of side N / 2**levels.
    """

    data: np.ndarray
    levels: int

    def __post_init__(self):
        arr = np.array(self.data, dtype=np.complex128, copy=True)
        require_square_image(arr, "coefficients")
        levels = _check_levels(arr.shape[0], self.levels)
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)
        object.__setattr__(self, "levels", levels)


def haar_forward(img, levels=None):
    """Orthonormal 2-D Haar decomposition.

    Each level applies the pairwise (a+b)/sqrt(2), (a-b)/sqrt(2) transform
    along rows then columns of the current approximation block, halving its
    side.  ``levels=None`` applies the full depth log2(N).
    """
    img = require_square_image(img, "image").astype(np.complex128, copy=True)
    n = img.shape[0]
    levels = _check_levels(n, levels)
    size = n
    for _ in range(levels):
        block = img[:size, :size]
        lo = (block[:, 0::2] + block[:, 1::2]) * _INV_SQRT2
        hi = (block[:, 0::2] - block[:, 1::2]) * _INV_SQRT2
        block = np.concatenate((lo, hi), axis=1)
        lo = (block[0::2, :] + block[1::2, :]) * _INV_SQRT2
        hi = (block[0::2, :] - block[1::2, :]) * _INV_SQRT2
        img[:size, :size] = np.concatenate((lo, hi), axis=0)
        size //= 2
    return WaveletCoeffs(img, levels)


def haar_inverse(coeffs):
    """Invert :func:`haar_forward`; round trips are exact to float precision."""
    if not isinstance(coeffs, WaveletCoeffs):
        raise ValueError("haar_inverse expects WaveletCoeffs")
    out = np.array(coeffs.data, dtype=np.complex128, copy=True)
    n = out.shape[0]
    size = n >> (coeffs.levels - 1)
    for _ in range(coeffs.levels):
        block = out[:size, :size]
        half = size // 2
        lo, hi = block[:half, :], block[half:, :]
        step = np.empty_like(block)
        step[0::2, :] = (lo + hi) * _INV_SQRT2
        step[1::2, :] = (lo - hi) * _INV_SQRT2
        lo, hi = step[:, :half], step[:, half:]
        block = np.empty_like(step)
        block[:, 0::2] = (lo + hi) * _INV_SQRT2
        block[:, 1::2] = (lo - hi) * _INV_SQRT2
        out[:size, :size] = block
        size *= 2
    return out


def l1_norm(x):
    """Sum of complex moduli of an array or of WaveletCoeffs."""
    data = x.data if isinstance(x, WaveletCoeffs) else np.asarray(x)
    return float(np.abs(data).sum())
