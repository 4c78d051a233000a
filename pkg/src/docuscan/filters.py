"""Convolution engine and the two kernels the scan pipeline uses.

Convolution is evaluated directly (no FFT): accumulate k(i,j) * in(...)
in float64, round half-away-from-zero, clamp to [0, 255] last. Borders
are handled by edge replication so constant regions stay constant.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .raster import AnyRaster, GrayRaster, Raster, clamp_u8


@dataclass(frozen=True)
class Kernel:
    """Square convolution mask with an odd side, anchored at the center."""

    coeffs: np.ndarray

    def __post_init__(self):
        arr = np.array(self.coeffs, dtype=np.float64, copy=True)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"kernel must be square, got shape {arr.shape}")
        if arr.shape[0] % 2 != 1:
            raise ValueError(f"kernel side must be odd, got {arr.shape[0]}")
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    @property
    def size(self) -> int:
        return self.coeffs.shape[0]


SHARPEN_KERNEL = Kernel(np.array([[0, -1, 0], [-1, 5, -1], [0, -1, 0]], dtype=np.float64))


def _convolve_plane(plane: np.ndarray, k: Kernel) -> np.ndarray:
    size = k.size
    c = size // 2
    h, w = plane.shape
    padded = np.pad(plane.astype(np.float64), c, mode="edge")
    acc = np.zeros((h, w), dtype=np.float64)
    for j in range(size):
        for i in range(size):
            coef = k.coeffs[j, i]
            if coef != 0.0:
                acc += coef * padded[j:j + h, i:i + w]
    return clamp_u8(acc)


def convolve(img: GrayRaster, k: Kernel) -> GrayRaster:
    """out(x,y) = clamp(round(sum_ij k(i,j) * in(x+i-c, y+j-c))), replicated edges."""
    return GrayRaster(_convolve_plane(img.px, k))


def gaussian_kernel(size: int, sigma: float) -> Kernel:
    """Sampled Gaussian, normalized so the coefficients sum to 1 exactly."""
    if size < 1 or size % 2 != 1:
        raise ValueError(f"kernel size must be odd and >= 1, got {size}")
    if sigma <= 0:
        raise ValueError(f"sigma must be > 0, got {sigma}")
    half = size // 2
    ax = np.arange(-half, half + 1, dtype=np.float64)
    dx, dy = np.meshgrid(ax, ax)
    g = np.exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma))
    return Kernel(g / g.sum())


def gaussian_blur(img: AnyRaster, size: int = 5, sigma: float = 1.1) -> AnyRaster:
    """Gaussian denoise; color images are filtered per channel."""
    k = gaussian_kernel(size, sigma)
    if isinstance(img, Raster):
        planes = [_convolve_plane(img.px[:, :, ch], k) for ch in range(3)]
        return Raster(np.stack(planes, axis=-1))
    return GrayRaster(_convolve_plane(img.px, k))


def sharpen(img: AnyRaster) -> AnyRaster:
    """Fixed 3x3 sharpening mask (center 5, cross -1); per channel on color."""
    if isinstance(img, Raster):
        planes = [_convolve_plane(img.px[:, :, ch], SHARPEN_KERNEL) for ch in range(3)]
        return Raster(np.stack(planes, axis=-1))
    return GrayRaster(_convolve_plane(img.px, SHARPEN_KERNEL))
