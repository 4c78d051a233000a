"""Binarization: fixed global, automatic global (Otsu) and adaptive mean.

The adaptive path is O(1) per pixel via a summed-area table; windows are
clipped at the borders and divided by their true area to avoid edge bias.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .raster import BinaryRaster, GrayRaster


@dataclass(frozen=True)
class ThresholdParams:
    """Adaptive threshold parameters: window side and mean offset."""

    block: int = 15
    c: float = 8

    def __post_init__(self):
        if self.block < 3 or self.block % 2 != 1:
            raise ValueError(f"block must be odd and >= 3, got {self.block}")
        if self.c < 0:
            raise ValueError(f"c must be >= 0, got {self.c}")


@dataclass(frozen=True)
class IntegralImage:
    """Summed-area table; s[y, x] is the sum of all samples strictly
    above and left of (x, y), so s has one extra row and column."""

    s: np.ndarray

    def window_sum(self, x0: int, y0: int, x1: int, y1: int) -> int:
        """Sum over the inclusive pixel rectangle [x0..x1] x [y0..y1]."""
        s = self.s
        return int(s[y1 + 1, x1 + 1] - s[y0, x1 + 1] - s[y1 + 1, x0] + s[y0, x0])


def build_integral(img: GrayRaster) -> IntegralImage:
    h, w = img.px.shape
    s = np.zeros((h + 1, w + 1), dtype=np.int64)
    np.cumsum(np.cumsum(img.px, axis=0, dtype=np.int64), axis=1, out=s[1:, 1:])
    return IntegralImage(s)


def global_threshold(img: GrayRaster, t: int) -> BinaryRaster:
    """255 where the sample is strictly greater than t, else 0."""
    out = np.where(img.px > t, 255, 0).astype(np.uint8)
    return BinaryRaster(out)


def otsu_threshold(img: GrayRaster) -> int:
    """Threshold maximizing between-class variance of the 256-bin histogram.

    Classes are the samples <= t and > t. Thresholds leaving one class
    empty score zero; ties are broken toward the smallest t.
    """
    hist = np.bincount(img.px.ravel(), minlength=256).astype(np.float64)
    total = hist.sum()
    levels = np.arange(256, dtype=np.float64)
    w0 = np.cumsum(hist)
    sum0 = np.cumsum(hist * levels)
    w1 = total - w0
    sum_all = sum0[-1]
    with np.errstate(divide="ignore", invalid="ignore"):
        mu0 = sum0 / w0
        mu1 = (sum_all - sum0) / w1
        between = w0 * w1 * (mu0 - mu1) ** 2
    between[~np.isfinite(between)] = 0.0
    return int(np.argmax(between))


def adaptive_mean_threshold(img: GrayRaster, p: ThresholdParams = ThresholdParams()) -> BinaryRaster:
    """255 where the sample exceeds the clipped-window mean minus p.c."""
    h, w = img.px.shape
    r = p.block // 2
    integral = build_integral(img).s

    xs = np.arange(w)
    ys = np.arange(h)
    x0 = np.clip(xs - r, 0, w - 1)
    x1 = np.clip(xs + r, 0, w - 1)
    y0 = np.clip(ys - r, 0, h - 1)
    y1 = np.clip(ys + r, 0, h - 1)

    # window sum at (y, x) from the four SAT corners, vectorized over the grid
    sums = (integral[np.ix_(y1 + 1, x1 + 1)] - integral[np.ix_(y0, x1 + 1)]
            - integral[np.ix_(y1 + 1, x0)] + integral[np.ix_(y0, x0)])
    areas = np.outer(y1 - y0 + 1, x1 - x0 + 1)
    means = sums / areas
    out = np.where(img.px > means - p.c, 255, 0).astype(np.uint8)
    return BinaryRaster(out)
