"""Image containers and pixel-wise primitives.

Images are 8-bit, row-major, origin at the top-left corner, x growing
rightward and y downward. Color data is interleaved R,G,B.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def _freeze(px, expect_ndim: int) -> np.ndarray:
    arr = np.array(px, dtype=np.uint8, copy=True)
    if arr.ndim != expect_ndim:
        raise ValueError(f"expected {expect_ndim}-d pixel array, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"image must be at least 1x1, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Raster:
    """Color image, shape (height, width, 3), samples in [0, 255]."""

    px: np.ndarray

    def __post_init__(self):
        arr = _freeze(self.px, 3)
        if arr.shape[2] != 3:
            raise ValueError(f"color image needs 3 channels, got {arr.shape[2]}")
        object.__setattr__(self, "px", arr)

    @property
    def width(self) -> int:
        return self.px.shape[1]

    @property
    def height(self) -> int:
        return self.px.shape[0]


@dataclass(frozen=True)
class GrayRaster:
    """Single-channel image, shape (height, width)."""

    px: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "px", _freeze(self.px, 2))

    @property
    def width(self) -> int:
        return self.px.shape[1]

    @property
    def height(self) -> int:
        return self.px.shape[0]


@dataclass(frozen=True)
class BinaryRaster(GrayRaster):
    """Grayscale image restricted to the two values 0 and 255."""

    def __post_init__(self):
        super().__post_init__()
        bad = (self.px != 0) & (self.px != 255)
        if bad.any():
            raise ValueError("binary image may only contain 0 and 255")


AnyRaster = Raster | GrayRaster


def round_half_away(arr: np.ndarray) -> np.ndarray:
    """Round to nearest integer, halves away from zero (np.round rounds
    halves to even, which would bias kernel arithmetic)."""
    return np.sign(arr) * np.floor(np.abs(arr) + 0.5)


def clamp_u8(arr: np.ndarray) -> np.ndarray:
    return np.clip(round_half_away(arr), 0, 255).astype(np.uint8)


def to_gray(img: Raster) -> GrayRaster:
    """Luma conversion with the broadcast weights 0.299 R + 0.587 G + 0.114 B."""
    rgb = img.px.astype(np.float64)
    luma = 0.299 * rgb[:, :, 0] + 0.587 * rgb[:, :, 1] + 0.114 * rgb[:, :, 2]
    return GrayRaster(clamp_u8(luma))


def brighten(img: Raster, amount: int = 50) -> Raster:
    """Saturating add: each sample becomes min(sample + amount, 255)."""
    if not 0 <= amount <= 255:
        raise ValueError(f"brighten amount must be in [0, 255], got {amount}")
    out = np.minimum(img.px.astype(np.int16) + amount, 255).astype(np.uint8)
    return Raster(out)


def bitwise_not(img: GrayRaster) -> GrayRaster:
    """Per-sample complement, 255 - v. Binary images stay binary."""
    out = np.subtract(255, img.px, dtype=np.uint8)
    return type(img)(out)


def bitwise_and(a: GrayRaster, b: GrayRaster) -> GrayRaster:
    """Per-sample bitwise AND of two equally sized images."""
    if a.px.shape != b.px.shape:
        raise ValueError(f"dimension mismatch: {a.px.shape} vs {b.px.shape}")
    out = np.bitwise_and(a.px, b.px)
    if isinstance(a, BinaryRaster) and isinstance(b, BinaryRaster):
        return BinaryRaster(out)
    return GrayRaster(out)


def rotate_cw(img: AnyRaster) -> AnyRaster:
    """Rotate 90 degrees clockwise: out(x, y) = in(y, H_in - 1 - x)."""
    return type(img)(np.rot90(img.px, k=-1))


def rotate_ccw(img: AnyRaster) -> AnyRaster:
    """Rotate 90 degrees counter-clockwise: out(x, y) = in(W_in - 1 - y, x)."""
    return type(img)(np.rot90(img.px, k=1))
