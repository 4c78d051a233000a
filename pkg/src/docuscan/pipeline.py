"""End-to-end scanning: detect the document, rectify it, enhance it and
binarize it, plus the four-click crop entry point.

Scan stages: grayscale + blur + automatic global threshold to get a
white-foreground mask, largest external contour, minimum-area rectangle,
corner ordering, homography to a tight rectangle, then brighten (+50),
Gaussian denoise and sharpen. The black-and-white output combines two
branches, both oriented ink-black-on-white: a global (Otsu) threshold
that is sharpened and re-binarized at 127, and an adaptive local-mean
threshold. Their bitwise AND unions the ink of both.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .contours import find_external_contours, largest_contour
from .errors import NoDocumentError
from .filters import gaussian_blur, sharpen
from .geometry import Quad, compute_homography, min_area_rect, order_corners, \
    output_size_for, rect_quad, warp_perspective
from .raster import AnyRaster, BinaryRaster, GrayRaster, Raster, bitwise_and, \
    brighten, to_gray
from .threshold import ThresholdParams, adaptive_mean_threshold, global_threshold, \
    otsu_threshold

# contours smaller than this fraction of the frame are noise, not documents
MIN_DOC_AREA_FRAC = 0.01

# threshold for re-binarizing the sharpened global branch
REBINARIZE_T = 127


class ScanMode(Enum):
    THRESH = "thresh"
    GRAY = "gray"
    COLOR = "color"


@dataclass(frozen=True)
class PipelineConfig:
    brighten_amount: int = 50
    blur_size: int = 5
    blur_sigma: float = 1.1
    adaptive_block: int = 15
    adaptive_c: float = 8
    prep_blur_size: int = 5
    prep_blur_sigma: float = 1.4

    def __post_init__(self):
        if not 0 <= self.brighten_amount <= 255:
            raise ValueError("brighten_amount must be in [0, 255]")
        for size in (self.blur_size, self.prep_blur_size):
            if size < 1 or size % 2 != 1:
                raise ValueError("blur sizes must be odd and >= 1")
        if self.blur_sigma <= 0 or self.prep_blur_sigma <= 0:
            raise ValueError("blur sigmas must be > 0")
        ThresholdParams(self.adaptive_block, self.adaptive_c)  # validates

    @property
    def adaptive_params(self) -> ThresholdParams:
        return ThresholdParams(self.adaptive_block, self.adaptive_c)


@dataclass(frozen=True)
class ScanResult:
    detected_quad: Quad
    color: Raster
    gray: GrayRaster
    thresh: BinaryRaster


DEFAULT_CONFIG = PipelineConfig()


def detect_document(img: Raster, cfg: PipelineConfig = DEFAULT_CONFIG) -> Quad:
    """Locate the document and return its ordered corner quad.

    The document is assumed brighter than the background, so global
    thresholding leaves it as the white foreground the contour tracer
    expects.
    """
    gray = to_gray(img)
    blurred = gaussian_blur(gray, cfg.prep_blur_size, cfg.prep_blur_sigma)
    mask = global_threshold(blurred, otsu_threshold(blurred))
    found = find_external_contours(mask)
    idx, contour = largest_contour(found)
    if found.areas[idx] < MIN_DOC_AREA_FRAC * img.width * img.height:
        raise NoDocumentError("no document found: largest region below size gate")
    corners = min_area_rect(contour.points)
    return order_corners(corners)


def _binarize(gray: GrayRaster, params: ThresholdParams) -> BinaryRaster:
    """Two-branch black-and-white rendering; both branches must be ink
    black on a white page before the AND so that it unions ink."""
    page_white = global_threshold(gray, otsu_threshold(gray))
    global_branch = global_threshold(sharpen(page_white), REBINARIZE_T)
    adaptive_branch = adaptive_mean_threshold(gray, params)
    return bitwise_and(global_branch, adaptive_branch)


def scan(img: Raster, cfg: PipelineConfig = DEFAULT_CONFIG) -> ScanResult:
    quad = detect_document(img, cfg)
    out_w, out_h = output_size_for(quad)
    h = compute_homography(quad, rect_quad(out_w, out_h))
    warped = warp_perspective(img, h, out_w, out_h)
    bright = brighten(warped, cfg.brighten_amount)
    denoised = gaussian_blur(bright, cfg.blur_size, cfg.blur_sigma)
    color_out = sharpen(denoised)
    gray_out = to_gray(color_out)
    thresh_out = _binarize(gray_out, cfg.adaptive_params)
    return ScanResult(detected_quad=quad, color=color_out, gray=gray_out,
                      thresh=thresh_out)


def render(r: ScanResult, m: ScanMode) -> AnyRaster:
    if m is ScanMode.THRESH:
        return r.thresh
    if m is ScanMode.GRAY:
        return r.gray
    return r.color


def fcpt_crop(img: AnyRaster, clicks) -> AnyRaster:
    """Crop the quad spanned by four clicks (any order) to a tight
    top-down rectangle."""
    pts = np.asarray(clicks, dtype=np.float64)
    if pts.ndim != 2 or pts.shape != (4, 2):
        raise ValueError(f"crop needs exactly 4 points, got shape {pts.shape}")
    in_bounds = ((pts[:, 0] >= 0) & (pts[:, 0] <= img.width - 1)
                 & (pts[:, 1] >= 0) & (pts[:, 1] <= img.height - 1))
    if not in_bounds.all():
        raise ValueError(f"click outside image bounds: {pts[~in_bounds].tolist()}")
    quad = order_corners(pts)
    out_w, out_h = output_size_for(quad)
    h = compute_homography(quad, rect_quad(out_w, out_h))
    return warp_perspective(img, h, out_w, out_h)
