"""docuscan: document scanning toolkit.

Detects a document in a photo, rectifies it to a top-down view,
renders thresholded/gray/color scans, and crops any quad selected by
four clicks in arbitrary order. Ships a CLI and a local HTTP service.
"""

from .codecs import decode_bytes, decode_image, encode_image, encode_png_bytes
from .contours import Contour, ContourSet, contour_area, find_external_contours, \
    largest_contour
from .errors import CornerOrderingError, GeometryError, ImageFormatError, \
    NoDocumentError, ScanError
from .filters import Kernel, convolve, gaussian_blur, gaussian_kernel, sharpen
from .geometry import Homography, Point, Quad, compute_homography, convex_hull, \
    min_area_rect, order_corners, output_size_for, rect_quad, warp_perspective
from .pipeline import PipelineConfig, ScanMode, ScanResult, detect_document, \
    fcpt_crop, render, scan
from .raster import BinaryRaster, GrayRaster, Raster, bitwise_and, bitwise_not, \
    brighten, rotate_ccw, rotate_cw, to_gray
from .threshold import IntegralImage, ThresholdParams, adaptive_mean_threshold, \
    build_integral, global_threshold, otsu_threshold

__version__ = "0.1.0"

__all__ = [
    "BinaryRaster", "Contour", "ContourSet", "CornerOrderingError", "GeometryError",
    "GrayRaster", "Homography", "ImageFormatError", "IntegralImage", "Kernel",
    "NoDocumentError", "PipelineConfig", "Point", "Quad", "Raster", "ScanError",
    "ScanMode", "ScanResult", "ThresholdParams", "adaptive_mean_threshold",
    "bitwise_and", "bitwise_not", "brighten", "build_integral", "compute_homography",
    "contour_area", "convex_hull", "convolve", "decode_bytes", "decode_image",
    "detect_document", "encode_image", "encode_png_bytes", "fcpt_crop",
    "find_external_contours", "gaussian_blur", "gaussian_kernel", "global_threshold",
    "largest_contour", "min_area_rect", "order_corners", "otsu_threshold",
    "output_size_for", "rect_quad", "render", "rotate_ccw", "rotate_cw", "scan",
    "sharpen", "to_gray", "warp_perspective",
]
